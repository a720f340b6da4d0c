// Copyright 2026 The mpsforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpsforge/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mpsforge/config.hpp"
#include "mpsforge/error.hpp"

namespace mpsforge {

void apply_two_qubit_inplace(StateVector& state, const Matrix& u, int i) {
  const int n = state.num_qubits();
  if (i < 0 || i + 1 >= n) {
    throw ValidationError("two-qubit gate index " + std::to_string(i) +
                          " out of range for " + std::to_string(n) + " qubits");
  }
  if (u.rows() != 4 || u.cols() != 4) {
    throw ValidationError("two-qubit gate must be 4x4");
  }
  const std::size_t lo = std::size_t{1} << (n - 2 - i);
  const std::size_t hi = lo << 1;
  Complex m[4][4];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m[r][c] = u(r, c);
  }
  std::span<Complex> a = state.amplitudes();
  for (std::size_t base = 0; base < a.size(); base += 2 * hi) {
    for (std::size_t j = base; j < base + lo; ++j) {
      const std::size_t idx[4] = {j, j + lo, j + hi, j + hi + lo};
      const Complex x[4] = {a[idx[0]], a[idx[1]], a[idx[2]], a[idx[3]]};
      for (int r = 0; r < 4; ++r) {
        a[idx[r]] = m[r][0] * x[0] + m[r][1] * x[1] + m[r][2] * x[2] +
                    m[r][3] * x[3];
      }
    }
  }
}

StateVector apply_two_qubit(StateVector state, const Matrix& u, int i) {
  apply_two_qubit_inplace(state, u, i);
  return state;
}

void apply_one_qubit_inplace(StateVector& state, const Matrix& u, int q) {
  const int n = state.num_qubits();
  if (q < 0 || q >= n) {
    throw ValidationError("qubit index " + std::to_string(q) +
                          " out of range for " + std::to_string(n) + " qubits");
  }
  if (u.rows() != 2 || u.cols() != 2) {
    throw ValidationError("single-qubit gate must be 2x2");
  }
  const std::size_t stride = std::size_t{1} << (n - 1 - q);
  std::span<Complex> a = state.amplitudes();
  const Complex m00 = u(0, 0), m01 = u(0, 1), m10 = u(1, 0), m11 = u(1, 1);
  for (std::size_t base = 0; base < a.size(); base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; ++j) {
      const Complex x = a[j];
      const Complex y = a[j + stride];
      a[j] = m00 * x + m01 * y;
      a[j + stride] = m10 * x + m11 * y;
    }
  }
}

StateVector run(const LayeredCircuit& circuit) {
  check_simulable(circuit.num_qubits, "layered circuit");
  StateVector state = StateVector::zero_state(circuit.num_qubits);
  for (const Layer& layer : circuit.layers) {
    for (const TwoQubitGate& g : layer.gates) {
      apply_two_qubit_inplace(state, g.u, g.qubit);
    }
    apply_one_qubit_inplace(state, layer.cap.u, layer.cap.qubit);
  }
  return state;
}

StateVector run(const NativeCircuit& circuit) {
  check_simulable(circuit.num_qubits, "native circuit");
  StateVector state = StateVector::zero_state(circuit.num_qubits);
  std::span<Complex> a = state.amplitudes();
  for (const NativeGate& g : circuit.gates) {
    apply_native_gate(a, circuit.num_qubits, g);
  }
  if (circuit.global_phase != 0.0) {
    const Complex ph = std::polar(1.0, circuit.global_phase);
    for (Complex& x : a) x *= ph;
  }
  return state;
}

ShotCounts sample_shots(const StateVector& state, long long shots,
                        std::uint64_t seed) {
  if (shots < 1) throw UsageError("shot count must be at least 1");
  const auto amps = state.amplitudes();
  std::vector<double> cdf(amps.size());
  double total = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    total += std::norm(amps[i]);
    cdf[i] = total;
  }
  if (!(total > 0.0)) throw ValidationError("cannot sample a zero vector");

  std::mt19937_64 rng(seed);
  std::vector<long long> hits(amps.size(), 0);
  for (long long s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++hits[static_cast<std::size_t>(it - cdf.begin())];
  }
  ShotCounts out;
  out.num_qubits = state.num_qubits();
  out.shots = shots;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i] > 0) out.counts.emplace(basis_label(i, out.num_qubits), hits[i]);
  }
  return out;
}

StateVector quasi_statevector(const ShotCounts& counts) {
  if (counts.counts.empty()) throw ValidationError("shot counts are empty");
  check_simulable(counts.num_qubits, "quasi-statevector");
  long long total = 0;
  for (const auto& [key, c] : counts.counts) {
    if (c < 0) throw ValidationError("negative count for outcome " + key);
    total += c;
  }
  if (total < 1) throw ValidationError("shot counts sum to zero");
  if (counts.shots != 0 && counts.shots != total) {
    throw ValidationError("counts sum to " + std::to_string(total) +
                          " but shots = " + std::to_string(counts.shots));
  }
  const int n = counts.num_qubits;
  std::vector<Complex> amps(std::size_t{1} << n);
  for (const auto& [key, c] : counts.counts) {
    if (static_cast<int>(key.size()) != n ||
        key.find_first_not_of("01") != std::string::npos) {
      throw ValidationError("invalid outcome '" + key + "' for " +
                            std::to_string(n) + " qubits");
    }
    const std::size_t idx = n == 0 ? 0 : std::stoull(key, nullptr, 2);
    amps[idx] = std::sqrt(static_cast<double>(c) / static_cast<double>(total));
  }
  return StateVector(n, std::move(amps));
}

double hardware_fidelity(const StateVector& target, const StateVector& quasi) {
  if (target.num_qubits() != quasi.num_qubits()) {
    throw ValidationError("hardware_fidelity: qubit counts differ (" +
                          std::to_string(target.num_qubits()) + " vs " +
                          std::to_string(quasi.num_qubits()) + ")");
  }
  return fidelity(target, quasi);
}

}  // namespace mpsforge
