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

#include "mpsforge/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpsforge/error.hpp"

namespace mpsforge {

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  if (num_qubits < 0 || num_qubits > 62) {
    throw ValidationError("statevector qubit count out of range: " +
                          std::to_string(num_qubits));
  }
  if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
    throw ValidationError("statevector over " + std::to_string(num_qubits) +
                          " qubits needs " +
                          std::to_string(std::size_t{1} << num_qubits) +
                          " amplitudes, got " +
                          std::to_string(amplitudes_.size()));
  }
}

StateVector StateVector::zero_state(int num_qubits) {
  std::vector<Complex> amps(std::size_t{1} << num_qubits, Complex(0.0, 0.0));
  amps[0] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const Complex& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

void StateVector::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) throw ValidationError("cannot normalize a zero vector");
  for (Complex& a : amplitudes_) a /= nrm;
}

void StateVector::require_normalized(std::string_view context,
                                     double tol) const {
  const double nrm = norm();
  if (std::abs(nrm - 1.0) > tol) {
    throw ValidationError(std::string(context) +
                          ": state is not normalized (norm = " +
                          std::to_string(nrm) + ")");
  }
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw ValidationError("dimension mismatch: " +
                          std::to_string(a.num_qubits()) + " vs " +
                          std::to_string(b.num_qubits()) + " qubits");
  }
  Complex sum(0.0, 0.0);
  const auto lhs = a.amplitudes();
  const auto rhs = b.amplitudes();
  for (std::size_t i = 0; i < lhs.size(); ++i) sum += std::conj(lhs[i]) * rhs[i];
  return sum;
}

double fidelity(const StateVector& a, const StateVector& b) {
  // Clamped: rounding can push |<a|b>|^2 a few ulps past 1.
  return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

double reconstruction_error(const StateVector& approx,
                            const StateVector& target) {
  return 1.0 - fidelity(approx, target);
}

std::string basis_label(std::uint64_t index, int num_qubits) {
  std::string label(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q) {
    if ((index >> (num_qubits - 1 - q)) & 1U) label[q] = '1';
  }
  return label;
}

}  // namespace mpsforge
