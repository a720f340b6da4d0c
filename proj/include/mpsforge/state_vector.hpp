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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mpsforge {

using Complex = std::complex<double>;

/// Dense amplitude vector over n qubits.
///
/// Qubit 0 is the most significant bit of the basis index, so basis state
/// |q0 q1 ... q_{n-1}> sits at index sum_k q_k 2^{n-1-k}. The type does not
/// force unit norm (simulators pass through intermediate states); call
/// require_normalized() at API boundaries that need it.
class StateVector {
 public:
  StateVector() = default;

  /// Takes ownership of `amplitudes`; its size must be 2^n.
  StateVector(int num_qubits, std::vector<Complex> amplitudes);

  /// |0...0> on n qubits.
  static StateVector zero_state(int num_qubits);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<Complex> amplitudes() noexcept { return amplitudes_; }

  Complex operator[](std::size_t i) const { return amplitudes_[i]; }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }

  double norm() const;
  bool is_normalized(double tol = 1e-12) const;

  /// Scales to unit norm. Throws ValidationError on a zero vector.
  void normalize();

  /// Throws ValidationError naming `context` when |norm - 1| > tol.
  void require_normalized(std::string_view context, double tol = 1e-12) const;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  int num_qubits_ = 0;
  std::vector<Complex> amplitudes_{Complex(1.0, 0.0)};
};

/// <a|b>, conjugate-linear in the first argument.
Complex inner_product(const StateVector& a, const StateVector& b);

/// Fidelity |<a|b>|^2 between two states of equal width.
double fidelity(const StateVector& a, const StateVector& b);

/// 1 - fidelity(approx, target).
double reconstruction_error(const StateVector& approx,
                            const StateVector& target);

/// Formats basis index `index` as an n-character bit string, qubit 0 first.
std::string basis_label(std::uint64_t index, int num_qubits);

}  // namespace mpsforge
