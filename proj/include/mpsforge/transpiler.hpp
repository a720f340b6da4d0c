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

// Lowering of layered circuits to the native set {Ry, Rz, CX}.
//
//   Rz(t) = diag(exp(-i t/2), exp(i t/2))
//   Ry(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
//
// Two-qubit gates go through the canonical (KAK) form
//
//   U = exp(i phi) (K1a x K1b) exp(i (a XX + b YY + c ZZ)) (K2a x K2b)
//
// and are emitted with 0, 1, 2 or 3 CX depending on the class of (a, b, c).

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpsforge/linalg.hpp"
#include "mpsforge/synthesis.hpp"

namespace mpsforge {

enum class GateKind { kRy, kRz, kCx };

/// Rotations use `qubit` and `angle`. CX uses `qubit` as control and
/// `target` as target.
struct NativeGate {
  GateKind kind = GateKind::kRz;
  int qubit = 0;
  int target = -1;
  double angle = 0.0;

  static NativeGate ry(int q, double theta) { return {GateKind::kRy, q, -1, theta}; }
  static NativeGate rz(int q, double theta) { return {GateKind::kRz, q, -1, theta}; }
  static NativeGate cx(int control, int target) {
    return {GateKind::kCx, control, target, 0.0};
  }

  bool operator==(const NativeGate&) const = default;
};

struct GateStats {
  long long cx_count = 0;
  long long ry_count = 0;
  long long rz_count = 0;
  long long rotation_count = 0;
  long long total = 0;
  long long depth = 0;
};

struct NativeCircuit {
  int num_qubits = 0;
  std::vector<NativeGate> gates;  ///< application order
  double global_phase = 0.0;      ///< prepared state is exp(i phase) C|0>
};

Matrix rz_matrix(double theta);
Matrix ry_matrix(double theta);
/// 4x4 CX in the |q_a q_b> basis (q_a the high bit). `control_first`
/// selects control on the high bit.
Matrix cx_matrix(bool control_first = true);

struct ZyzAngles {
  double theta0 = 0.0;
  double theta1 = 0.0;  ///< in [0, pi]
  double theta2 = 0.0;
  double phase = 0.0;
};

/// u = exp(i phase) Rz(theta0) Ry(theta1) Rz(theta2). At theta1 in {0, pi}
/// theta2 is 0. theta0 and theta2 lie in (-pi, pi].
ZyzAngles zyz(const Matrix& u);

struct KakDecomposition {
  Matrix k1a, k1b, k2a, k2b;  ///< 2x2 unitaries
  double a = 0.0, b = 0.0, c = 0.0;  ///< each in (-pi/4, pi/4]
  double phase = 0.0;
};

/// Canonical decomposition of a 4x4 unitary. Throws ValidationError when u
/// is not unitary within 1e-10.
KakDecomposition kak_decompose(const Matrix& u);

/// Native sequence on qubits (q, q + 1) with u = exp(i p) * (product of the
/// sequence); p is added to *phase when non-null. At most 3 CX.
std::vector<NativeGate> decompose_two_qubit(const Matrix& u, int q = 0,
                                            double* phase = nullptr,
                                            bool simplify = true);

/// Rz Ry Rz sequence (zero angles dropped when `simplify`).
std::vector<NativeGate> decompose_one_qubit(const Matrix& u, int q = 0,
                                            double* phase = nullptr,
                                            bool simplify = true);

/// Merges same-axis rotations on a wire, folds angles into (-pi, pi] (a 2 pi
/// turn contributes pi to `phase`), drops angles within 1e-12 of zero and
/// cancels adjacent identical CX pairs.
void peephole(std::vector<NativeGate>& gates, double& phase);

struct TranspileOptions {
  bool simplify = true;  ///< per-gate peephole pass
};

NativeCircuit transpile(const LayeredCircuit& circuit,
                        const TranspileOptions& options = {});

GateStats gate_stats(const NativeCircuit& circuit);

/// Applies one native gate to an n-qubit amplitude array (qubit 0 is the
/// most significant bit).
void apply_native_gate(std::span<Complex> amplitudes, int num_qubits,
                       const NativeGate& gate);

/// Product of the gates as a 2^n x 2^n matrix (small n only).
Matrix circuit_unitary(const std::vector<NativeGate>& gates, int num_qubits);

std::string emit_qasm(const NativeCircuit& circuit);

/// Reads the subset written by emit_qasm: qreg, creg, ry, rz, cx, barrier
/// and measure (the last three ignored). Angles may use pi, *, / and unary
/// minus.
NativeCircuit parse_qasm(std::string_view text);

}  // namespace mpsforge
