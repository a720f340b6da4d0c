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

// Staircase circuits that prepare matrix product states.
//
// A bond-2 left-canonical MPS is prepared exactly by one layer: two-qubit
// gates on (n-2, n-1), (n-3, n-2), ..., (0, 1) followed by a single-qubit cap
// on qubit 0. Each gate's first columns are the site isometry; the rest is a
// completion to a unitary.
//
// Higher bond dimensions are handled by iterated disentangling: truncate the
// residual to bond 2, build the layer C_q, apply C_q^dagger to the full
// residual, and repeat until |<0|residual>|^2 reaches the target. The
// prepared state is C_0 C_1 ... C_{q-1} |0>, so the last generated layer is
// the first one applied.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mpsforge/mps.hpp"
#include "mpsforge/state_vector.hpp"

namespace mpsforge {

/// Unitary on the adjacent pair (qubit, qubit + 1). The 4x4 basis is
/// |q_qubit q_{qubit+1}> with the lower-index qubit as the high bit.
struct TwoQubitGate {
  int qubit = 0;
  Matrix u;
};

struct SingleQubitGate {
  int qubit = 0;
  Matrix u;
};

/// One staircase pass. Application order: `gates` front to back, then `cap`.
struct Layer {
  std::vector<TwoQubitGate> gates;
  SingleQubitGate cap;
};

struct LayeredCircuit {
  int num_qubits = 0;
  std::vector<Layer> layers;  ///< application order onto |0...0>
  double target_fidelity = 1.0;
  double achieved_fidelity = 0.0;
};

struct IterationInfo {
  int iteration = 0;        ///< 1-based count of generated layers
  double fidelity = 0.0;    ///< |<0|residual>|^2 after this layer
  int residual_max_bond = 1;
};

struct SynthesisOptions {
  double target_fidelity = 0.99;
  int max_layers = 200;
  /// Recompression of the residual after each inverse layer. Setting
  /// `max_bond` restricts long-range entanglement (approximate).
  TruncationOptions residual;
  std::function<void(const IterationInfo&)> on_iteration;
};

struct SynthesisReport {
  int iterations = 0;                  ///< layers generated
  std::vector<double> fidelity_trace;  ///< one entry per iteration
  std::vector<int> residual_max_bond;  ///< one entry per iteration
  bool reached = false;                ///< target fidelity met
  int returned_layers = 0;             ///< layers in the returned circuit
  long long two_qubit_gates = 0;       ///< in the returned circuit
  long long single_qubit_gates = 0;
  long long total_gates() const { return two_qubit_gates + single_qubit_gates; }
};

struct SynthesisResult {
  LayeredCircuit circuit;
  SynthesisReport report;
};

/// Extends a d x m matrix with orthonormal columns to a d x d unitary. The
/// first m columns are returned unchanged; the rest are the trailing left
/// singular vectors of a full SVD (phase-normalized). Rejects inputs whose
/// columns deviate from orthonormality by more than 1e-8; `site` (when >= 0)
/// is named in the message.
Matrix unitary_completion(const Matrix& isometry, int site = -1);

/// Exact preparation layer for a left-canonical MPS with every bond <= 2.
Layer layer_from_mps(const MatrixProductState& mps);

/// MPS of layer^dagger |mps>. Result is left-canonical; bonds are recompressed
/// with `options` (default cutoff 1e-14, no cap).
MatrixProductState apply_inverse_layer(const MatrixProductState& mps,
                                       const Layer& layer,
                                       const TruncationOptions& options = {});

/// Iterative synthesis. If the target is not reached within max_layers the
/// highest-fidelity prefix is returned with report.reached == false.
SynthesisResult synthesize(const MatrixProductState& target,
                           const SynthesisOptions& options);
SynthesisResult synthesize(const StateVector& target,
                           const SynthesisOptions& options);

/// Circuit consisting of the first `generated_layers` layers produced by a
/// synthesis run, in application order. `full` must be the circuit of a run
/// with at least that many layers.
LayeredCircuit circuit_prefix(const LayeredCircuit& full, int generated_layers);

/// l2 distance between unit vectors whose reconstruction error is delta^2,
/// with the overlap phase chosen real: sqrt(2 (1 - sqrt(1 - delta^2))).
double epsilon_from_delta(double delta);

/// Asymptotic gate-count estimates (no constants): n * chi^2 and
/// n * log2(1/epsilon)^2.
double predicted_gate_count(int num_qubits, int max_bond);
double predicted_gate_count_for_epsilon(int num_qubits, double epsilon);

}  // namespace mpsforge
