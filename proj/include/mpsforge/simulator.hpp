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

// Ideal statevector simulation and shot sampling.
//
// Sampling draws 53-bit uniforms from std::mt19937_64 and inverts the
// cumulative distribution by binary search, so counts are reproducible for a
// given seed on any platform.

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "mpsforge/linalg.hpp"
#include "mpsforge/state_vector.hpp"
#include "mpsforge/synthesis.hpp"
#include "mpsforge/transpiler.hpp"

namespace mpsforge {

struct ShotCounts {
  int num_qubits = 0;
  long long shots = 0;
  std::map<std::string, long long> counts;  ///< outcome (qubit 0 first) -> count

  bool operator==(const ShotCounts&) const = default;
};

/// Applies a 4x4 unitary to qubits (i, i + 1); qubit i is the high bit of
/// the gate's basis.
StateVector apply_two_qubit(StateVector state, const Matrix& u, int i);
void apply_two_qubit_inplace(StateVector& state, const Matrix& u, int i);

void apply_one_qubit_inplace(StateVector& state, const Matrix& u, int q);

/// Evolves |0...0>. Throws ResourceError beyond max_qubits().
StateVector run(const LayeredCircuit& circuit);
/// Includes the circuit's global phase.
StateVector run(const NativeCircuit& circuit);

ShotCounts sample_shots(const StateVector& state, long long shots,
                        std::uint64_t seed);

/// sqrt(count / S) on each observed outcome, zero phase.
StateVector quasi_statevector(const ShotCounts& counts);

/// |<target|quasi>|^2.
double hardware_fidelity(const StateVector& target, const StateVector& quasi);

}  // namespace mpsforge
