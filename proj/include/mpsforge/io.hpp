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

// Serialization. Complex numbers are [re, im] pairs; matrices are row-major
// lists of rows.
//
// Binary statevector: 8 bytes "MPSFSV1\0", little-endian uint64 n, then 2^n
// little-endian float64 (re, im) pairs.

#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "mpsforge/mps.hpp"
#include "mpsforge/simulator.hpp"
#include "mpsforge/state_vector.hpp"
#include "mpsforge/synthesis.hpp"
#include "mpsforge/transpiler.hpp"

namespace mpsforge::io {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& what);

/// {n, amplitudes: [[re, im], ...]}
Json to_json(const StateVector& state);
StateVector statevector_from_json(const Json& j);

/// {n, bonds, canonical, sites: [{shape: [l, 2, r], data: [[re, im], ...]}]}
/// with data row-major over (a, s, b).
Json to_json(const MatrixProductState& mps);
MatrixProductState mps_from_json(const Json& j);

/// {n, f, achieved_fidelity, layers: [{gates: [{q: [i, i+1], u}], cap: {q, u}}]}
Json to_json(const LayeredCircuit& circuit);
LayeredCircuit layered_circuit_from_json(const Json& j);

/// {n, global_phase, gates: [{op: "ry"|"rz", q, theta} | {op: "cx", q: [c, t]}]}
Json to_json(const NativeCircuit& circuit);
NativeCircuit native_circuit_from_json(const Json& j);

Json to_json(const GateStats& stats);
Json to_json(const SynthesisReport& report);

/// {n, shots, counts: {bitstring: count}}
Json to_json(const ShotCounts& counts);
ShotCounts shot_counts_from_json(const Json& j);

std::string encode_statevector_binary(const StateVector& state);
StateVector decode_statevector_binary(const std::string& bytes);

/// Throws ValidationError when the file cannot be read.
std::string read_file(const std::string& path);
Json read_json_file(const std::string& path);

/// Writes through a temporary sibling and renames it into place. Throws
/// ResourceError on failure.
void write_file_atomic(const std::string& path, const std::string& content);

/// Reads a binary (detected by its header) or JSON statevector file.
StateVector read_statevector_file(const std::string& path);

}  // namespace mpsforge::io
