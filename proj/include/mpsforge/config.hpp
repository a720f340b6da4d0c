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

#include <string_view>

namespace mpsforge {

inline constexpr std::string_view kVersion = "0.3.0";

/// Default cap on dense statevector width, in qubits.
inline constexpr int kDefaultMaxQubits = 26;

/// Largest qubit count for which dense statevectors may be materialized.
/// Reads MPSFORGE_MAX_QUBITS on every call; falls back to kDefaultMaxQubits
/// when unset or unparsable.
int max_qubits();

/// Throws ResourceError when `n` exceeds max_qubits().
void check_simulable(int n, std::string_view what);

}  // namespace mpsforge
