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

#include "mpsforge/config.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <string>

#include "mpsforge/error.hpp"

namespace mpsforge {

int max_qubits() {
  const char* env = std::getenv("MPSFORGE_MAX_QUBITS");
  if (env == nullptr) return kDefaultMaxQubits;
  int value = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end || value < 1 || value > 40) {
    return kDefaultMaxQubits;
  }
  return value;
}

void check_simulable(int n, std::string_view what) {
  const int cap = max_qubits();
  if (n > cap) {
    throw ResourceError(std::string(what) + ": " + std::to_string(n) +
                        " qubits exceeds the simulable maximum of " +
                        std::to_string(cap) +
                        " (set MPSFORGE_MAX_QUBITS to raise it)");
  }
}

}  // namespace mpsforge
