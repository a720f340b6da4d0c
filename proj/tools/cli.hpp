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

// Command-line pipeline: encode -> synthesize -> transpile -> simulate, plus
// CSV sweeps (report).

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mpsforge::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInvalidInput = 3,
  kResourceLimit = 4,
  kUnreached = 5,
};

/// Parsed flags. Echoed into every JSON report.
struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string target;  ///< reference statevector for simulate
  int k = 1;
  int extra_position_qubits = 0;
  double fidelity = 0.99;
  std::optional<int> chi_cap;
  long long shots = 0;
  unsigned long long seed = 1;
  std::string out = ".";
  std::vector<std::string> formats;
  int max_layers = 200;
  std::optional<long long> locality_window;
  int jobs = 1;
  bool simplify = true;
  std::vector<std::string> sweeps;
  std::vector<double> fidelities;
};

/// CSV header shared by every report file.
extern const char* const kCsvHeader;

/// Window used by the locality heuristic when none is given.
inline constexpr long long kDefaultLocalityWindow = 70000;
/// Qubit count above which the locality heuristic switches on by default.
inline constexpr int kLocalityThreshold = 24;

/// Bond cap implied by a locality window l: 2^floor(n_l / 2) with
/// n_l = ceil(log2 l) + 2.
int locality_chi_cap(long long window);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

/// Entry point. Returns the process exit code; diagnostics go to `err`,
/// short summaries to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mpsforge::cli
