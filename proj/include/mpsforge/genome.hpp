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

// Genome reads and their position (x) base register encoding.
//
// A read b_0 ... b_{L-1} over {A,T,G,C} is split into m = L/k non-overlapping
// k-mers and mapped to
//
//     |psi> = m^{-1/2} sum_j |j>_pos |code(kmer_j)>_base
//
// where the position register (most significant qubits) has ceil(log2 m)
// qubits and the base register 2k qubits. Each base contributes two bits,
// A=00 T=01 G=10 C=11, with the first base of a k-mer most significant.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpsforge/error.hpp"
#include "mpsforge/state_vector.hpp"

namespace mpsforge {

struct GenomeRead {
  std::string id;
  std::string bases;  ///< uppercase, every symbol in {A,T,G,C}

  std::size_t length() const noexcept { return bases.size(); }
};

struct EncodingParams {
  int k = 1;
  /// Zero-amplitude padding qubits prepended to the position register.
  /// Only used to reproduce renderings that use a wider register than needed.
  int extra_position_qubits = 0;
  /// Overrides max_qubits() when set.
  std::optional<int> max_qubits;
};

/// Raised for malformed FASTA. Positions are 1-based within the record's
/// sequence; the byte offset is 0-based into the whole input.
class FastaError : public ValidationError {
 public:
  FastaError(const std::string& what, std::string record,
             std::size_t position, std::size_t byte_offset);

  const std::string& record() const noexcept { return record_; }
  std::size_t position() const noexcept { return position_; }
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::string record_;
  std::size_t position_;
  std::size_t byte_offset_;
};

/// Parses FASTA text. Sequence lines may be folded; lowercase is uppercased;
/// blank lines and CR line endings are tolerated.
std::vector<GenomeRead> parse_fasta(std::string_view text);

/// Reads and parses a FASTA file.
std::vector<GenomeRead> read_fasta_file(const std::string& path);

/// Two-bit code of a nucleotide (A=0, T=1, G=2, C=3). Accepts either case.
std::uint8_t base_code(char base);

/// Inverse of base_code.
char base_from_code(std::uint8_t code);

/// Number of k-mer chunks a read of length L splits into. For k > 1 the
/// length must be a multiple of k.
std::size_t chunk_count(std::size_t length, int k);

/// Width of the position register: ceil(log2 chunk_count(L, k)).
int position_qubits(std::size_t length, int k);

/// Total qubits: position_qubits(L, k) + 2k.
int qubit_count(std::size_t length, int k);

/// Encodes a read as a dense state vector. Throws ResourceError when the
/// width exceeds the configured maximum.
StateVector encode_read(const GenomeRead& read, const EncodingParams& params);

/// Recovers the bases from an encoded state: every nonzero amplitude must be
/// on a distinct position, positions must be 0..m-1, and all magnitudes equal
/// within `tol`. `extra_position_qubits` is not needed since leading position
/// bits are simply zero.
std::string decode_read(const StateVector& state, int k, double tol = 1e-9);

}  // namespace mpsforge
