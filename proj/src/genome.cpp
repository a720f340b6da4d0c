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

#include "mpsforge/genome.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mpsforge/config.hpp"

namespace mpsforge {

FastaError::FastaError(const std::string& what, std::string record,
                       std::size_t position, std::size_t byte_offset)
    : ValidationError(what),
      record_(std::move(record)),
      position_(position),
      byte_offset_(byte_offset) {}

namespace {

bool is_nucleotide(char c) {
  switch (c) {
    case 'A': case 'T': case 'G': case 'C':
    case 'a': case 't': case 'g': case 'c':
      return true;
    default:
      return false;
  }
}

char upper(char c) { return (c >= 'a' && c <= 'z') ? char(c - 'a' + 'A') : c; }

std::string printable(char c) {
  if (c >= 0x20 && c < 0x7f) return std::string(1, c);
  std::ostringstream out;
  out << "\\x" << std::hex << (static_cast<unsigned>(c) & 0xffU);
  return out.str();
}

}  // namespace

std::vector<GenomeRead> parse_fasta(std::string_view text) {
  std::vector<GenomeRead> reads;
  bool in_record = false;
  std::size_t header_offset = 0;

  auto close_record = [&](std::size_t offset) {
    if (in_record && reads.back().bases.empty()) {
      throw FastaError("empty FASTA record '" + reads.back().id +
                           "' (header at byte " +
                           std::to_string(header_offset) + ")",
                       reads.back().id, 0, offset);
    }
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!line.empty() && line.front() == '>') {
      close_record(pos);
      std::string_view header = line.substr(1);
      const std::size_t space = header.find_first_of(" \t");
      reads.push_back(
          GenomeRead{std::string(header.substr(0, space)), std::string()});
      in_record = true;
      header_offset = pos;
    } else {
      for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == ' ' || c == '\t') continue;
        if (!in_record) {
          throw FastaError("sequence data before the first '>' header at byte " +
                               std::to_string(pos + i),
                           "", 0, pos + i);
        }
        GenomeRead& read = reads.back();
        if (!is_nucleotide(c)) {
          const std::size_t position = read.bases.size() + 1;
          throw FastaError("invalid symbol '" + printable(c) + "' in record '" +
                               read.id + "' at position " +
                               std::to_string(position) + " (byte " +
                               std::to_string(pos + i) + ")",
                           read.id, position, pos + i);
        }
        read.bases.push_back(upper(c));
      }
    }
    pos = eol + 1;
  }
  close_record(text.size());
  return reads;
}

std::vector<GenomeRead> read_fasta_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open FASTA file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_fasta(buffer.str());
}

std::uint8_t base_code(char base) {
  switch (upper(base)) {
    case 'A': return 0;
    case 'T': return 1;
    case 'G': return 2;
    case 'C': return 3;
    default:
      throw ValidationError("not a nucleotide: '" + printable(base) + "'");
  }
}

char base_from_code(std::uint8_t code) {
  static constexpr char kBases[4] = {'A', 'T', 'G', 'C'};
  if (code > 3) throw ValidationError("base code out of range");
  return kBases[code];
}

std::size_t chunk_count(std::size_t length, int k) {
  if (length == 0) throw ValidationError("read length must be at least 1");
  if (k < 1) throw UsageError("k-mer length must be at least 1");
  if (length % static_cast<std::size_t>(k) != 0) {
    throw ValidationError("read length " + std::to_string(length) +
                          " is not a multiple of k = " + std::to_string(k) +
                          "; partial k-mers are rejected");
  }
  return length / static_cast<std::size_t>(k);
}

int position_qubits(std::size_t length, int k) {
  const std::size_t m = chunk_count(length, k);
  return static_cast<int>(std::bit_width(m - 1));  // ceil(log2 m), 0 for m=1
}

int qubit_count(std::size_t length, int k) {
  return position_qubits(length, k) + 2 * k;
}

StateVector encode_read(const GenomeRead& read, const EncodingParams& params) {
  if (params.extra_position_qubits < 0) {
    throw UsageError("extra position qubits must be non-negative");
  }
  const int k = params.k;
  const std::size_t m = chunk_count(read.length(), k);
  const int n = qubit_count(read.length(), k) + params.extra_position_qubits;
  const int cap = params.max_qubits.value_or(max_qubits());
  if (n > cap) {
    throw ResourceError("read '" + read.id + "' needs " + std::to_string(n) +
                        " qubits; the configured maximum is " +
                        std::to_string(cap));
  }

  std::vector<Complex> amps(std::size_t{1} << n, Complex(0.0, 0.0));
  const double amplitude = 1.0 / std::sqrt(static_cast<double>(m));
  const int base_bits = 2 * k;
  for (std::size_t j = 0; j < m; ++j) {
    std::uint64_t code = 0;
    for (int t = 0; t < k; ++t) {
      code = (code << 2) | base_code(read.bases[j * k + t]);
    }
    amps[(static_cast<std::uint64_t>(j) << base_bits) | code] = amplitude;
  }
  return StateVector(n, std::move(amps));
}

std::string decode_read(const StateVector& state, int k, double tol) {
  if (k < 1) throw UsageError("k-mer length must be at least 1");
  const int base_bits = 2 * k;
  if (state.num_qubits() < base_bits) {
    throw ValidationError("state is narrower than the base register");
  }
  const std::uint64_t base_mask = (std::uint64_t{1} << base_bits) - 1;
  const auto amps = state.amplitudes();

  std::vector<std::uint64_t> codes;
  double reference = -1.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double mag = std::abs(amps[i]);
    if (mag <= tol) continue;
    if (reference < 0.0) reference = mag;
    if (std::abs(mag - reference) > tol) {
      throw ValidationError("amplitudes are not uniform; not an encoded read");
    }
    const std::uint64_t position = i >> base_bits;
    if (position != codes.size()) {
      throw ValidationError("position " + std::to_string(position) +
                            " is missing, repeated, or out of order");
    }
    codes.push_back(i & base_mask);
  }
  if (codes.empty()) throw ValidationError("state has no support");

  std::string bases;
  bases.reserve(codes.size() * static_cast<std::size_t>(k));
  for (std::uint64_t code : codes) {
    for (int t = k - 1; t >= 0; --t) {
      bases.push_back(base_from_code(static_cast<std::uint8_t>((code >> (2 * t)) & 3U)));
    }
  }
  return bases;
}

}  // namespace mpsforge
