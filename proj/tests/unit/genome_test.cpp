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

#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <random>

#include "convert.hpp"
#include "mpsforge/error.hpp"
#include "oracles.hpp"

using namespace mpsforge;

TEST_CASE("parse_fasta reads records and folds lines", "[genome]") {
  auto reads = parse_fasta(">r1\nATGC");
  REQUIRE(reads.size() == 1);
  CHECK(reads[0].id == "r1");
  CHECK(reads[0].bases == "ATGC");
  CHECK(reads[0].length() == 4);

  reads = parse_fasta(">r1\nAT\nGC\n");
  REQUIRE(reads.size() == 1);
  CHECK(reads[0].bases == "ATGC");

  reads = parse_fasta(">a desc\r\natgc\r\n\n>b\nGG\n");
  REQUIRE(reads.size() == 2);
  CHECK(reads[0].id == "a");
  CHECK(reads[0].bases == "ATGC");
  CHECK(reads[1].bases == "GG");
}

TEST_CASE("parse_fasta rejects bad symbols with their position", "[genome]") {
  try {
    parse_fasta(">r1\nATXN");
    FAIL("expected an error");
  } catch (const FastaError& e) {
    CHECK(e.position() == 3);
    CHECK(e.record() == "r1");
    CHECK(e.byte_offset() == 6);
  }
  CHECK_THROWS_AS(parse_fasta(">r1\n>r2\nAT"), FastaError);
  CHECK_THROWS_AS(parse_fasta("ATGC\n"), FastaError);
  CHECK(parse_fasta("").empty());
}

TEST_CASE("base codes", "[genome]") {
  CHECK(base_code('A') == 0b00);
  CHECK(base_code('T') == 0b01);
  CHECK(base_code('G') == 0b10);
  CHECK(base_code('C') == 0b11);
  CHECK(base_code('g') == 0b10);
  CHECK_THROWS_AS(base_code('N'), ValidationError);
  for (std::uint8_t c = 0; c < 4; ++c) CHECK(base_code(base_from_code(c)) == c);
}

TEST_CASE("qubit_count", "[genome]") {
  CHECK(qubit_count(5386, 1) == 15);
  CHECK(qubit_count(1, 1) == 2);
  CHECK(qubit_count(1024, 1) == 12);
  CHECK(qubit_count(1025, 1) == 13);
  CHECK(qubit_count(4, 2) == 5);
  CHECK(qubit_count(6, 3) == 7);
  CHECK_THROWS_AS(qubit_count(5, 2), ValidationError);
  CHECK_THROWS(qubit_count(0, 1));
  CHECK_THROWS(qubit_count(4, 0));
}

TEST_CASE("encode_read places 1/sqrt(m) at position/code indices", "[genome]") {
  const StateVector at = encode_read({"x", "AT"}, {});
  REQUIRE(at.num_qubits() == 3);
  for (std::size_t i = 0; i < at.size(); ++i) {
    const double expect = (i == 0b000 || i == 0b101) ? 1.0 / std::sqrt(2.0) : 0.0;
    CHECK(std::abs(at[i] - Complex(expect)) < 1e-15);
  }

  const StateVector atgc = encode_read({"x", "ATGC"}, {});
  REQUIRE(atgc.num_qubits() == 4);
  for (std::size_t i = 0; i < atgc.size(); ++i) {
    const bool hit = i == 0 || i == 5 || i == 10 || i == 15;
    CHECK(atgc[i] == Complex(hit ? 0.5 : 0.0));
  }

  EncodingParams wide;
  wide.extra_position_qubits = 1;
  const StateVector padded = encode_read({"x", "ATGC"}, wide);
  REQUIRE(padded.num_qubits() == 5);
  CHECK(basis_label(5, 5) == "00101");
  for (std::size_t i = 0; i < padded.size(); ++i) {
    const bool hit = i == 0b00000 || i == 0b00101 || i == 0b01010 || i == 0b01111;
    CHECK(padded[i] == Complex(hit ? 0.5 : 0.0));
  }
}

TEST_CASE("encode_read agrees with a literal encoder", "[genome]") {
  std::mt19937_64 rng(11);
  const char alphabet[] = "ATGC";
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + trial % 3;
    const int chunks = 1 + static_cast<int>(rng() % 40);
    std::string s;
    for (int i = 0; i < chunks * k; ++i) s += alphabet[rng() % 4];
    EncodingParams p;
    p.k = k;
    const StateVector sv = encode_read({"r", s}, p);
    const oracle::Vec expect = oracle::encode(s, k);
    REQUIRE(static_cast<Eigen::Index>(sv.size()) == expect.size());
    CHECK((testutil::to_vec(sv) - expect).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(sv.is_normalized(1e-12));
    CHECK(decode_read(sv, k) == s);
  }
}

TEST_CASE("encode_read enforces the qubit limit", "[genome]") {
  EncodingParams p;
  p.max_qubits = 4;
  CHECK_NOTHROW(encode_read({"x", "ATGC"}, p));
  CHECK_THROWS_AS(encode_read({"x", "ATGCA"}, p), ResourceError);
}

TEST_CASE("phiX174 fixture encodes into 15 qubits", "[genome]") {
  const auto reads = read_fasta_file(testutil::data_path("phix174.fasta"));
  REQUIRE(reads.size() == 1);
  CHECK(reads[0].length() == 5386);
  CHECK(qubit_count(reads[0].length(), 1) == 15);
  const StateVector sv = encode_read(reads[0], {});
  CHECK(sv.num_qubits() == 15);
  CHECK(decode_read(sv, 1) == reads[0].bases);
}
