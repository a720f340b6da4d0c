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

#include "mpsforge/transpiler.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "convert.hpp"
#include "mpsforge/error.hpp"
#include "mpsforge/simulator.hpp"
#include "oracles.hpp"

using namespace mpsforge;
using testutil::from_vec;
using testutil::to_vec;

namespace {

constexpr double kPi = std::numbers::pi;

// Dense product of a native gate list built from the reference matrices.
oracle::Mat dense_unitary(const std::vector<NativeGate>& gates, int n) {
  oracle::Mat u = oracle::identity(1 << n);
  for (const NativeGate& g : gates) {
    switch (g.kind) {
      case GateKind::kRy: u = oracle::embed(oracle::ry(g.angle), g.qubit, 1, n) * u; break;
      case GateKind::kRz: u = oracle::embed(oracle::rz(g.angle), g.qubit, 1, n) * u; break;
      case GateKind::kCx: u = oracle::cx(g.qubit, g.target, n) * u; break;
    }
  }
  return u;
}

int count_cx(const std::vector<NativeGate>& gates) {
  int c = 0;
  for (const NativeGate& g : gates) c += g.kind == GateKind::kCx;
  return c;
}

oracle::Mat pauli_pair_exp(double a, double b, double c) {
  oracle::Mat x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  const oracle::Mat h = a * oracle::kron(x, x) + b * oracle::kron(y, y) + c * oracle::kron(z, z);
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(h);
  oracle::Mat d = oracle::Mat::Zero(4, 4);
  for (int i = 0; i < 4; ++i) d(i, i) = std::exp(Complex(0, es.eigenvalues()(i)));
  return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

}  // namespace

TEST_CASE("rotation matrices", "[transpiler]") {
  CHECK((rz_matrix(0.3) - oracle::rz(0.3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ry_matrix(0.3) - oracle::ry(0.3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((cx_matrix(true) - oracle::cx(0, 1, 2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((cx_matrix(false) - oracle::cx(1, 0, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zyz canonical branches", "[transpiler]") {
  const ZyzAngles id = zyz(Matrix::Identity(2, 2));
  CHECK(id.theta0 == 0.0);
  CHECK(id.theta1 == 0.0);
  CHECK(id.theta2 == 0.0);
  CHECK(id.phase == 0.0);

  const ZyzAngles y = zyz(oracle::ry(0.7));
  CHECK(y.theta1 == Catch::Approx(0.7).margin(1e-14));
  CHECK(y.theta0 == 0.0);
  CHECK(y.theta2 == 0.0);

  const ZyzAngles z = zyz(oracle::rz(1.1));
  CHECK(z.theta1 == 0.0);
  CHECK(z.theta2 == 0.0);
  CHECK(z.theta0 == Catch::Approx(1.1).margin(1e-14));

  CHECK_THROWS_AS(zyz(2.0 * Matrix::Identity(2, 2)), ValidationError);
}

TEST_CASE("zyz reconstructs random unitaries", "[transpiler]") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 500; ++trial) {
    const oracle::Mat u = oracle::random_unitary(2, rng);
    const ZyzAngles a = zyz(u);
    const oracle::Mat r = std::exp(Complex(0, a.phase)) * oracle::rz(a.theta0) *
                          oracle::ry(a.theta1) * oracle::rz(a.theta2);
    CHECK((u - r).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(a.theta1 >= 0.0);
    CHECK(a.theta1 <= kPi);
  }
  // Gimbal lock at theta1 = pi.
  const oracle::Mat flip = oracle::rz(0.4) * oracle::ry(kPi) * oracle::rz(0.9);
  const ZyzAngles f = zyz(flip);
  CHECK(f.theta2 == 0.0);
  CHECK((flip - std::exp(Complex(0, f.phase)) * oracle::rz(f.theta0) * oracle::ry(f.theta1))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
}

TEST_CASE("kak_decompose reconstructs", "[transpiler]") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 200; ++trial) {
    const oracle::Mat u = oracle::random_unitary(4, rng);
    const KakDecomposition k = kak_decompose(u);
    const oracle::Mat r = std::exp(Complex(0, k.phase)) * oracle::kron(k.k1a, k.k1b) *
                          pauli_pair_exp(k.a, k.b, k.c) * oracle::kron(k.k2a, k.k2b);
    CHECK((u - r).cwiseAbs().maxCoeff() < 1e-9);
    for (double x : {k.a, k.b, k.c}) {
      CHECK(x > -kPi / 4 - 1e-12);
      CHECK(x <= kPi / 4 + 1e-12);
    }
  }
}

TEST_CASE("decompose_two_qubit special cases", "[transpiler]") {
  double phase = 0.0;
  CHECK(decompose_two_qubit(Matrix::Identity(4, 4), 0, &phase).empty());

  std::mt19937_64 rng(89);
  const oracle::Mat local = oracle::kron(oracle::random_unitary(2, rng), oracle::random_unitary(2, rng));
  CHECK(count_cx(decompose_two_qubit(local)) == 0);

  oracle::Mat swap = oracle::Mat::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  oracle::Mat cz = oracle::identity(4);
  cz(3, 3) = -1.0;
  oracle::Mat iswap = swap;
  iswap(1, 2) = iswap(2, 1) = Complex(0, 1);
  const oracle::Mat crot = [] {
    oracle::Mat m = oracle::identity(4);
    m.block(2, 2, 2, 2) = oracle::ry(0.8);
    return m;
  }();
  const struct {
    const char* name;
    oracle::Mat u;
    int cx;
  } cases[] = {
      {"cx", cx_matrix(true), 1},      {"cx reversed", cx_matrix(false), 1},
      {"cz", cz, 1},                   {"iswap", iswap, 2},
      {"controlled ry", crot, 2},      {"swap", swap, 3},
      {"xx+yy", pauli_pair_exp(0.3, 0.2, 0.0), 2},
      {"yy+zz", pauli_pair_exp(0.0, 0.2, 0.5), 2},
      {"xx+zz", pauli_pair_exp(0.6, 0.0, -0.1), 2},
      {"yy quarter", pauli_pair_exp(0.0, -kPi / 4, 0.0), 1},
  };
  for (const auto& c : cases) {
    INFO(c.name);
    double p = 0.0;
    const auto gates = decompose_two_qubit(c.u, 0, &p);
    CHECK(count_cx(gates) == c.cx);
    CHECK(oracle::phase_distance(c.u, dense_unitary(gates, 2)) < 1e-10);
    CHECK((c.u - std::exp(Complex(0, p)) * dense_unitary(gates, 2)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("decompose_two_qubit on 1000 random unitaries", "[transpiler]") {
  std::mt19937_64 rng(97);
  double worst = 0.0;
  int max_cx = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const oracle::Mat u = oracle::random_unitary(4, rng);
    double p = 0.0;
    const auto gates = decompose_two_qubit(u, 0, &p);
    max_cx = std::max(max_cx, count_cx(gates));
    worst = std::max(worst, oracle::phase_distance(u, dense_unitary(gates, 2)));
  }
  CHECK(max_cx <= 3);
  CHECK(worst < 1e-8);
}

TEST_CASE("decompose_two_qubit places gates on the requested pair", "[transpiler]") {
  std::mt19937_64 rng(101);
  const oracle::Mat u = oracle::random_unitary(4, rng);
  double p = 0.0;
  const auto gates = decompose_two_qubit(u, 2, &p);
  for (const NativeGate& g : gates) {
    CHECK((g.qubit == 2 || g.qubit == 3));
    if (g.kind == GateKind::kCx) CHECK((g.target == 2 || g.target == 3));
  }
  CHECK(oracle::phase_distance(oracle::embed(u, 2, 2, 4), dense_unitary(gates, 4)) < 1e-9);
}

TEST_CASE("peephole merges and cancels", "[transpiler]") {
  double phase = 0.0;
  std::vector<NativeGate> g = {NativeGate::rz(0, 0.3), NativeGate::rz(1, 0.5),
                               NativeGate::rz(0, -0.3), NativeGate::cx(0, 1),
                               NativeGate::cx(0, 1),   NativeGate::ry(1, 0.25),
                               NativeGate::ry(1, 0.5)};
  const oracle::Mat before = dense_unitary(g, 2);
  peephole(g, phase);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == NativeGate::rz(1, 0.5));
  CHECK(g[1].kind == GateKind::kRy);
  CHECK(g[1].angle == Catch::Approx(0.75));
  CHECK((before - std::exp(Complex(0, phase)) * dense_unitary(g, 2)).cwiseAbs().maxCoeff() < 1e-14);

  std::vector<NativeGate> full_turn = {NativeGate::ry(0, kPi), NativeGate::ry(0, kPi)};
  double p2 = 0.0;
  peephole(full_turn, p2);
  CHECK(full_turn.empty());
  CHECK(std::abs(std::abs(p2) - kPi) < 1e-12);
}

TEST_CASE("gate_stats", "[transpiler]") {
  NativeCircuit empty{3, {}, 0.0};
  const GateStats e = gate_stats(empty);
  CHECK(e.total == 0);
  CHECK(e.depth == 0);

  NativeCircuit one{2, {NativeGate::cx(0, 1)}, 0.0};
  const GateStats s = gate_stats(one);
  CHECK(s.cx_count == 1);
  CHECK(s.rotation_count == 0);
  CHECK(s.depth == 1);

  NativeCircuit par{2, {NativeGate::ry(0, 0.1), NativeGate::rz(1, 0.2)}, 0.0};
  CHECK(gate_stats(par).depth == 1);

  NativeCircuit chain{3,
                      {NativeGate::ry(0, 0.1), NativeGate::cx(0, 1), NativeGate::rz(2, 0.3),
                       NativeGate::cx(1, 2), NativeGate::ry(0, 0.2)},
                      0.0};
  const GateStats c = gate_stats(chain);
  CHECK(c.depth == 3);
  CHECK(c.cx_count == 2);
  CHECK(c.ry_count == 2);
  CHECK(c.rz_count == 1);
}

TEST_CASE("transpile preserves the prepared state", "[transpiler]") {
  LayeredCircuit empty;
  empty.num_qubits = 3;
  CHECK(transpile(empty).gates.empty());

  std::mt19937_64 rng(103);
  for (const oracle::Vec& target : {oracle::ghz(5), oracle::random_state(5, rng)}) {
    SynthesisOptions opts;
    opts.target_fidelity = 0.99;
    const SynthesisResult r = synthesize(from_vec(target), opts);
    const NativeCircuit nc = transpile(r.circuit);
    const StateVector layered = run(r.circuit);
    const StateVector native = run(nc);
    CHECK(fidelity(layered, native) >= 1.0 - 1e-8);
    CHECK((to_vec(layered) - to_vec(native)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(oracle::fidelity(target, to_vec(native)) >= 0.99);

    // Per-gate accounting: the whole equals the sum of its parts.
    long long parts = 0;
    for (const Layer& layer : r.circuit.layers) {
      for (const TwoQubitGate& g : layer.gates) parts += decompose_two_qubit(g.u, g.qubit).size();
      parts += decompose_one_qubit(layer.cap.u, layer.cap.qubit).size();
    }
    CHECK(gate_stats(nc).total == parts);

    TranspileOptions raw;
    raw.simplify = false;
    const NativeCircuit rc = transpile(r.circuit, raw);
    CHECK(gate_stats(rc).total >= gate_stats(nc).total);
    CHECK(fidelity(layered, run(rc)) >= 1.0 - 1e-8);
  }
}

TEST_CASE("qasm emission format", "[transpiler]") {
  NativeCircuit c{2, {NativeGate::ry(0, 0.5), NativeGate::cx(0, 1)}, 0.0};
  const std::string text = emit_qasm(c);
  CHECK(text.find("OPENQASM 2.0;") == 0);
  CHECK(text.find("qreg q[2];") != std::string::npos);
  CHECK(text.find("ry(0.5) q[0];") != std::string::npos);
  CHECK(text.find("cx q[0],q[1];") != std::string::npos);
}

TEST_CASE("qasm round trip", "[transpiler]") {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  NativeCircuit c;
  c.num_qubits = 5;
  for (int i = 0; i < 200; ++i) {
    const int q = static_cast<int>(rng() % 5);
    switch (rng() % 3) {
      case 0: c.gates.push_back(NativeGate::ry(q, ang(rng))); break;
      case 1: c.gates.push_back(NativeGate::rz(q, ang(rng))); break;
      default: c.gates.push_back(NativeGate::cx(q, (q + 1) % 5)); break;
    }
  }
  const std::string first = emit_qasm(c);
  const NativeCircuit parsed = parse_qasm(first);
  CHECK(parsed.gates == c.gates);
  CHECK(emit_qasm(parsed) == first);
}

TEST_CASE("qasm parser accepts the common subset", "[transpiler]") {
  const NativeCircuit c = parse_qasm(
      "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n// comment\nqreg r[3];\ncreg m[3];\n"
      "rz(-pi/2) r[1];\nry(2*pi/3) r[0];\nbarrier r[0],r[1];\ncx r[2],r[0];\n"
      "measure r[0] -> m[0];\n");
  CHECK(c.num_qubits == 3);
  REQUIRE(c.gates.size() == 3);
  CHECK(c.gates[0].angle == Catch::Approx(-kPi / 2));
  CHECK(c.gates[1].angle == Catch::Approx(2 * kPi / 3));
  CHECK(c.gates[2] == NativeGate::cx(2, 0));
  CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\nqreg q[2];\nh q[0];\n"), ValidationError);
  CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[5];\n"), ValidationError);
  CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\nry(0.1) q[0];\n"), ValidationError);
}
