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

// Acceptance checks 1-11. Prints one PASS/FAIL line per criterion.
//
//   acceptance              run everything
//   acceptance 3 7          run criteria 3 and 7

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "convert.hpp"
#include "mpsforge/genome.hpp"
#include "mpsforge/mps.hpp"
#include "mpsforge/simulator.hpp"
#include "mpsforge/synthesis.hpp"
#include "mpsforge/transpiler.hpp"
#include "oracles.hpp"

using namespace mpsforge;
using testutil::from_vec;
using testutil::to_vec;

namespace {

// Tolerances and reference numbers.
constexpr double kEncodeRuntime = 1.0;          // s
constexpr double kBond98Error = 1e-6;
constexpr double kBond49Error = 0.20;
constexpr double kBond49Tolerance = 0.05;
constexpr double kSweepRuntime = 120.0;         // s
constexpr double kSynthesisRuntime = 600.0;     // s
constexpr int kLayerBudget = 200;
constexpr double kExactTolerance = 1e-10;
constexpr double kReferenceGateCount = 11610.0;
constexpr double kReferenceFactor = 2.0;
constexpr double kScalingConstant = 2.0;
constexpr double kEpsilonTolerance = 1e-12;
constexpr double kEpsilonRatioTolerance = 1e-6;
constexpr double kReconstructionTolerance = 1e-8;
constexpr int kMaxCx = 3;
constexpr double kEquivalenceTolerance = 1e-8;
constexpr double kCanonicalTolerance = 1e-10;
constexpr long long kShots = 100000;
constexpr double kQuasiTolerance = 0.01;

const std::vector<double> kTrendFidelities = {0.5, 0.6, 0.7, 0.75, 0.8, 0.9, 0.99};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const GenomeRead& phix() {
  static const GenomeRead read = read_fasta_file(testutil::data_path("phix174.fasta")).at(0);
  return read;
}

GenomeRead fragment(std::size_t offset, std::size_t length) {
  return {"phix[" + std::to_string(offset) + ":+" + std::to_string(length) + "]",
          phix().bases.substr(offset, length)};
}

// Genome reads of the corpus: two fragments for every register width 3..12.
std::vector<GenomeRead> genome_corpus() {
  std::vector<GenomeRead> reads;
  for (int n = 3; n <= 12; ++n) {
    const std::size_t length = std::size_t{1} << (n - 2);
    reads.push_back(fragment(0, length));
    reads.push_back(fragment(2500, length));
  }
  return reads;
}

// The first layer count at which each fidelity in `fs` is met, from one run
// to the largest of them.
struct Trend {
  SynthesisResult result;
  std::vector<double> trace;
  std::map<double, int> layers_for;
};

Trend synthesize_trend(const StateVector& target, const std::vector<double>& fs, int budget) {
  Trend t;
  SynthesisOptions opts;
  opts.target_fidelity = *std::max_element(fs.begin(), fs.end());
  opts.max_layers = budget;
  opts.on_iteration = [&](const IterationInfo& it) { t.trace.push_back(it.fidelity); };
  t.result = synthesize(target, opts);
  for (double f : fs) {
    for (std::size_t q = 0; q < t.trace.size(); ++q) {
      if (t.trace[q] >= f) {
        t.layers_for[f] = static_cast<int>(q) + 1;
        break;
      }
    }
  }
  return t;
}

const Trend& phix_trend() {
  static const Trend t = synthesize_trend(encode_read(phix(), {}), kTrendFidelities, 20000);
  return t;
}

long long pre_transpile_gates(const LayeredCircuit& c) {
  long long g = 0;
  for (const Layer& l : c.layers) g += static_cast<long long>(l.gates.size()) + 1;
  return g;
}

// ---------------------------------------------------------------------------

void criterion_1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const StateVector canon = encode_read({"x", "ATGC"}, {});
  EncodingParams wide;
  wide.extra_position_qubits = 1;
  const StateVector padded = encode_read({"x", "ATGC"}, wide);
  const double dt = seconds_since(t0);
  auto exact = [](const StateVector& s, int n) {
    if (s.num_qubits() != n) return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const bool hit = i == 0 || i == 5 || i == 10 || i == 15;  // |00>|A> |01>|T> |10>|G> |11>|C>
      if (s[i] != Complex(hit ? 0.5 : 0.0)) return false;
    }
    return true;
  };
  o.pass = exact(canon, 4) && exact(padded, 5) && dt < kEncodeRuntime;
  o.detail << "4-qubit exact=" << exact(canon, 4) << ", 5-qubit exact=" << exact(padded, 5)
           << ", runtime " << dt << " s";
}

void criterion_2(Outcome& o) {
  const StateVector sv = encode_read(phix(), {});
  o.pass = phix().length() == 5386 && sv.num_qubits() == 15;
  o.detail << "L=" << phix().length() << " n=" << sv.num_qubits();
}

void criterion_3(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const StateVector sv = encode_read(phix(), {});
  const MatrixProductState full = from_statevector(sv);
  double previous = 2.0;
  bool monotone = true;
  double e49 = -1, e98 = -1;
  for (int chi = 1; chi <= 128; ++chi) {
    const double e = reconstruction_error(to_statevector(truncate(full, chi)), sv);
    if (e > previous + 1e-12) monotone = false;
    previous = e;
    if (chi == 49) e49 = e;
    if (chi == 98) e98 = e;
  }
  const double dt = seconds_since(t0);
  o.pass = e98 <= kBond98Error && std::abs(e49 - kBond49Error) <= kBond49Tolerance && monotone &&
           dt < kSweepRuntime && full.max_bond() == 98;
  o.detail << "chi_max=" << full.max_bond() << ", error(98)=" << e98 << ", error(49)=" << e49
           << ", monotone=" << monotone << ", runtime " << dt << " s";
}

void criterion_4(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> fs = {0.75, 0.9, 0.99};
  int checked = 0, failed = 0;
  std::ostringstream misses;
  auto check = [&](const std::string& name, const StateVector& target) {
    for (double f : fs) {
      SynthesisOptions opts;
      opts.target_fidelity = f;
      opts.max_layers = kLayerBudget;
      const SynthesisResult r = synthesize(target, opts);
      const double sim = fidelity(target, run(r.circuit));
      ++checked;
      if (sim < f) {
        ++failed;
        misses << " " << name << "@" << f << "->" << sim << "(" << r.circuit.layers.size()
               << " layers)";
      }
    }
  };
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    const int n = 3 + i % 6;
    check("random" + std::to_string(i) + "(n=" + std::to_string(n) + ")",
          from_vec(oracle::random_state(n, rng)));
  }
  for (const GenomeRead& read : genome_corpus()) {
    const StateVector sv = encode_read(read, {});
    check(read.id + "(n=" + std::to_string(sv.num_qubits()) + ")", sv);
  }
  const double dt = seconds_since(t0);
  o.pass = failed == 0 && dt < kSynthesisRuntime;
  o.detail << checked - failed << "/" << checked << " (state, f) pairs reached f within "
           << kLayerBudget << " layers, runtime " << dt << " s";
  if (failed) o.detail << "; misses:" << misses.str();
}

void criterion_5(Outcome& o) {
  std::mt19937_64 rng(5);
  int total = 0, good = 0;
  double worst = 1.0;
  for (int n = 3; n <= 8; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const StateVector target = from_vec(oracle::random_bond2_state(n, rng));
      SynthesisOptions opts;
      opts.target_fidelity = 1.0 - kExactTolerance;
      const SynthesisResult r = synthesize(target, opts);
      const double f = fidelity(target, run(r.circuit));
      worst = std::min(worst, f);
      ++total;
      good += r.circuit.layers.size() == 1 && f >= 1.0 - kExactTolerance;
    }
  }
  o.pass = good == total;
  o.detail << good << "/" << total << " bond-2 states prepared by one layer, worst fidelity 1-"
           << 1.0 - worst;
}

void criterion_6(Outcome& o) {
  const Trend& t = phix_trend();
  long long previous = -1;
  bool monotone = true, all_reached = true;
  long long native75 = 0, pre75 = 0;
  for (double f : kTrendFidelities) {
    const auto it = t.layers_for.find(f);
    if (it == t.layers_for.end()) {
      all_reached = false;
      continue;
    }
    const LayeredCircuit c = circuit_prefix(t.result.circuit, it->second);
    const long long native = gate_stats(transpile(c)).total;
    const long long pre = pre_transpile_gates(c);
    if (native < previous) monotone = false;
    previous = native;
    if (f == 0.75) {
      native75 = native;
      pre75 = pre;
    }
    o.detail << "f=" << f << ": " << it->second << " layers, " << pre << " pre / " << native
             << " native; ";
  }
  auto within = [](double x) {
    return x >= kReferenceGateCount / kReferenceFactor && x <= kReferenceGateCount * kReferenceFactor;
  };
  const bool pre_ok = within(static_cast<double>(pre75));
  const bool native_ok = within(static_cast<double>(native75));
  std::size_t trace_drops = 0;
  double worst_drop = 0.0;
  for (std::size_t i = 1; i < t.trace.size(); ++i) {
    const double d = t.trace[i - 1] - t.trace[i];
    if (d > 0.0) {
      ++trace_drops;
      worst_drop = std::max(worst_drop, d);
    }
  }
  o.pass = all_reached && monotone && (pre_ok || native_ok);
  o.detail << "fidelity trace drops=" << trace_drops << " (largest " << worst_drop
           << "); native monotone=" << monotone << "; f=0.75 vs 11610: pre " << pre75 << " (x"
           << pre75 / kReferenceGateCount << (pre_ok ? ", within" : ", OUTSIDE") << " x/2), native "
           << native75 << " (x" << native75 / kReferenceGateCount
           << (native_ok ? ", within" : ", OUTSIDE") << " x/2)";
}

void criterion_7(Outcome& o) {
  bool bounded = true, under = true;
  for (int n = 8; n <= 15; ++n) {
    long long gates = 0, native = 0;
    if (n == 15) {
      const Trend& t = phix_trend();
      const LayeredCircuit c = circuit_prefix(t.result.circuit, t.layers_for.at(0.99));
      gates = pre_transpile_gates(c);
      native = gate_stats(transpile(c)).total;
    } else {
      const StateVector sv = encode_read(fragment(0, std::size_t{1} << (n - 2)), {});
      SynthesisOptions opts;
      opts.target_fidelity = 0.99;
      opts.max_layers = 20000;
      const SynthesisResult r = synthesize(sv, opts);
      gates = r.report.total_gates();
      native = gate_stats(transpile(r.circuit)).total;
    }
    const double ref = std::ldexp(1.0, n);
    if (gates > kScalingConstant * ref) bounded = false;
    if (n >= 10 && gates >= 2 * ref) under = false;
    o.detail << "n=" << n << ": " << gates << " (" << gates / ref << "x2^n, native " << native
             << "); ";
  }
  o.pass = bounded && under;
  o.detail << "c=" << kScalingConstant << " bound=" << bounded << ", under 2^(n+1) for n>=10="
           << under;
}

void criterion_8(Outcome& o) {
  double worst = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double delta = i / 1000.0;
    worst = std::max(worst, std::abs(epsilon_from_delta(delta) - oracle::epsilon_literal(delta)));
  }
  const double ratio = epsilon_from_delta(1e-4) / 1e-4;
  o.pass = worst <= kEpsilonTolerance && std::abs(ratio - 1.0) <= kEpsilonRatioTolerance;
  o.detail << "max |eps - reference| over 1000 points = " << worst
           << ", eps/delta at 1e-4 = " << ratio;
}

void criterion_9(Outcome& o) {
  std::mt19937_64 rng(9);
  double worst = 0.0;
  int max_cx = 0;
  for (int i = 0; i < 1000; ++i) {
    const oracle::Mat u = oracle::random_unitary(4, rng);
    const auto gates = decompose_two_qubit(u);
    int cx = 0;
    for (const NativeGate& g : gates) cx += g.kind == GateKind::kCx;
    max_cx = std::max(max_cx, cx);
    worst = std::max(worst, oracle::phase_distance(u, circuit_unitary(gates, 2)));
  }

  double worst_equiv = 1.0;
  int circuits = 0;
  auto check = [&](const StateVector& target, double f) {
    SynthesisOptions opts;
    opts.target_fidelity = f;
    opts.max_layers = 2000;
    const SynthesisResult r = synthesize(target, opts);
    worst_equiv = std::min(worst_equiv, fidelity(run(r.circuit), run(transpile(r.circuit))));
    ++circuits;
  };
  for (int n = 3; n <= 8; ++n) {
    for (double f : {0.75, 0.9, 0.99}) check(from_vec(oracle::random_state(n, rng)), f);
  }
  for (const GenomeRead& read : genome_corpus()) {
    for (double f : {0.75, 0.9, 0.99}) check(encode_read(read, {}), f);
  }
  o.pass = max_cx <= kMaxCx && worst < kReconstructionTolerance &&
           worst_equiv >= 1.0 - kEquivalenceTolerance;
  o.detail << "1000 unitaries: max CX " << max_cx << ", worst error " << worst << "; " << circuits
           << " circuits: worst layered/native fidelity 1-" << 1.0 - worst_equiv;
}

void criterion_10(Outcome& o) {
  std::mt19937_64 rng(10);
  double worst = 0.0;
  int checked = 0;
  auto audit = [&](const StateVector& sv) {
    const MatrixProductState full = from_statevector(sv);
    worst = std::max(worst, left_canonical_deviation(full));
    ++checked;
    for (int chi = 1; chi <= full.max_bond(); chi = chi < 8 ? chi + 1 : chi * 2) {
      worst = std::max(worst, left_canonical_deviation(truncate(full, chi)));
      ++checked;
    }
  };
  for (int n = 1; n <= 10; ++n) audit(from_vec(oracle::random_state(n, rng)));
  for (const GenomeRead& read : genome_corpus()) audit(encode_read(read, {}));
  audit(encode_read(phix(), {}));
  o.pass = worst <= kCanonicalTolerance;
  o.detail << checked << " MPS checked, worst deviation " << worst;
}

void criterion_11(Outcome& o) {
  const StateVector target = encode_read(fragment(0, 64), {});
  SynthesisOptions opts;
  opts.target_fidelity = 0.99;
  const SynthesisResult r = synthesize(target, opts);
  const StateVector prepared = run(r.circuit);
  const double exact = fidelity(target, prepared);
  const StateVector quasi = quasi_statevector(sample_shots(prepared, kShots, 11));
  const double hw = hardware_fidelity(target, quasi);
  o.pass = target.num_qubits() == 8 && exact >= 0.99 && std::abs(hw - exact) <= kQuasiTolerance;
  o.detail << "n=" << target.num_qubits() << ", exact " << exact << ", quasi at " << kShots
           << " shots " << hw << ", |diff| " << std::abs(hw - exact);
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"worked ATGC encoding", criterion_1},
      {"phiX174 qubit count", criterion_2},
      {"reconstruction error vs bond dimension", criterion_3},
      {"synthesis correctness within the layer budget", criterion_4},
      {"bond-2 exactness", criterion_5},
      {"gate-count trend and reference count", criterion_6},
      {"scaling vs exponential reference", criterion_7},
      {"epsilon-delta relation", criterion_8},
      {"transpiler reconstruction and equivalence", criterion_9},
      {"left-canonical invariant", criterion_10},
      {"hardware-fidelity pipeline", criterion_11},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);
  }

  int failures = 0;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    Outcome o;
    o.detail.precision(6);
    try {
      criteria[id - 1].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failures += !o.pass;
    std::printf("criterion %2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", criteria[id - 1].first,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
