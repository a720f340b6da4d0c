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

#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <variant>

#include "mpsforge/config.hpp"
#include "mpsforge/error.hpp"
#include "mpsforge/genome.hpp"
#include "mpsforge/io.hpp"
#include "mpsforge/mps.hpp"
#include "mpsforge/simulator.hpp"
#include "mpsforge/synthesis.hpp"
#include "mpsforge/transpiler.hpp"

namespace mpsforge::cli {

namespace fs = std::filesystem;
using io::Json;

const char* const kCsvHeader =
    "input_id,n,L,chi_max,f_target,f_achieved,layers,gates_pre,gates_native,cx_count,depth,"
    "error";

namespace {

const std::vector<double> kDefaultFidelities = {0.5, 0.6, 0.7, 0.75, 0.8, 0.9, 0.99};
const std::vector<std::string> kAllSweeps = {"chi", "length", "fidelity", "qubits"};

int ceil_log2(long long x) {
  int b = 0;
  while ((1LL << b) < x) ++b;
  return b;
}

// ---------------------------------------------------------------------------
// Report plumbing

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["inputs"] = c.inputs;
  if (!c.target.empty()) j["target"] = c.target;
  j["k"] = c.k;
  j["extra_position_qubits"] = c.extra_position_qubits;
  j["fidelity"] = c.fidelity;
  j["chi_cap"] = c.chi_cap ? Json(*c.chi_cap) : Json(nullptr);
  j["shots"] = c.shots;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["formats"] = c.formats;
  j["max_layers"] = c.max_layers;
  j["locality_window"] = c.locality_window ? Json(*c.locality_window) : Json(nullptr);
  j["jobs"] = c.jobs;
  j["simplify"] = c.simplify;
  if (!c.sweeps.empty()) j["sweeps"] = c.sweeps;
  if (!c.fidelities.empty()) j["fidelities"] = c.fidelities;
  return j;
}

Json header(const RunConfig& c, const std::vector<std::string>& files) {
  Json j;
  j["tool"] = "mpsforge";
  j["version"] = std::string(kVersion);
  j["config"] = config_json(c);
  Json inputs = Json::array();
  for (const std::string& f : files) inputs.push_back({{"path", f}, {"sha256", sha256_file(f)}});
  j["inputs"] = inputs;
  return j;
}

std::string out_path(const RunConfig& c, const std::string& name) {
  return (fs::path(c.out) / name).string();
}

void write_json(const std::string& path, const Json& j) {
  io::write_file_atomic(path, j.dump(2) + "\n");
}

bool wants(const RunConfig& c, const std::string& fmt, std::initializer_list<const char*> allowed,
           std::initializer_list<const char*> defaults) {
  for (const std::string& f : c.formats) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return f == a; }) ==
        allowed.end()) {
      throw UsageError("--format " + f + " is not supported by '" + c.command + "'");
    }
  }
  const auto& pool = c.formats;
  if (pool.empty()) {
    return std::find_if(defaults.begin(), defaults.end(),
                        [&](const char* d) { return fmt == d; }) != defaults.end();
  }
  return std::find(pool.begin(), pool.end(), fmt) != pool.end();
}

std::string sanitize(const std::string& id) {
  std::string s;
  for (char ch : id) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '_' || ch == '-';
    s += ok ? ch : '_';
  }
  return s.empty() ? "read" : s;
}

const std::string& single_input(const RunConfig& c) {
  if (c.inputs.size() != 1) throw UsageError("'" + c.command + "' takes exactly one --input");
  return c.inputs.front();
}

bool looks_like_fasta(const std::string& bytes) {
  for (char ch : bytes) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '>';
  }
  return false;
}

EncodingParams encoding(const RunConfig& c) {
  EncodingParams p;
  p.k = c.k;
  p.extra_position_qubits = c.extra_position_qubits;
  return p;
}

// Statevector input: a FASTA file (first record is encoded) or a statevector
// file. `length` is the read length when it can be known.
struct Target {
  StateVector state;
  long long length = 0;
};

Target load_target(const std::string& path, const RunConfig& c) {
  const std::string bytes = io::read_file(path);
  if (looks_like_fasta(bytes)) {
    const auto reads = parse_fasta(bytes);
    if (reads.empty()) throw ValidationError("'" + path + "' holds no FASTA records");
    return {encode_read(reads.front(), encoding(c)), static_cast<long long>(reads.front().length())};
  }
  Target t{io::read_statevector_file(path), 0};
  long long support = 0;
  for (const Complex& a : t.state.amplitudes()) support += std::norm(a) > 0.0;
  t.length = support * c.k;
  return t;
}

using AnyCircuit = std::variant<LayeredCircuit, NativeCircuit>;

AnyCircuit load_circuit(const std::string& path) {
  const std::string text = io::read_file(path);
  if (text.find("OPENQASM") != std::string::npos && !text.empty() && text.front() != '{') {
    return parse_qasm(text);
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ValidationError("'" + path + "' is neither QASM nor JSON: " + e.what());
  }
  if (j.contains("layers")) return io::layered_circuit_from_json(j);
  if (j.contains("gates")) return io::native_circuit_from_json(j);
  throw ValidationError("'" + path + "' is not a circuit (no 'layers' or 'gates')");
}

// ---------------------------------------------------------------------------
// Synthesis shared by 'synthesize' and 'report'

struct SynthesisRun {
  SynthesisResult result;
  std::optional<int> chi_cap;
  std::optional<long long> window;
  int initial_max_bond = 1;
  double capped_target_fidelity = 1.0;
};

std::optional<long long> locality_window_for(const RunConfig& c, int n) {
  if (c.chi_cap) return std::nullopt;
  if (c.locality_window) return c.locality_window;
  if (n > kLocalityThreshold) return kDefaultLocalityWindow;
  return std::nullopt;
}

SynthesisRun synthesize_target(const StateVector& sv, const RunConfig& c, double f,
                               std::function<void(const IterationInfo&)> hook = {}) {
  SynthesisRun r;
  r.window = locality_window_for(c, sv.num_qubits());
  r.chi_cap = c.chi_cap;
  if (r.window) r.chi_cap = locality_chi_cap(*r.window);

  TruncationOptions t;
  t.max_bond = r.chi_cap;
  const MatrixProductState exact = from_statevector(sv);
  const MatrixProductState mps = r.chi_cap ? compress(exact, t) : exact;
  r.initial_max_bond = exact.max_bond();
  if (r.chi_cap) r.capped_target_fidelity = std::norm(inner_product(exact, mps));

  SynthesisOptions opts;
  opts.target_fidelity = f;
  opts.max_layers = c.max_layers;
  opts.residual = t;
  opts.on_iteration = std::move(hook);
  r.result = synthesize(mps, opts);
  return r;
}

Json locality_json(const SynthesisRun& r, long long length) {
  if (!r.window) return nullptr;
  return {{"window", *r.window},
          {"chi_cap", *r.chi_cap},
          {"read_length", length},
          {"estimate_factor", static_cast<double>(length) / static_cast<double>(*r.window)}};
}

// ---------------------------------------------------------------------------
// Commands

int cmd_encode(const RunConfig& c, std::ostream& out) {
  const std::string& path = single_input(c);
  const auto reads = read_fasta_file(path);
  if (reads.empty()) throw ValidationError("'" + path + "' holds no FASTA records");
  const bool bin = wants(c, "bin", {"bin", "json"}, {"bin", "json"});
  const bool json = wants(c, "json", {"bin", "json"}, {"bin", "json"});
  std::set<std::string> used;
  for (std::size_t i = 0; i < reads.size(); ++i) {
    const GenomeRead& read = reads[i];
    const StateVector sv = encode_read(read, encoding(c));
    std::string stem = sanitize(read.id);
    if (!used.insert(stem).second) stem += "_" + std::to_string(i);
    Json meta = header(c, {path});
    meta["id"] = read.id;
    meta["L"] = read.length();
    meta["k"] = c.k;
    meta["n"] = sv.num_qubits();
    meta["position_qubits"] = position_qubits(read.length(), c.k) + c.extra_position_qubits;
    meta["chunks"] = chunk_count(read.length(), c.k);
    Json files = Json::array();
    if (bin) {
      io::write_file_atomic(out_path(c, stem + ".bin"), io::encode_statevector_binary(sv));
      files.push_back(stem + ".bin");
    }
    if (json) {
      write_json(out_path(c, stem + ".json"), io::to_json(sv));
      files.push_back(stem + ".json");
    }
    meta["files"] = files;
    write_json(out_path(c, stem + ".meta.json"), meta);
    out << read.id << ": L=" << read.length() << " n=" << sv.num_qubits() << "\n";
  }
  return kOk;
}

int cmd_synthesize(const RunConfig& c, std::ostream& out) {
  const std::string& path = single_input(c);
  wants(c, "json", {"json"}, {"json"});
  const Target t = load_target(path, c);
  const SynthesisRun r = synthesize_target(t.state, c, c.fidelity);
  const SynthesisResult& res = r.result;

  write_json(out_path(c, "circuit.json"), io::to_json(res.circuit));
  Json rep = header(c, {path});
  rep["n"] = t.state.num_qubits();
  rep["L"] = t.length;
  rep["initial_max_bond"] = r.initial_max_bond;
  rep["chi_cap"] = r.chi_cap ? Json(*r.chi_cap) : Json(nullptr);
  rep["capped_target_fidelity"] = r.capped_target_fidelity;
  rep["locality"] = locality_json(r, t.length);
  rep["target_fidelity"] = c.fidelity;
  rep["achieved_fidelity"] = res.circuit.achieved_fidelity;
  rep["synthesis"] = io::to_json(res.report);
  write_json(out_path(c, "synthesis.json"), rep);

  out << "layers=" << res.circuit.layers.size() << " gates=" << res.report.total_gates()
      << " fidelity=" << res.circuit.achieved_fidelity << (res.report.reached ? "" : " (unreached)")
      << "\n";
  return res.report.reached ? kOk : kUnreached;
}

int cmd_transpile(const RunConfig& c, std::ostream& out) {
  const std::string& path = single_input(c);
  const bool qasm = wants(c, "qasm", {"qasm", "json"}, {"qasm", "json"});
  const bool json = wants(c, "json", {"qasm", "json"}, {"qasm", "json"});
  const AnyCircuit any = load_circuit(path);
  const auto* layered = std::get_if<LayeredCircuit>(&any);
  if (!layered) throw ValidationError("'" + path + "' is not a layered circuit");
  TranspileOptions opts;
  opts.simplify = c.simplify;
  const NativeCircuit nc = transpile(*layered, opts);
  const GateStats s = gate_stats(nc);

  if (qasm) io::write_file_atomic(out_path(c, "circuit.qasm"), emit_qasm(nc));
  if (json) write_json(out_path(c, "native.json"), io::to_json(nc));
  Json rep = header(c, {path});
  rep["n"] = nc.num_qubits;
  rep["layers"] = layered->layers.size();
  long long pre = 0;
  for (const Layer& l : layered->layers) pre += static_cast<long long>(l.gates.size()) + 1;
  rep["gates_pre"] = pre;
  rep["stats"] = io::to_json(s);
  write_json(out_path(c, "stats.json"), rep);
  out << "gates=" << s.total << " cx=" << s.cx_count << " depth=" << s.depth << "\n";
  return kOk;
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const std::string& path = single_input(c);
  wants(c, "json", {"json"}, {"json"});
  if (c.shots < 0) throw UsageError("--shots must be non-negative");
  const AnyCircuit any = load_circuit(path);
  const StateVector state = std::visit([](const auto& circ) { return run(circ); }, any);

  std::vector<std::string> files = {path};
  if (!c.target.empty()) files.push_back(c.target);
  Json rep = header(c, files);
  rep["n"] = state.num_qubits();
  std::optional<double> requested;
  if (const auto* l = std::get_if<LayeredCircuit>(&any)) {
    requested = l->target_fidelity;
    rep["circuit_target_fidelity"] = l->target_fidelity;
    rep["circuit_achieved_fidelity"] = l->achieved_fidelity;
  }

  std::optional<StateVector> target;
  if (!c.target.empty()) {
    target = load_target(c.target, c).state;
    if (target->num_qubits() != state.num_qubits()) {
      throw ValidationError("target has " + std::to_string(target->num_qubits()) +
                            " qubits, circuit has " + std::to_string(state.num_qubits()));
    }
    rep["exact_fidelity"] = fidelity(*target, state);
  }
  rep["shots"] = c.shots;
  rep["seed"] = c.seed;
  if (c.shots > 0) {
    const ShotCounts counts = sample_shots(state, c.shots, c.seed);
    write_json(out_path(c, "counts.json"), io::to_json(counts));
    const StateVector quasi = quasi_statevector(counts);
    rep["quasi_fidelity_to_prepared"] = hardware_fidelity(state, quasi);
    if (target) rep["hardware_fidelity"] = hardware_fidelity(*target, quasi);
  }
  write_json(out_path(c, "simulation.json"), rep);

  if (target) {
    const double f = rep["exact_fidelity"].get<double>();
    out << "fidelity=" << f << "\n";
    if (requested && f < *requested - 1e-8) return kUnreached;
  } else {
    out << "simulated n=" << state.num_qubits() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// report

struct Row {
  std::string id;
  int n = 0;
  long long length = 0;
  std::optional<int> chi;
  std::optional<double> f_target, f_achieved;
  std::optional<long long> layers, gates_pre, gates_native, cx, depth;
  std::optional<double> error;
  bool unreached = false;
};

Row make_row(const GenomeRead& read, int n) {
  Row r;
  r.id = read.id;
  r.n = n;
  r.length = static_cast<long long>(read.length());
  return r;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

template <typename T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return fmt(*v);
  } else {
    return std::to_string(*v);
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string render_csv(const std::vector<Row>& rows) {
  std::string s = std::string(kCsvHeader) + "\n";
  for (const Row& r : rows) {
    s += csv_field(r.id) + "," + std::to_string(r.n) + "," + std::to_string(r.length) + "," +
         cell(r.chi) + "," + cell(r.f_target) + "," + cell(r.f_achieved) + "," + cell(r.layers) +
         "," + cell(r.gates_pre) + "," + cell(r.gates_native) + "," + cell(r.cx) + "," +
         cell(r.depth) + "," + cell(r.error) + "\n";
  }
  return s;
}

void fill_circuit(Row& row, const LayeredCircuit& circuit, double f, double achieved, bool reached,
                  bool simplify) {
  row.f_target = f;
  row.f_achieved = achieved;
  row.layers = static_cast<long long>(circuit.layers.size());
  long long pre = 0;
  for (const Layer& l : circuit.layers) pre += static_cast<long long>(l.gates.size()) + 1;
  row.gates_pre = pre;
  TranspileOptions opts;
  opts.simplify = simplify;
  const GateStats s = gate_stats(transpile(circuit, opts));
  row.gates_native = s.total;
  row.cx = s.cx_count;
  row.depth = s.depth;
  row.error = 1.0 - achieved;
  row.unreached = !reached;
}

Row synthesis_row(const GenomeRead& read, const RunConfig& c, double f) {
  const StateVector sv = encode_read(read, encoding(c));
  const SynthesisRun r = synthesize_target(sv, c, f);
  Row row = make_row(read, sv.num_qubits());
  row.chi = r.initial_max_bond;
  fill_circuit(row, r.result.circuit, f, r.result.circuit.achieved_fidelity, r.result.report.reached,
               c.simplify);
  return row;
}

std::vector<Row> chi_rows(const GenomeRead& read, const RunConfig& c) {
  const StateVector sv = encode_read(read, encoding(c));
  const MatrixProductState full = from_statevector(sv);
  std::vector<Row> rows;
  for (int chi = 1; chi <= full.max_bond(); ++chi) {
    Row row = make_row(read, sv.num_qubits());
    row.chi = chi;
    const double err = reconstruction_error(to_statevector(truncate(full, chi)), sv);
    row.error = err;
    row.f_achieved = 1.0 - err;
    rows.push_back(row);
  }
  return rows;
}

std::vector<Row> fidelity_rows(const GenomeRead& read, const RunConfig& c,
                               const std::vector<double>& fs) {
  const StateVector sv = encode_read(read, encoding(c));
  const double top = *std::max_element(fs.begin(), fs.end());
  std::vector<double> trace;
  const SynthesisRun r =
      synthesize_target(sv, c, top, [&](const IterationInfo& it) { trace.push_back(it.fidelity); });
  const LayeredCircuit& full = r.result.circuit;
  const int returned = r.result.report.returned_layers;

  std::vector<Row> rows;
  for (double f : fs) {
    Row row = make_row(read, sv.num_qubits());
    row.chi = r.initial_max_bond;
    int q = 0;
    while (q < returned && trace[q] < f) ++q;
    if (q < returned) {
      fill_circuit(row, circuit_prefix(full, q + 1), f, trace[q], true, c.simplify);
    } else {
      fill_circuit(row, full, f, full.achieved_fidelity, false, c.simplify);
    }
    rows.push_back(row);
  }
  return rows;
}

// Prefix lengths 2^j (multiples of k) below L, then L itself.
std::vector<std::size_t> length_grid(std::size_t length, int k) {
  std::vector<std::size_t> out;
  for (std::size_t l = 2; l < length; l *= 2) {
    const std::size_t m = l / k * k;
    if (m > 0 && (out.empty() || out.back() != m)) out.push_back(m);
  }
  if (out.empty() || out.back() != length) out.push_back(length);
  return out;
}

// Eight log-spaced read lengths for each qubit count reachable by the read.
std::vector<std::size_t> qubit_grid(std::size_t length, int k) {
  std::vector<std::size_t> out;
  const long long max_chunks = static_cast<long long>(length) / k;
  for (int p = 1; (1LL << (p - 1)) < max_chunks; ++p) {
    const long long lo = (1LL << (p - 1)) + 1;
    const long long hi = std::min(1LL << p, max_chunks);
    std::set<long long> chunks;
    for (int i = 0; i < 8; ++i) {
      const double t = i / 7.0;
      chunks.insert(std::llround(std::exp(std::log(static_cast<double>(lo)) * (1 - t) +
                                          std::log(static_cast<double>(hi)) * t)));
    }
    for (long long m : chunks) out.push_back(static_cast<std::size_t>(m * k));
  }
  return out;
}

GenomeRead prefix_read(const GenomeRead& read, std::size_t length) {
  return {read.id + ":" + std::to_string(length), read.bases.substr(0, length)};
}

using Task = std::function<std::vector<Row>()>;

std::vector<Row> run_tasks(const std::vector<Task>& tasks, int jobs) {
  std::vector<std::vector<Row>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::jthread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Row> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  return rows;
}

std::vector<std::string> corpus_files(const std::vector<std::string>& inputs) {
  static const std::set<std::string> kExt = {".fa", ".fasta", ".fna", ".fas"};
  std::vector<std::string> files;
  for (const std::string& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_regular_file() && kExt.count(e.path().extension().string())) {
          found.push_back(e.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(in)) {
      files.push_back(in);
    } else {
      throw ValidationError("input '" + in + "' does not exist");
    }
  }
  return files;
}

int cmd_report(const RunConfig& c, std::ostream& out) {
  if (c.inputs.empty()) throw UsageError("'report' needs at least one --input");
  wants(c, "csv", {"csv"}, {"csv"});
  const std::vector<std::string> sweeps = c.sweeps.empty() ? kAllSweeps : c.sweeps;
  const std::vector<double> fids = c.fidelities.empty() ? kDefaultFidelities : c.fidelities;
  for (double f : fids) {
    if (!(f > 0.0 && f <= 1.0)) throw UsageError("fidelity values must lie in (0, 1]");
  }

  const std::vector<std::string> files = corpus_files(c.inputs);
  std::vector<GenomeRead> reads;
  for (const std::string& f : files) {
    for (GenomeRead& r : read_fasta_file(f)) reads.push_back(std::move(r));
  }

  static const std::map<std::string, std::string> kFile = {
      {"chi", "error_vs_chi.csv"},
      {"length", "gates_vs_read_length.csv"},
      {"fidelity", "gates_vs_fidelity.csv"},
      {"qubits", "gates_vs_qubits.csv"},
  };
  Json rep = header(c, files);
  Json written = Json::object();
  bool unreached = false;
  for (const std::string& sweep : sweeps) {
    std::vector<Task> tasks;
    for (const GenomeRead& read : reads) {
      if (sweep == "chi") {
        tasks.push_back([&c, &read] { return chi_rows(read, c); });
      } else if (sweep == "fidelity") {
        tasks.push_back([&c, &read, &fids] { return fidelity_rows(read, c, fids); });
      } else {
        const auto grid =
            sweep == "length" ? length_grid(read.length(), c.k) : qubit_grid(read.length(), c.k);
        for (std::size_t l : grid) {
          tasks.push_back([&c, &read, l] {
            return std::vector<Row>{synthesis_row(prefix_read(read, l), c, c.fidelity)};
          });
        }
      }
    }
    const std::vector<Row> rows = run_tasks(tasks, c.jobs);
    for (const Row& r : rows) unreached = unreached || r.unreached;
    io::write_file_atomic(out_path(c, kFile.at(sweep)), render_csv(rows));
    written[kFile.at(sweep)] = rows.size();
    out << kFile.at(sweep) << ": " << rows.size() << " rows\n";
  }
  rep["reads"] = reads.size();
  rep["csv_rows"] = written;
  write_json(out_path(c, "report.json"), rep);
  return unreached ? kUnreached : kOk;
}

}  // namespace

int locality_chi_cap(long long window) {
  if (window < 1) throw UsageError("--locality-window must be positive");
  const int nl = ceil_log2(window) + 2;
  return 1 << (nl / 2);
}

std::string sha256_file(const std::string& path) {
  const std::string bytes = io::read_file(path);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw ResourceError("SHA-256 failed for '" + path + "'");
  }
  static const char* const kHex = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 15];
  }
  return hex;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Prepare genome-encoded quantum states with layered MPS circuits", "mpsforge"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.inputs, "Input file(s)")->required();
    sub->add_option("--out", cfg.out, "Output directory")->capture_default_str();
    sub->add_option("--format", cfg.formats, "Output formats")
        ->delimiter(',')
        ->check(CLI::IsMember({"json", "csv", "qasm", "bin"}));
  };
  auto add_encoding = [&](CLI::App* sub) {
    sub->add_option("--k", cfg.k, "k-mer length")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_flag(
        "--extra-position-qubit",
        [&](std::int64_t count) { cfg.extra_position_qubits = static_cast<int>(count); },
        "Pad the position register with one unused qubit (repeatable)");
  };
  auto add_synthesis = [&](CLI::App* sub) {
    sub->add_option("--fidelity", cfg.fidelity, "Target fidelity in (0, 1]")->capture_default_str();
    sub->add_option("--chi-cap", cfg.chi_cap, "Bond-dimension cap for target and residual")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-layers", cfg.max_layers, "Layer budget")->capture_default_str();
    sub->add_option("--locality-window", cfg.locality_window,
                    "Locality window l; applied by default when n > 24 (l = 70000)");
    sub->add_flag("--no-simplify", [&](std::int64_t) { cfg.simplify = false; },
                  "Skip the peephole pass when counting native gates");
  };

  CLI::App* encode = app.add_subcommand("encode", "Encode FASTA reads as statevectors");
  add_common(encode);
  add_encoding(encode);

  CLI::App* synth = app.add_subcommand("synthesize", "Build a layered circuit for a state");
  add_common(synth);
  add_encoding(synth);
  add_synthesis(synth);

  CLI::App* trans = app.add_subcommand("transpile", "Lower a layered circuit to {ry, rz, cx}");
  add_common(trans);
  trans->add_flag("--no-simplify", [&](std::int64_t) { cfg.simplify = false; },
                  "Skip the peephole pass");

  CLI::App* sim = app.add_subcommand("simulate", "Run a circuit and sample shots");
  add_common(sim);
  add_encoding(sim);
  sim->add_option("--target", cfg.target, "Reference statevector or FASTA file");
  sim->add_option("--shots", cfg.shots, "Number of shots (0: exact only)")->capture_default_str();
  sim->add_option("--seed", cfg.seed, "Sampler seed")->capture_default_str();

  CLI::App* report = app.add_subcommand("report", "Write sweep CSVs for a FASTA corpus");
  add_common(report);
  add_encoding(report);
  add_synthesis(report);
  report->add_option("--sweep", cfg.sweeps, "Sweeps to run")
      ->delimiter(',')
      ->check(CLI::IsMember(kAllSweeps));
  report->add_option("--fidelities", cfg.fidelities, "Fidelity grid for the fidelity sweep")
      ->delimiter(',');
  report->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    fs::create_directories(cfg.out);
    if (cfg.command == "encode") return cmd_encode(cfg, out);
    if (cfg.command == "synthesize") return cmd_synthesize(cfg, out);
    if (cfg.command == "transpile") return cmd_transpile(cfg, out);
    if (cfg.command == "simulate") return cmd_simulate(cfg, out);
    return cmd_report(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::kUsage: return kUsage;
      case ErrorKind::kValidation: return kInvalidInput;
      case ErrorKind::kResource: return kResourceLimit;
    }
    return kInvalidInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kResourceLimit;
  }
}

}  // namespace mpsforge::cli
