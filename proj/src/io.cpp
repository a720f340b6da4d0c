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

#include "mpsforge/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "mpsforge/config.hpp"
#include "mpsforge/error.hpp"

namespace mpsforge::io {

namespace {

constexpr char kMagic[8] = {'M', 'P', 'S', 'F', 'S', 'V', '1', '\0'};

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError(what + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(what + ": missing field '" + key + "'");
  }
  return j.at(key);
}

int int_field(const Json& j, const char* key, const std::string& what) {
  const Json& v = field(j, key, what);
  if (!v.is_number_integer()) {
    throw ValidationError(what + ": field '" + key + "' must be an integer");
  }
  return v.get<int>();
}

double number_field(const Json& j, const char* key, const std::string& what) {
  const Json& v = field(j, key, what);
  if (!v.is_number()) {
    throw ValidationError(what + ": field '" + key + "' must be a number");
  }
  return v.get<double>();
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_u64(const std::string& in, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) {
    v = (v << 8) | static_cast<unsigned char>(in[at + static_cast<std::size_t>(i)]);
  }
  return v;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw ValidationError(what + ": expected a non-empty list of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError(what + ": ragged matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], what);
    }
  }
  return m;
}

Json to_json(const StateVector& state) {
  Json amps = Json::array();
  for (Complex z : state.amplitudes()) amps.push_back(complex_to_json(z));
  return Json{{"n", state.num_qubits()}, {"amplitudes", std::move(amps)}};
}

StateVector statevector_from_json(const Json& j) {
  const std::string what = "statevector";
  const int n = int_field(j, "n", what);
  if (n < 0 || n > 62) throw ValidationError(what + ": invalid qubit count");
  check_simulable(n, what);
  const Json& amps = field(j, "amplitudes", what);
  if (!amps.is_array() || amps.size() != (std::size_t{1} << n)) {
    throw ValidationError(what + ": expected 2^n amplitudes");
  }
  std::vector<Complex> v;
  v.reserve(amps.size());
  for (const Json& a : amps) v.push_back(complex_from_json(a, what));
  return StateVector(n, std::move(v));
}

Json to_json(const MatrixProductState& mps) {
  Json sites = Json::array();
  for (const SiteTensor& s : mps.sites()) {
    Json data = Json::array();
    for (int a = 0; a < s.left_dim(); ++a) {
      for (int p = 0; p < 2; ++p) {
        for (int b = 0; b < s.right_dim(); ++b) data.push_back(complex_to_json(s.at(a, p, b)));
      }
    }
    sites.push_back(Json{{"shape", {s.left_dim(), 2, s.right_dim()}},
                         {"data", std::move(data)}});
  }
  return Json{{"n", mps.num_sites()},
              {"bonds", mps.bond_dims()},
              {"canonical", mps.canonical_form() == CanonicalForm::kLeft ? "left" : "none"},
              {"sites", std::move(sites)}};
}

MatrixProductState mps_from_json(const Json& j) {
  const std::string what = "mps";
  const int n = int_field(j, "n", what);
  const Json& sites_json = field(j, "sites", what);
  if (!sites_json.is_array() || static_cast<int>(sites_json.size()) != n || n < 1) {
    throw ValidationError(what + ": expected n >= 1 sites");
  }
  std::vector<SiteTensor> sites;
  for (const Json& s : sites_json) {
    const Json& shape = field(s, "shape", what);
    if (!shape.is_array() || shape.size() != 3 || shape[1] != 2) {
      throw ValidationError(what + ": site shape must be [l, 2, r]");
    }
    const int l = shape[0].get<int>();
    const int r = shape[2].get<int>();
    if (l < 1 || r < 1) throw ValidationError(what + ": bond dimensions must be positive");
    const Json& data = field(s, "data", what);
    if (!data.is_array() || data.size() != static_cast<std::size_t>(l) * 2 * r) {
      throw ValidationError(what + ": site data size does not match shape");
    }
    Matrix a0(l, r), a1(l, r);
    std::size_t k = 0;
    for (int a = 0; a < l; ++a) {
      for (int p = 0; p < 2; ++p) {
        for (int b = 0; b < r; ++b) (p == 0 ? a0 : a1)(a, b) = complex_from_json(data[k++], what);
      }
    }
    sites.emplace_back(std::move(a0), std::move(a1));
  }
  const bool left = j.value("canonical", std::string("none")) == "left";
  return MatrixProductState(std::move(sites), left ? CanonicalForm::kLeft : CanonicalForm::kNone);
}

Json to_json(const LayeredCircuit& circuit) {
  Json layers = Json::array();
  for (const Layer& layer : circuit.layers) {
    Json gates = Json::array();
    for (const TwoQubitGate& g : layer.gates) {
      gates.push_back(Json{{"q", {g.qubit, g.qubit + 1}}, {"u", matrix_to_json(g.u)}});
    }
    layers.push_back(Json{{"gates", std::move(gates)},
                          {"cap", {{"q", layer.cap.qubit}, {"u", matrix_to_json(layer.cap.u)}}}});
  }
  return Json{{"n", circuit.num_qubits},
              {"f", circuit.target_fidelity},
              {"achieved_fidelity", circuit.achieved_fidelity},
              {"layers", std::move(layers)}};
}

LayeredCircuit layered_circuit_from_json(const Json& j) {
  const std::string what = "layered circuit";
  LayeredCircuit c;
  c.num_qubits = int_field(j, "n", what);
  if (c.num_qubits < 1) throw ValidationError(what + ": n must be positive");
  c.target_fidelity = j.value("f", 1.0);
  c.achieved_fidelity = j.value("achieved_fidelity", 0.0);
  const Json& layers = field(j, "layers", what);
  if (!layers.is_array()) throw ValidationError(what + ": layers must be a list");
  for (const Json& lj : layers) {
    Layer layer;
    for (const Json& gj : field(lj, "gates", what)) {
      const Json& q = field(gj, "q", what);
      if (!q.is_array() || q.size() != 2 || q[1].get<int>() != q[0].get<int>() + 1) {
        throw ValidationError(what + ": gates must act on adjacent qubits [i, i+1]");
      }
      TwoQubitGate g{q[0].get<int>(), matrix_from_json(field(gj, "u", what), what)};
      if (g.u.rows() != 4 || g.u.cols() != 4) throw ValidationError(what + ": gate must be 4x4");
      layer.gates.push_back(std::move(g));
    }
    const Json& cap = field(lj, "cap", what);
    layer.cap.qubit = int_field(cap, "q", what);
    layer.cap.u = matrix_from_json(field(cap, "u", what), what);
    if (layer.cap.u.rows() != 2 || layer.cap.u.cols() != 2) {
      throw ValidationError(what + ": cap must be 2x2");
    }
    c.layers.push_back(std::move(layer));
  }
  return c;
}

Json to_json(const NativeCircuit& circuit) {
  Json gates = Json::array();
  for (const NativeGate& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::kCx:
        gates.push_back(Json{{"op", "cx"}, {"q", {g.qubit, g.target}}});
        break;
      case GateKind::kRy:
        gates.push_back(Json{{"op", "ry"}, {"q", g.qubit}, {"theta", g.angle}});
        break;
      case GateKind::kRz:
        gates.push_back(Json{{"op", "rz"}, {"q", g.qubit}, {"theta", g.angle}});
        break;
    }
  }
  return Json{{"n", circuit.num_qubits},
              {"global_phase", circuit.global_phase},
              {"gates", std::move(gates)}};
}

NativeCircuit native_circuit_from_json(const Json& j) {
  const std::string what = "native circuit";
  NativeCircuit c;
  c.num_qubits = int_field(j, "n", what);
  c.global_phase = j.value("global_phase", 0.0);
  for (const Json& g : field(j, "gates", what)) {
    const std::string op = field(g, "op", what).get<std::string>();
    if (op == "cx") {
      const Json& q = field(g, "q", what);
      if (!q.is_array() || q.size() != 2) throw ValidationError(what + ": cx needs [control, target]");
      c.gates.push_back(NativeGate::cx(q[0].get<int>(), q[1].get<int>()));
    } else if (op == "ry" || op == "rz") {
      const int q = int_field(g, "q", what);
      const double t = number_field(g, "theta", what);
      c.gates.push_back(op == "ry" ? NativeGate::ry(q, t) : NativeGate::rz(q, t));
    } else {
      throw ValidationError(what + ": unknown op '" + op + "'");
    }
  }
  return c;
}

Json to_json(const GateStats& s) {
  return Json{{"cx_count", s.cx_count},     {"ry_count", s.ry_count},
              {"rz_count", s.rz_count},     {"rotation_count", s.rotation_count},
              {"total", s.total},           {"depth", s.depth}};
}

Json to_json(const SynthesisReport& r) {
  return Json{{"iterations", r.iterations},
              {"reached", r.reached},
              {"returned_layers", r.returned_layers},
              {"fidelity_trace", r.fidelity_trace},
              {"residual_max_bond", r.residual_max_bond},
              {"two_qubit_gates", r.two_qubit_gates},
              {"single_qubit_gates", r.single_qubit_gates},
              {"gates_pre_transpile", r.total_gates()}};
}

Json to_json(const ShotCounts& counts) {
  Json c = Json::object();
  for (const auto& [k, v] : counts.counts) c[k] = v;
  return Json{{"n", counts.num_qubits}, {"shots", counts.shots}, {"counts", std::move(c)}};
}

ShotCounts shot_counts_from_json(const Json& j) {
  const std::string what = "shot counts";
  ShotCounts out;
  out.num_qubits = int_field(j, "n", what);
  out.shots = j.value("shots", 0LL);
  const Json& c = field(j, "counts", what);
  if (!c.is_object()) throw ValidationError(what + ": counts must be an object");
  for (const auto& [k, v] : c.items()) {
    if (!v.is_number_integer()) throw ValidationError(what + ": counts must be integers");
    out.counts[k] = v.get<long long>();
  }
  return out;
}

std::string encode_statevector_binary(const StateVector& state) {
  std::string out(kMagic, sizeof kMagic);
  put_u64(out, static_cast<std::uint64_t>(state.num_qubits()));
  out.reserve(out.size() + 16 * state.size());
  for (Complex z : state.amplitudes()) {
    put_u64(out, std::bit_cast<std::uint64_t>(z.real()));
    put_u64(out, std::bit_cast<std::uint64_t>(z.imag()));
  }
  return out;
}

StateVector decode_statevector_binary(const std::string& bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw ValidationError("binary statevector: bad header");
  }
  const std::uint64_t n = get_u64(bytes, 8);
  if (n > 62) throw ValidationError("binary statevector: invalid qubit count");
  check_simulable(static_cast<int>(n), "binary statevector");
  const std::size_t dim = std::size_t{1} << n;
  if (bytes.size() != 16 + 16 * dim) {
    throw ValidationError("binary statevector: expected " + std::to_string(16 + 16 * dim) +
                          " bytes, got " + std::to_string(bytes.size()));
  }
  std::vector<Complex> amps(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    amps[i] = {std::bit_cast<double>(get_u64(bytes, 16 + 16 * i)),
               std::bit_cast<double>(get_u64(bytes, 24 + 16 * i))};
  }
  return StateVector(static_cast<int>(n), std::move(amps));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ResourceError("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target, ec);
  if (ec) throw ResourceError("cannot move '" + tmp.string() + "' into place: " + ec.message());
}

StateVector read_statevector_file(const std::string& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() >= sizeof kMagic && std::memcmp(bytes.data(), kMagic, sizeof kMagic) == 0) {
    return decode_statevector_binary(bytes);
  }
  try {
    return statevector_from_json(Json::parse(bytes));
  } catch (const Json::exception& e) {
    throw ValidationError("'" + path + "' is neither a binary nor a JSON statevector: " +
                          e.what());
  }
}

}  // namespace mpsforge::io
