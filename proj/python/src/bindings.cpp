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

// Low-level bindings. Circuits cross the boundary as JSON text; the Python
// package turns them into dicts.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "mpsforge/config.hpp"
#include "mpsforge/error.hpp"
#include "mpsforge/genome.hpp"
#include "mpsforge/io.hpp"
#include "mpsforge/mps.hpp"
#include "mpsforge/simulator.hpp"
#include "mpsforge/synthesis.hpp"
#include "mpsforge/transpiler.hpp"

namespace py = pybind11;
using namespace mpsforge;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

StateVector to_state(const ComplexArray& a) {
  if (a.ndim() != 1) throw UsageError("amplitudes must be a 1-d array");
  const auto size = static_cast<std::size_t>(a.size());
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  if ((std::size_t{1} << n) != size) throw ValidationError("amplitude count must be a power of two");
  return StateVector(n, std::vector<Complex>(a.data(), a.data() + size));
}

ComplexArray to_array(const StateVector& s) {
  ComplexArray out(static_cast<py::ssize_t>(s.size()));
  std::copy(s.amplitudes().begin(), s.amplitudes().end(), out.mutable_data());
  return out;
}

NativeCircuit native_from_text(const std::string& text) {
  const io::Json j = io::Json::parse(text);
  if (j.contains("layers")) return transpile(io::layered_circuit_from_json(j));
  return io::native_circuit_from_json(j);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "mpsforge native core";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

  m.def("parse_fasta", [](const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    for (GenomeRead& r : parse_fasta(text)) out.emplace_back(std::move(r.id), std::move(r.bases));
    return out;
  });
  m.def("qubit_count", &qubit_count, py::arg("length"), py::arg("k") = 1);
  m.def(
      "encode",
      [](const std::string& bases, int k, int extra) {
        EncodingParams p;
        p.k = k;
        p.extra_position_qubits = extra;
        return to_array(encode_read({"read", bases}, p));
      },
      py::arg("bases"), py::arg("k") = 1, py::arg("extra_position_qubits") = 0);
  m.def("bond_dims", [](const ComplexArray& a) { return from_statevector(to_state(a)).bond_dims(); });
  m.def(
      "truncation_error",
      [](const ComplexArray& a, int chi) {
        const StateVector s = to_state(a);
        return reconstruction_error(to_statevector(truncate(from_statevector(s), chi)), s);
      },
      py::arg("amplitudes"), py::arg("chi"));
  m.def(
      "synthesize",
      [](const ComplexArray& a, double f, int max_layers, std::optional<int> chi_cap) {
        SynthesisOptions opts;
        opts.target_fidelity = f;
        opts.max_layers = max_layers;
        opts.residual.max_bond = chi_cap;
        SynthesisResult r;
        {
          const StateVector s = to_state(a);
          py::gil_scoped_release release;
          r = synthesize(s, opts);
        }
        return std::make_pair(io::to_json(r.circuit).dump(), io::to_json(r.report).dump());
      },
      py::arg("amplitudes"), py::arg("fidelity") = 0.99, py::arg("max_layers") = 200,
      py::arg("chi_cap") = std::nullopt);
  m.def(
      "transpile",
      [](const std::string& circuit, bool simplify) {
        TranspileOptions o;
        o.simplify = simplify;
        const NativeCircuit nc =
            transpile(io::layered_circuit_from_json(io::Json::parse(circuit)), o);
        return std::make_pair(io::to_json(nc).dump(), io::to_json(gate_stats(nc)).dump());
      },
      py::arg("circuit"), py::arg("simplify") = true);
  m.def("emit_qasm", [](const std::string& circuit) { return emit_qasm(native_from_text(circuit)); });
  m.def("parse_qasm", [](const std::string& text) { return io::to_json(parse_qasm(text)).dump(); });
  m.def("run", [](const std::string& circuit) {
    const io::Json j = io::Json::parse(circuit);
    if (j.contains("layers")) return to_array(run(io::layered_circuit_from_json(j)));
    return to_array(run(io::native_circuit_from_json(j)));
  });
  m.def("run_qasm", [](const std::string& text) { return to_array(run(parse_qasm(text))); });
  m.def(
      "sample_shots",
      [](const ComplexArray& a, long long shots, unsigned long long seed) {
        return sample_shots(to_state(a), shots, seed).counts;
      },
      py::arg("amplitudes"), py::arg("shots"), py::arg("seed") = 1);
  m.def("fidelity", [](const ComplexArray& a, const ComplexArray& b) {
    return fidelity(to_state(a), to_state(b));
  });
  m.def("epsilon_from_delta", &epsilon_from_delta, py::arg("delta"));
}
