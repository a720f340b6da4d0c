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

#include "mpsforge/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpsforge/error.hpp"
#include "mpsforge/linalg.hpp"

namespace mpsforge {

namespace {

constexpr double kIsometryTolerance = 1e-8;

}  // namespace

Matrix unitary_completion(const Matrix& isometry, int site) {
  const Eigen::Index d = isometry.rows();
  const Eigen::Index m = isometry.cols();
  const std::string where =
      site >= 0 ? "site " + std::to_string(site) + ": " : std::string();
  if (m > d || d == 0) {
    throw ValidationError(where + "cannot complete a " + std::to_string(d) +
                          "x" + std::to_string(m) + " block to a unitary");
  }
  const double deviation = linalg::isometry_deviation(isometry);
  if (deviation > kIsometryTolerance) {
    throw ValidationError(where + "columns are not orthonormal (deviation " +
                          std::to_string(deviation) + ")");
  }
  Matrix u(d, d);
  u.leftCols(m) = isometry;
  if (m < d) {
    const linalg::Svd f = linalg::svd(isometry, /*full=*/true);
    u.rightCols(d - m) = f.u.rightCols(d - m);
  }
  return u;
}

Layer layer_from_mps(const MatrixProductState& mps) {
  const int n = mps.num_sites();
  if (mps.max_bond() > 2) {
    throw ValidationError("layer_from_mps needs bond dimension <= 2, got " +
                          std::to_string(mps.max_bond()));
  }
  Layer layer;
  layer.gates.reserve(static_cast<std::size_t>(n - 1));
  // Site k maps its right bond (carried on qubit k) to (left bond on qubit
  // k-1, physical index on qubit k).
  for (int k = n - 1; k >= 1; --k) {
    const SiteTensor& site = mps.site(k);
    Matrix v = Matrix::Zero(4, site.right_dim());
    for (int a = 0; a < site.left_dim(); ++a) {
      for (int s = 0; s < 2; ++s) v.row(2 * a + s) = site[s].row(a);
    }
    layer.gates.push_back(TwoQubitGate{k - 1, unitary_completion(v, k)});
  }
  const SiteTensor& first = mps.site(0);
  Matrix v(2, first.right_dim());
  v.row(0) = first[0].row(0);
  v.row(1) = first[1].row(0);
  layer.cap = SingleQubitGate{0, unitary_completion(v, 0)};
  return layer;
}

MatrixProductState apply_inverse_layer(const MatrixProductState& mps,
                                       const Layer& layer,
                                       const TruncationOptions& options) {
  const int n = mps.num_sites();
  const MatrixProductState canonical =
      mps.canonical_form() == CanonicalForm::kLeft ? mps : left_canonicalize(mps);
  std::vector<SiteTensor> sites(canonical.sites().begin(),
                                canonical.sites().end());

  if (layer.cap.qubit < 0 || layer.cap.qubit >= n) {
    throw ValidationError("cap qubit out of range: " +
                          std::to_string(layer.cap.qubit));
  }
  apply_one_site_gate(sites, layer.cap.qubit, layer.cap.u.adjoint());

  // Splits keep the left factor orthonormal, so a left-to-right sweep starting
  // at the cap's site leaves the whole chain left-canonical.
  bool sweep_ok = layer.cap.qubit == 0;
  int previous = -1;
  const TruncationOptions split{std::nullopt, options.cutoff};
  for (auto it = layer.gates.rbegin(); it != layer.gates.rend(); ++it) {
    if (it->qubit < 0 || it->qubit + 1 >= n) {
      throw ValidationError("gate qubit out of range: " +
                            std::to_string(it->qubit));
    }
    if (it->qubit != previous + 1) sweep_ok = false;
    previous = it->qubit;
    apply_two_site_gate(sites, it->qubit, it->u.adjoint(), split);
  }
  if (previous != n - 2) sweep_ok = false;

  MatrixProductState out(std::move(sites),
                         sweep_ok ? CanonicalForm::kLeft : CanonicalForm::kNone);
  if (options.max_bond) return compress(out, options);
  return sweep_ok ? out : left_canonicalize(out);
}

LayeredCircuit circuit_prefix(const LayeredCircuit& full, int generated_layers) {
  const int total = static_cast<int>(full.layers.size());
  if (generated_layers < 0 || generated_layers > total) {
    throw UsageError("prefix length " + std::to_string(generated_layers) +
                     " out of range 0.." + std::to_string(total));
  }
  LayeredCircuit out;
  out.num_qubits = full.num_qubits;
  out.target_fidelity = full.target_fidelity;
  // Application order is reverse generation order, so the first generated
  // layers are the trailing entries.
  out.layers.assign(full.layers.end() - generated_layers, full.layers.end());
  return out;
}

SynthesisResult synthesize(const MatrixProductState& target,
                           const SynthesisOptions& options) {
  const double f = options.target_fidelity;
  if (!(f > 0.0) || f > 1.0) {
    throw UsageError("target fidelity must lie in (0, 1], got " +
                     std::to_string(f));
  }
  if (options.max_layers < 1) throw UsageError("max_layers must be at least 1");
  const double nrm = norm(target);
  if (std::abs(nrm - 1.0) > 1e-10) {
    throw ValidationError("synthesis target is not normalized (norm = " +
                          std::to_string(nrm) + ")");
  }

  MatrixProductState residual =
      options.residual.max_bond ? compress(target, options.residual)
      : target.canonical_form() == CanonicalForm::kLeft
          ? target
          : left_canonicalize(target);

  const int n = target.num_sites();
  std::vector<Layer> generated;
  SynthesisReport report;
  int best = 0;
  double best_fidelity = -1.0;
  while (static_cast<int>(generated.size()) < options.max_layers) {
    const MatrixProductState approx = truncate(residual, 2);
    generated.push_back(layer_from_mps(approx));
    residual = apply_inverse_layer(residual, generated.back(), options.residual);

    const double fid = std::min(1.0, std::norm(overlap_with_zero(residual)));
    report.fidelity_trace.push_back(fid);
    report.residual_max_bond.push_back(residual.max_bond());
    const int count = static_cast<int>(generated.size());
    if (fid > best_fidelity) {
      best_fidelity = fid;
      best = count;
    }
    if (options.on_iteration) {
      options.on_iteration(IterationInfo{count, fid, residual.max_bond()});
    }
    if (fid >= f) {
      report.reached = true;
      best = count;
      best_fidelity = fid;
      break;
    }
  }
  report.iterations = static_cast<int>(generated.size());
  report.returned_layers = best;
  report.two_qubit_gates = static_cast<long long>(best) * (n - 1);
  report.single_qubit_gates = best;

  SynthesisResult result;
  result.circuit.num_qubits = n;
  result.circuit.target_fidelity = f;
  result.circuit.achieved_fidelity = best_fidelity;
  result.circuit.layers.assign(std::make_reverse_iterator(generated.begin() + best),
                               generated.rend());
  result.report = std::move(report);
  return result;
}

SynthesisResult synthesize(const StateVector& target,
                           const SynthesisOptions& options) {
  return synthesize(from_statevector(target), options);
}

double epsilon_from_delta(double delta) {
  if (!(delta >= 0.0) || delta > 1.0) {
    throw UsageError("delta must lie in [0, 1], got " + std::to_string(delta));
  }
  // 1 - sqrt(1 - d^2) rewritten as d^2 / (1 + sqrt(1 - d^2)) to avoid
  // cancellation at small d.
  return delta * std::sqrt(2.0 / (1.0 + std::sqrt(1.0 - delta * delta)));
}

double predicted_gate_count(int num_qubits, int max_bond) {
  if (num_qubits < 1 || max_bond < 1) {
    throw UsageError("predicted_gate_count needs n >= 1 and chi >= 1");
  }
  return static_cast<double>(num_qubits) * max_bond * max_bond;
}

double predicted_gate_count_for_epsilon(int num_qubits, double epsilon) {
  if (num_qubits < 1 || !(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw UsageError("predicted_gate_count needs n >= 1 and 0 < epsilon < 1");
  }
  const double bits = std::log2(1.0 / epsilon);
  return num_qubits * bits * bits;
}

}  // namespace mpsforge
