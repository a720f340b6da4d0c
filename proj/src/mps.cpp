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

#include "mpsforge/mps.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <string>

#include "mpsforge/config.hpp"
#include "mpsforge/error.hpp"

namespace mpsforge {

// ---------------------------------------------------------------------------
// SiteTensor

SiteTensor::SiteTensor(Matrix a0, Matrix a1) : a_{std::move(a0), std::move(a1)} {
  if (a_[0].rows() != a_[1].rows() || a_[0].cols() != a_[1].cols()) {
    throw ValidationError("site tensor slices have different shapes");
  }
  if (a_[0].rows() < 1 || a_[0].cols() < 1) {
    throw ValidationError("site tensor bond dimensions must be positive");
  }
}

Matrix SiteTensor::left_grouped() const {
  const Eigen::Index l = a_[0].rows();
  Matrix m(2 * l, a_[0].cols());
  m.topRows(l) = a_[0];
  m.bottomRows(l) = a_[1];
  return m;
}

Matrix SiteTensor::right_grouped() const {
  const Eigen::Index r = a_[0].cols();
  Matrix m(a_[0].rows(), 2 * r);
  m.leftCols(r) = a_[0];
  m.rightCols(r) = a_[1];
  return m;
}

SiteTensor SiteTensor::from_left_grouped(const Matrix& m, int left) {
  return SiteTensor(m.topRows(left), m.middleRows(left, left));
}

SiteTensor SiteTensor::from_right_grouped(const Matrix& m, int right) {
  return SiteTensor(m.leftCols(right), m.middleCols(right, right));
}

// ---------------------------------------------------------------------------
// MatrixProductState

MatrixProductState::MatrixProductState(std::vector<SiteTensor> sites,
                                       CanonicalForm form)
    : sites_(std::move(sites)), form_(form) {
  if (sites_.empty()) throw ValidationError("an MPS needs at least one site");
  if (sites_.front().left_dim() != 1 || sites_.back().right_dim() != 1) {
    throw ValidationError("MPS boundary bond dimensions must be 1");
  }
  for (std::size_t i = 0; i + 1 < sites_.size(); ++i) {
    if (sites_[i].right_dim() != sites_[i + 1].left_dim()) {
      throw ValidationError("bond mismatch between sites " + std::to_string(i) +
                            " and " + std::to_string(i + 1) + ": " +
                            std::to_string(sites_[i].right_dim()) + " vs " +
                            std::to_string(sites_[i + 1].left_dim()));
    }
  }
}

MatrixProductState MatrixProductState::zero_state(int num_sites) {
  if (num_sites < 1) throw ValidationError("an MPS needs at least one site");
  std::vector<SiteTensor> sites(static_cast<std::size_t>(num_sites));
  return MatrixProductState(std::move(sites), CanonicalForm::kLeft);
}

std::vector<int> MatrixProductState::bond_dims() const {
  std::vector<int> bonds;
  bonds.reserve(sites_.size() - 1);
  for (std::size_t i = 0; i + 1 < sites_.size(); ++i) {
    bonds.push_back(sites_[i].right_dim());
  }
  return bonds;
}

int MatrixProductState::max_bond() const {
  int best = 1;
  for (int b : bond_dims()) best = std::max(best, b);
  return best;
}

// ---------------------------------------------------------------------------
// Conversions

MatrixProductState from_statevector(const StateVector& state,
                                    const TruncationOptions& options) {
  const int n = state.num_qubits();
  if (n < 1) throw ValidationError("from_statevector: need at least one qubit");
  state.require_normalized("from_statevector", 1e-10);
  if (options.max_bond && *options.max_bond < 1) {
    throw UsageError("bond cap must be at least 1");
  }

  std::vector<SiteTensor> sites;
  sites.reserve(static_cast<std::size_t>(n));
  // rest: left-bond x (remaining physical indices), first remaining qubit most
  // significant in the column index.
  Matrix rest = Eigen::Map<const Matrix>(state.amplitudes().data(), 1,
                                         static_cast<Eigen::Index>(state.size()));
  bool truncated = false;
  for (int i = 0; i + 1 < n; ++i) {
    const Eigen::Index left = rest.rows();
    const Eigen::Index tail = rest.cols() / 2;
    Matrix grouped(2 * left, tail);
    grouped.topRows(left) = rest.leftCols(tail);
    grouped.bottomRows(left) = rest.rightCols(tail);
    rest.resize(0, 0);

    linalg::Svd f = linalg::svd(grouped);
    const Eigen::Index keep =
        linalg::retained_rank(f.s, options.cutoff, options.max_bond);
    if (keep < f.s.size() && f.s.tail(f.s.size() - keep).squaredNorm() > 0.0) {
      truncated = true;
    }
    sites.push_back(SiteTensor::from_left_grouped(f.u.leftCols(keep),
                                                  static_cast<int>(left)));
    rest = f.s.head(keep).asDiagonal() * f.vh.topRows(keep);
  }
  if (truncated) {
    const double nrm = rest.norm();
    if (nrm == 0.0) throw ValidationError("truncation removed the whole state");
    rest /= nrm;
  }
  sites.push_back(SiteTensor::from_right_grouped(rest, 1));
  return MatrixProductState(std::move(sites), CanonicalForm::kLeft);
}

StateVector to_statevector(const MatrixProductState& mps) {
  const int n = mps.num_sites();
  check_simulable(n, "to_statevector");
  // Rows enumerate the physical indices contracted so far (first site most
  // significant); columns are the open right bond.
  Matrix acc = Matrix::Ones(1, 1);
  for (const SiteTensor& site : mps.sites()) {
    const Matrix p0 = acc * site[0];
    const Matrix p1 = acc * site[1];
    Matrix next(2 * acc.rows(), site.right_dim());
    for (Eigen::Index r = 0; r < acc.rows(); ++r) {
      next.row(2 * r) = p0.row(r);
      next.row(2 * r + 1) = p1.row(r);
    }
    acc = std::move(next);
  }
  std::vector<Complex> amps(acc.data(), acc.data() + acc.size());
  return StateVector(n, std::move(amps));
}

MatrixProductState left_canonicalize(const MatrixProductState& mps) {
  std::vector<SiteTensor> sites(mps.sites().begin(), mps.sites().end());
  for (std::size_t i = 0; i + 1 < sites.size(); ++i) {
    const Matrix grouped = sites[i].left_grouped();
    const Eigen::Index rows = grouped.rows();
    const Eigen::Index keep = std::min(rows, grouped.cols());
    Eigen::HouseholderQR<Matrix> qr(grouped);
    const Matrix q = qr.householderQ() * Matrix::Identity(rows, keep);
    const Matrix r =
        qr.matrixQR().topRows(keep).triangularView<Eigen::Upper>();
    sites[i] = SiteTensor::from_left_grouped(q, sites[i].left_dim());
    SiteTensor& next = sites[i + 1];
    next = SiteTensor(r * next[0], r * next[1]);
  }
  return MatrixProductState(std::move(sites), CanonicalForm::kLeft);
}

MatrixProductState compress(const MatrixProductState& mps,
                            const TruncationOptions& options) {
  if (options.max_bond && *options.max_bond < 1) {
    throw UsageError("bond cap must be at least 1, got " +
                     std::to_string(*options.max_bond));
  }
  const MatrixProductState canonical =
      mps.canonical_form() == CanonicalForm::kLeft ? mps : left_canonicalize(mps);
  std::vector<SiteTensor> sites(canonical.sites().begin(),
                                canonical.sites().end());

  // With sites 0..i-1 left-orthonormal and i+1.. right-orthonormal, the
  // singular values of site i (right-grouped) are the Schmidt coefficients.
  for (std::size_t i = sites.size() - 1; i > 0; --i) {
    const int right = sites[i].right_dim();
    linalg::Svd f = linalg::svd(sites[i].right_grouped());
    const Eigen::Index keep =
        linalg::retained_rank(f.s, options.cutoff, options.max_bond);
    sites[i] = SiteTensor::from_right_grouped(f.vh.topRows(keep), right);
    const Matrix us = f.u.leftCols(keep) * f.s.head(keep).asDiagonal();
    SiteTensor& prev = sites[i - 1];
    prev = SiteTensor(prev[0] * us, prev[1] * us);
  }
  const double nrm = sites[0].left_grouped().norm();
  if (nrm == 0.0) throw ValidationError("cannot compress a zero MPS");
  sites[0] = SiteTensor(sites[0][0] / nrm, sites[0][1] / nrm);

  return left_canonicalize(MatrixProductState(std::move(sites), CanonicalForm::kNone));
}

MatrixProductState truncate(const MatrixProductState& mps, int max_bond) {
  if (max_bond < 1) {
    throw UsageError("truncation bond must be at least 1, got " +
                     std::to_string(max_bond));
  }
  return compress(mps, TruncationOptions{max_bond, 1e-14});
}

// ---------------------------------------------------------------------------
// Diagnostics

BondProfile bond_profile(const MatrixProductState& mps) {
  BondProfile profile;
  profile.bonds = mps.bond_dims();
  profile.max_bond = mps.max_bond();
  return profile;
}

double left_canonical_deviation(const MatrixProductState& mps) {
  double worst = 0.0;
  for (const SiteTensor& site : mps.sites()) {
    worst = std::max(worst, linalg::isometry_deviation(site.left_grouped()));
  }
  return worst;
}

bool is_left_canonical(const MatrixProductState& mps, double tol) {
  return left_canonical_deviation(mps) <= tol;
}

Complex overlap_with_zero(const MatrixProductState& mps) {
  Matrix acc = Matrix::Ones(1, 1);
  for (const SiteTensor& site : mps.sites()) acc = acc * site[0];
  return acc(0, 0);
}

Complex inner_product(const MatrixProductState& a, const MatrixProductState& b) {
  if (a.num_sites() != b.num_sites()) {
    throw ValidationError("dimension mismatch: " + std::to_string(a.num_sites()) +
                          " vs " + std::to_string(b.num_sites()) + " sites");
  }
  Matrix env = Matrix::Ones(1, 1);  // (bond of a) x (bond of b)
  for (int i = 0; i < a.num_sites(); ++i) {
    const SiteTensor& x = a.site(i);
    const SiteTensor& y = b.site(i);
    env = x[0].adjoint() * env * y[0] + x[1].adjoint() * env * y[1];
  }
  return env(0, 0);
}

double norm(const MatrixProductState& mps) {
  return std::sqrt(std::max(0.0, inner_product(mps, mps).real()));
}

long long schmidt_bound(int num_sites, int bond) {
  const int left = bond - 1;
  const int right = num_sites - bond + 1;
  const int bits = std::min(left, right);
  return bits >= 62 ? (1LL << 62) : (1LL << bits);
}

// ---------------------------------------------------------------------------
// Gate application

void apply_one_site_gate(std::vector<SiteTensor>& sites, int i,
                         const Matrix& gate) {
  SiteTensor& s = sites.at(static_cast<std::size_t>(i));
  Matrix a0 = gate(0, 0) * s[0] + gate(0, 1) * s[1];
  Matrix a1 = gate(1, 0) * s[0] + gate(1, 1) * s[1];
  s = SiteTensor(std::move(a0), std::move(a1));
}

void apply_two_site_gate(std::vector<SiteTensor>& sites, int i,
                         const Matrix& gate, const TruncationOptions& options) {
  if (i < 0 || static_cast<std::size_t>(i) + 1 >= sites.size()) {
    throw UsageError("two-site gate position out of range: " + std::to_string(i));
  }
  const SiteTensor& x = sites[static_cast<std::size_t>(i)];
  const SiteTensor& y = sites[static_cast<std::size_t>(i) + 1];
  const Eigen::Index l = x.left_dim();
  const Eigen::Index r = y.right_dim();

  std::array<Matrix, 4> theta;
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) theta[2 * s1 + s2] = x[s1] * y[s2];
  }
  Matrix grouped(2 * l, 2 * r);
  for (int out = 0; out < 4; ++out) {
    auto block = grouped.block((out >> 1) * l, (out & 1) * r, l, r);
    block.setZero();
    for (int in = 0; in < 4; ++in) {
      if (gate(out, in) != Complex(0.0, 0.0)) block += gate(out, in) * theta[in];
    }
  }

  linalg::Svd f = linalg::svd(grouped);
  const Eigen::Index keep =
      linalg::retained_rank(f.s, options.cutoff, options.max_bond);
  const Matrix right = f.s.head(keep).asDiagonal() * f.vh.topRows(keep);
  sites[static_cast<std::size_t>(i)] =
      SiteTensor::from_left_grouped(f.u.leftCols(keep), static_cast<int>(l));
  sites[static_cast<std::size_t>(i) + 1] =
      SiteTensor::from_right_grouped(right, static_cast<int>(r));
}

}  // namespace mpsforge
