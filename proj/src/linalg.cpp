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

#include "mpsforge/linalg.hpp"

#include <algorithm>
#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/SVD>

namespace mpsforge::linalg {

namespace {

// Eigen fallback for the rare inputs on which zgesdd reports non-convergence.
Svd jacobi_svd(const Matrix& m, bool full) {
  const unsigned opts = full ? (Eigen::ComputeFullU | Eigen::ComputeFullV)
                             : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::JacobiSVD<Matrix> solver(m, opts);
  return Svd{solver.matrixU(), solver.singularValues(),
             solver.matrixV().adjoint()};
}

Svd lapack_svd(const Matrix& m, bool full) {
  const lapack_int rows = static_cast<lapack_int>(m.rows());
  const lapack_int cols = static_cast<lapack_int>(m.cols());
  const lapack_int r = std::min(rows, cols);
  Matrix a = m;
  Svd out;
  out.s.resize(r);
  out.u.resize(rows, full ? rows : r);
  out.vh.resize(full ? cols : r, cols);
  const lapack_int info = LAPACKE_zgesdd(
      LAPACK_COL_MAJOR, full ? 'A' : 'S', rows, cols, a.data(), rows,
      out.s.data(), out.u.data(), rows, out.vh.data(),
      static_cast<lapack_int>(out.vh.rows()));
  if (info != 0) return jacobi_svd(m, full);
  return out;
}

}  // namespace

std::complex<double> fix_column_phase(Eigen::Ref<Eigen::VectorXcd> column) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index i = 0; i < column.size(); ++i) {
    const double mag = std::abs(column(i));
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag <= 0.0) return {1.0, 0.0};
  const std::complex<double> phase = column(best) / best_mag;
  column *= std::conj(phase);
  column(best) = best_mag;
  return phase;
}

Svd svd(const Matrix& m, bool full) {
  Svd out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.u = Matrix::Identity(m.rows(), full ? m.rows() : 0);
    out.vh = Matrix::Identity(full ? m.cols() : 0, m.cols());
    return out;
  }
  out = lapack_svd(m, full);
  const Eigen::Index paired = std::min(out.u.cols(), out.vh.rows());
  for (Eigen::Index k = 0; k < out.u.cols(); ++k) {
    const std::complex<double> phase = fix_column_phase(out.u.col(k));
    if (k < paired) out.vh.row(k) *= phase;
  }
  return out;
}

Eigen::Index retained_rank(const RealVector& s, double cutoff,
                           std::optional<int> max_rank) {
  Eigen::Index keep = 0;
  while (keep < s.size() && s(keep) > cutoff) ++keep;
  if (max_rank) keep = std::min<Eigen::Index>(keep, *max_rank);
  return std::max<Eigen::Index>(keep, std::min<Eigen::Index>(1, s.size()));
}

double isometry_deviation(const Matrix& m) {
  if (m.cols() == 0) return 0.0;
  const Matrix gram = m.adjoint() * m;
  return (gram - Matrix::Identity(gram.rows(), gram.cols()))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace mpsforge::linalg
