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

#pragma once

#include <Eigen/Core>
#include <optional>

namespace mpsforge::linalg {

using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// m = u * diag(s) * vh with s sorted descending.
///
/// Each column of u is rephased so its largest-magnitude entry (first one on
/// ties) is real and non-negative; the matching row of vh absorbs the
/// conjugate phase. This makes the factors reproducible across runs.
struct Svd {
  Matrix u;
  RealVector s;
  Matrix vh;
};

/// Thin SVD (u is m x r, vh is r x n, r = min(m, n)), or full SVD when
/// `full` is set (u is m x m, vh is n x n).
Svd svd(const Matrix& m, bool full = false);

/// Number of singular values to keep: those strictly above `cutoff`, at most
/// `max_rank`, and never fewer than one.
Eigen::Index retained_rank(const RealVector& s, double cutoff,
                           std::optional<int> max_rank);

/// Rotates a column so its largest-magnitude entry is real non-negative and
/// returns the applied phase factor (unit modulus).
std::complex<double> fix_column_phase(Eigen::Ref<Eigen::VectorXcd> column);

/// max |(m^dagger m - I)_{ij}|.
double isometry_deviation(const Matrix& m);

}  // namespace mpsforge::linalg
