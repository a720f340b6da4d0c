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

// Open-boundary matrix product states over qubits.
//
// psi(s_1 ... s_n) = A_1^{s_1} A_2^{s_2} ... A_n^{s_n}
//
// Site i corresponds to qubit i-1 (site 1 is the most significant qubit).
// Each site holds two matrices A^0, A^1 of shape (chi_i, chi_{i+1}), with
// chi_1 = chi_{n+1} = 1.

#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>
#include <span>
#include <vector>

#include "mpsforge/linalg.hpp"
#include "mpsforge/state_vector.hpp"

namespace mpsforge {

using linalg::Matrix;

/// Rank-3 site tensor A[a, s, b] with a physical index s in {0, 1}.
class SiteTensor {
 public:
  SiteTensor() = default;
  SiteTensor(Matrix a0, Matrix a1);

  int left_dim() const noexcept { return static_cast<int>(a_[0].rows()); }
  int right_dim() const noexcept { return static_cast<int>(a_[0].cols()); }

  const Matrix& operator[](int s) const { return a_[s]; }
  Matrix& operator[](int s) { return a_[s]; }

  /// (2 * left) x right matrix, row s * left + a.
  Matrix left_grouped() const;
  /// left x (2 * right) matrix, column s * right + b.
  Matrix right_grouped() const;

  static SiteTensor from_left_grouped(const Matrix& m, int left);
  static SiteTensor from_right_grouped(const Matrix& m, int right);

  /// Element A[a, s, b].
  Complex at(int a, int s, int b) const { return a_[s](a, b); }

 private:
  std::array<Matrix, 2> a_{Matrix::Ones(1, 1), Matrix::Zero(1, 1)};
};

enum class CanonicalForm { kNone, kLeft };

class MatrixProductState {
 public:
  /// Validates bond agreement and unit boundary dimensions. Does not check
  /// the canonical-form claim; use left_canonical_deviation() for that.
  MatrixProductState(std::vector<SiteTensor> sites, CanonicalForm form);

  /// Product state |0...0> on n sites.
  static MatrixProductState zero_state(int num_sites);

  int num_sites() const noexcept { return static_cast<int>(sites_.size()); }
  const SiteTensor& site(int i) const { return sites_[i]; }
  std::span<const SiteTensor> sites() const noexcept { return sites_; }
  CanonicalForm canonical_form() const noexcept { return form_; }

  /// Interior bond dimensions chi_2 .. chi_n (n - 1 entries).
  std::vector<int> bond_dims() const;
  int max_bond() const;

 private:
  std::vector<SiteTensor> sites_;
  CanonicalForm form_;
};

struct BondProfile {
  std::vector<int> bonds;  ///< chi_2 .. chi_n
  int max_bond = 1;
};

/// Singular-value truncation policy. Values at or below `cutoff` are
/// discarded; at most `max_bond` are kept.
struct TruncationOptions {
  std::optional<int> max_bond;
  double cutoff = 1e-14;
};

/// Left-canonical MPS via a left-to-right sweep of SVDs. Truncated results
/// are renormalized. Rejects n = 0 and non-normalized input.
MatrixProductState from_statevector(const StateVector& state,
                                    const TruncationOptions& options = {});

/// Full contraction. Throws ResourceError beyond max_qubits().
StateVector to_statevector(const MatrixProductState& mps);

/// Best bond-`max_bond` approximation by a right-to-left truncating sweep over
/// the left-canonical form, then re-canonicalized (left) and renormalized.
MatrixProductState truncate(const MatrixProductState& mps, int max_bond);

/// Generalization of truncate() taking a full truncation policy.
MatrixProductState compress(const MatrixProductState& mps,
                            const TruncationOptions& options);

/// Brings any MPS into left-canonical form with a QR sweep, preserving the
/// represented vector (including its norm).
MatrixProductState left_canonicalize(const MatrixProductState& mps);

BondProfile bond_profile(const MatrixProductState& mps);

/// max over sites of max |(sum_s A^s dagger A^s - I)_{ij}|.
double left_canonical_deviation(const MatrixProductState& mps);

bool is_left_canonical(const MatrixProductState& mps, double tol = 1e-10);

/// <0...0|psi>, a product of the A^0 matrices.
Complex overlap_with_zero(const MatrixProductState& mps);

/// <a|b> computed by transfer-matrix contraction (no dense vectors).
Complex inner_product(const MatrixProductState& a,
                      const MatrixProductState& b);

double norm(const MatrixProductState& mps);

/// Upper bound on chi_i from the qubit counts on either side of bond i
/// (1-based bond between sites i-1 and i, for i in 2..n).
long long schmidt_bound(int num_sites, int bond);

/// Applies a 4x4 gate to sites (i, i+1) and splits the result by SVD, putting
/// the left-orthonormal factor on site i. The gate's basis is |s_i s_{i+1}>
/// with s_i the more significant bit.
void apply_two_site_gate(std::vector<SiteTensor>& sites, int i,
                         const Matrix& gate,
                         const TruncationOptions& options = {});

/// Applies a 2x2 gate to the physical index of site i.
void apply_one_site_gate(std::vector<SiteTensor>& sites, int i,
                         const Matrix& gate);

}  // namespace mpsforge
