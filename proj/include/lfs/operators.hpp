// Copyright 2026 The lfspec Authors
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

#ifndef LFS_OPERATORS_HPP
#define LFS_OPERATORS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lfs/kernels.hpp"
#include "lfs/linalg.hpp"
#include "lfs/tree.hpp"

namespace lfs {

/// A real function on the field, evaluated on ball centers.
struct TestFunction {
  std::string id;
  std::function<double(const Center&)> eval;
  std::optional<double> known_lipschitz;
  /// |a(x)| <= decay_constant / (1 + |x|^decay_alpha).
  std::optional<double> decay_alpha;
  std::optional<double> decay_constant;

  double operator()(const Center& x) const { return eval(x); }
};

/// Assembled operator on a window. In the weighted basis the matrix acts on
/// vertex values directly; in the symmetric basis it has been conjugated by
/// W^(1/2), so adjoints become transposes and norms are Euclidean.
struct SparseOperator {
  enum class Basis { weighted, symmetric };

  TreeWindow window;
  Basis basis = Basis::weighted;
  linalg::SparseRM matrix;

  Eigen::Index rows() const { return matrix.rows(); }
  Eigen::Index cols() const { return matrix.cols(); }
  /// Nonzeros in row-major order.
  std::vector<Eigen::Triplet<double>> triplets() const;
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
};

/// W^(1/2) A W^(-1/2) of a weighted-basis operator (identity on symmetric ones).
SparseOperator to_symmetric(const SparseOperator& a);

/// a_n(x) per vertex: a at the center, with a(pi^n) on the zero center of level n.
std::vector<double> vertex_values(const TreeWindow& w, const TestFunction& a);

WeightedVector<double> apply_D(const WeightedVector<double>& phi, Truncation t = Truncation::open);
WeightedVector<double> apply_Dstar(const WeightedVector<double>& psi, Truncation t = Truncation::open);

SparseOperator assemble_D(const TreeWindow& w, Truncation t = Truncation::dirichlet);
SparseOperator assemble_Dstar(const TreeWindow& w, Truncation t = Truncation::dirichlet);
/// Symmetric-basis D*D of the truncated ring window (requires N >= 1).
SparseOperator assemble_DstarD(const TreeWindow& w, Truncation t = Truncation::dirichlet);

SparseOperator rho(const TreeWindow& w, const TestFunction& a);
/// [D, rho(a)] in the weighted basis.
SparseOperator assemble_commutator(const TreeWindow& w, const TestFunction& a);
/// Largest singular value of [D, rho(a)] between the weighted spaces.
double commutator_norm(const TreeWindow& w, const TestFunction& a);

/// Truncated L x L Jacobi matrix of the g = 0 block of D*D.
Eigen::MatrixXd jacobi_D0(int L, const FieldParams& params);

/// p^(-2m/e) / (1 - p^(-2/e))^2.
double hs_norm_Dg_inverse(int m, const FieldParams& params);
/// Frobenius norm squared of the inverse of the L x L truncation of the
/// bidiagonal block |g| p^(l/e) [h(l) - h(l+1)], |g| = p^(m/e). L = 0 picks L
/// with p^(-2L/e) below 1e-18.
double hs_norm_Dg_inverse_direct(int m, const FieldParams& params, int L = 0);
/// sum_{m=0}^{m_max} count_g(m) * hs_norm_Dg_inverse(m).
double hs_total_partial(int m_max, const FieldParams& params);

struct LowestEigenvalues {
  std::vector<double> values;  // ascending
  std::vector<double> residuals;
  int iterations = 0;
  bool converged = false;
};

/// Smallest k eigenvalues of the Dirichlet-truncated D*D on a ring window,
/// from subspace iteration on its inverse (two triangular solves).
LowestEigenvalues lowest_eigenvalues_DstarD(const TreeWindow& w, int k, std::uint64_t seed = 0x5eedULL,
                                            double tol = 1e-11);

/// True iff alpha > 1 and alpha > e f / 2.
bool decay_admissible(const FieldParams& params, double alpha);

/// b_t(k) = 1 for k < 0 and 1 / (1 + t p^(alpha k / e)) for k >= 0.
double regularizer_bt(const FieldParams& params, double t, int k, double alpha);

/// rho(a) (D^F)^(-1) on a field window, weighted basis. Throws
/// std::invalid_argument unless a carries an admissible decay exponent.
SparseOperator kernel_rho_a_DFinv(const TreeWindow& wf, const TestFunction& a);
/// rho(a) (D^F)^(-1) b_t, with b_t acting on the input level.
SparseOperator kernel_rho_a_DFinv_bt(const TreeWindow& wf, const TestFunction& a, double t);

/// Hilbert-Schmidt norm of an operator between the weighted spaces.
double hs_norm(const SparseOperator& a);

/// Top `count` singular values (descending) of rho(a)(D^F)^(-1).
std::vector<double> singular_values_window(const TreeWindow& wf, const TestFunction& a, int count,
                                           std::uint64_t seed = 0x5eedULL);

}  // namespace lfs

#endif  // LFS_OPERATORS_HPP
