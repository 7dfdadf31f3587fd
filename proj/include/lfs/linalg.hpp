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

#ifndef LFS_LINALG_HPP
#define LFS_LINALG_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <functional>

namespace lfs::linalg {

using SparseRM = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// out = A * in, column by column.
using BlockOp = std::function<void(const Eigen::MatrixXd& in, Eigen::MatrixXd& out)>;

struct SubspaceOptions {
  int block = 0;  // 0 selects nev + max(8, nev)
  int max_iter = 5000;
  double tol = 1e-11;  // relative Ritz residual ||A x - theta x|| / theta
  std::uint64_t seed = 0x5eedULL;
};

struct SubspaceResult {
  Eigen::VectorXd values;  // descending
  Eigen::MatrixXd vectors;
  Eigen::VectorXd residuals;
  int iterations = 0;
  bool converged = false;
};

/// Uniform [0,1) doubles from mt19937_64 with a fixed bit mapping, so streams
/// agree across standard libraries.
Eigen::MatrixXd random_block(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// Largest `nev` eigenpairs of a symmetric positive semidefinite operator by
/// block subspace iteration with Rayleigh-Ritz.
SubspaceResult top_eigenpairs(Eigen::Index dim, int nev, const BlockOp& op, const SubspaceOptions& opt = {});

/// Ascending eigenvalues of a dense symmetric matrix.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a);

/// Largest singular value of a sparse matrix. The matrix is split into the
/// connected components of its row/column incidence graph; each component is
/// handled densely up to 4000 on its smaller side, otherwise by subspace
/// iteration on the Gram matrix (NumericalError if that does not converge).
double operator_norm(const SparseRM& a);

}  // namespace lfs::linalg

#endif  // LFS_LINALG_HPP
