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

#include "lfs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfs/errors.hpp"

namespace lfs::linalg {

Eigen::MatrixXd random_block(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      m(i, j) = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
    }
  }
  return m;
}

namespace {

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& z) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  return qr.householderQ() * Eigen::MatrixXd::Identity(z.rows(), z.cols());
}

}  // namespace

SubspaceResult top_eigenpairs(Eigen::Index dim, int nev, const BlockOp& op, const SubspaceOptions& opt) {
  if (nev < 1) throw std::invalid_argument("top_eigenpairs: nev must be >= 1");
  if (dim < 1) throw std::invalid_argument("top_eigenpairs: empty operator");
  nev = static_cast<int>(std::min<Eigen::Index>(nev, dim));
  Eigen::Index b = opt.block > 0 ? opt.block : nev + std::max(8, nev);
  b = std::clamp<Eigen::Index>(b, nev, dim);

  SubspaceResult res;
  if (dim <= 400) {
    // Small operators: assemble densely and solve exactly.
    Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::MatrixXd a(dim, dim);
    op(eye, a);
    a = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    res.values.resize(nev);
    res.vectors.resize(dim, nev);
    for (int i = 0; i < nev; ++i) {
      res.values(i) = es.eigenvalues()(dim - 1 - i);
      res.vectors.col(i) = es.eigenvectors().col(dim - 1 - i);
    }
    Eigen::MatrixXd av = a * res.vectors;
    res.residuals.resize(nev);
    for (int i = 0; i < nev; ++i) {
      double r = (av.col(i) - res.values(i) * res.vectors.col(i)).norm();
      res.residuals(i) = res.values(i) > 0 ? r / res.values(i) : r;
    }
    res.converged = true;
    return res;
  }

  Eigen::MatrixXd q = orthonormalize(random_block(dim, b, opt.seed));
  Eigen::MatrixXd z(dim, b);
  for (int it = 1; it <= opt.max_iter; ++it) {
    op(q, z);
    Eigen::MatrixXd h = q.transpose() * z;
    h = 0.5 * (h + h.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    Eigen::VectorXd theta = es.eigenvalues().reverse();
    Eigen::MatrixXd y = es.eigenvectors().rowwise().reverse();
    Eigen::MatrixXd x = q * y;
    Eigen::MatrixXd zy = z * y;
    Eigen::VectorXd resid(nev);
    bool ok = true;
    for (int i = 0; i < nev; ++i) {
      double r = (zy.col(i) - theta(i) * x.col(i)).norm();
      resid(i) = theta(i) > 0 ? r / theta(i) : r;
      if (!(resid(i) < opt.tol)) ok = false;
    }
    res.iterations = it;
    if (ok || it == opt.max_iter) {
      res.values = theta.head(nev);
      res.vectors = x.leftCols(nev);
      res.residuals = resid;
      res.converged = ok;
      return res;
    }
    q = orthonormalize(zy);
  }
  return res;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

namespace {

constexpr Eigen::Index kDenseSvdMax = 400;
constexpr Eigen::Index kDenseGramMax = 4000;


struct DisjointSet {
  std::vector<Eigen::Index> parent;
  explicit DisjointSet(Eigen::Index n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  }
  Eigen::Index find(Eigen::Index i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void unite(Eigen::Index a, Eigen::Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

double operator_norm(const SparseRM& a) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  DisjointSet ds(rows + cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (SparseRM::InnerIterator it(a, r); it; ++it) {
      if (it.value() != 0.0) ds.unite(r, rows + it.col());
    }
  }
  std::vector<std::vector<Eigen::Index>> comp_rows(static_cast<std::size_t>(rows + cols));
  std::vector<std::vector<Eigen::Index>> comp_cols(static_cast<std::size_t>(rows + cols));
  for (Eigen::Index r = 0; r < rows; ++r) comp_rows[ds.find(r)].push_back(r);
  for (Eigen::Index c = 0; c < cols; ++c) comp_cols[ds.find(rows + c)].push_back(c);

  double best = 0.0;
  std::vector<Eigen::Index> col_pos(static_cast<std::size_t>(cols), -1);
  for (std::size_t k = 0; k < comp_rows.size(); ++k) {
    const auto& rs = comp_rows[k];
    const auto& cs = comp_cols[k];
    if (rs.empty() || cs.empty()) continue;
    for (std::size_t j = 0; j < cs.size(); ++j) col_pos[cs[j]] = static_cast<Eigen::Index>(j);
    const auto nr = static_cast<Eigen::Index>(rs.size());
    const auto nc = static_cast<Eigen::Index>(cs.size());
    if (std::min(nr, nc) <= kDenseGramMax) {
      Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(nr, nc);
      for (Eigen::Index i = 0; i < nr; ++i) {
        for (SparseRM::InnerIterator it(a, rs[i]); it; ++it) blk(i, col_pos[it.col()]) += it.value();
      }
      if (nr == 1 || nc == 1) {
        best = std::max(best, blk.norm());
      } else if (std::min(nr, nc) <= kDenseSvdMax) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(blk);
        best = std::max(best, svd.singularValues()(0));
      } else {
        const Eigen::MatrixXd g = nr < nc ? Eigen::MatrixXd(blk * blk.transpose()) : Eigen::MatrixXd(blk.transpose() * blk);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
        best = std::max(best, std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff())));
      }
      continue;
    }
    SparseRM sub(nr, nc);
    std::vector<Eigen::Triplet<double>> trip;
    for (Eigen::Index i = 0; i < nr; ++i) {
      for (SparseRM::InnerIterator it(a, rs[i]); it; ++it) trip.emplace_back(i, col_pos[it.col()], it.value());
    }
    sub.setFromTriplets(trip.begin(), trip.end());
    BlockOp gram = [&sub](const Eigen::MatrixXd& in, Eigen::MatrixXd& out) {
      Eigen::MatrixXd t = sub * in;
      out = sub.transpose() * t;
    };
    SubspaceOptions opt;
    opt.tol = 1e-12;
    auto r = top_eigenpairs(nc, 1, gram, opt);
    if (!r.converged) {
      throw NumericalError("operator_norm: subspace iteration did not converge on a component of size " +
                           std::to_string(nr) + "x" + std::to_string(nc));
    }
    best = std::max(best, std::sqrt(std::max(0.0, r.values(0))));
  }
  return best;
}

}  // namespace lfs::linalg
