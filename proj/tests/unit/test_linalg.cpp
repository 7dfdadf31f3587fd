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

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <random>

#include "lfs/linalg.hpp"

using namespace lfs;

TEST_CASE("random_block is reproducible and centred") {
  const Eigen::MatrixXd a = linalg::random_block(50, 3, 99);
  const Eigen::MatrixXd b = linalg::random_block(50, 3, 99);
  const Eigen::MatrixXd c = linalg::random_block(50, 3, 100);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.maxCoeff() < 0.5);
  CHECK(a.minCoeff() >= -0.5);
  std::mt19937_64 gen(99);
  CHECK(a(0, 0) == static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5);
}

TEST_CASE("symmetric_eigenvalues on a known matrix") {
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  const Eigen::VectorXd ev = linalg::symmetric_eigenvalues(m);
  CHECK(ev(0) == doctest::Approx(1.0));
  CHECK(ev(1) == doctest::Approx(3.0));
}

TEST_CASE("subspace iteration finds the top of a rotated diagonal spectrum") {
  const int n = 600;
  Eigen::VectorXd diag(n);
  for (int i = 0; i < n; ++i) diag(i) = 1.0 + i * 0.01;
  const Eigen::MatrixXd r = linalg::random_block(n, n, 5);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(r);
  const Eigen::MatrixXd qm = qr.householderQ();
  const Eigen::MatrixXd a = qm * diag.asDiagonal() * qm.transpose();
  linalg::BlockOp op = [&](const Eigen::MatrixXd& in, Eigen::MatrixXd& out) { out = a * in; };
  const auto res = linalg::top_eigenpairs(n, 4, op);
  REQUIRE(res.converged);
  for (int i = 0; i < 4; ++i) CHECK(res.values(i) == doctest::Approx(diag(n - 1 - i)).epsilon(1e-10));
  const Eigen::MatrixXd resid = a * res.vectors.leftCols(4) - res.vectors.leftCols(4) * res.values.head(4).asDiagonal();
  CHECK(resid.norm() < 1e-8);
}

TEST_CASE("operator_norm agrees with a dense SVD") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    // three disconnected blocks, one of them a single row
    linalg::SparseRM m(40, 40);
    std::vector<Eigen::Triplet<double>> t;
    for (int i = 0; i < 15; ++i)
      for (int j = 0; j < 15; ++j)
        if (gen() % 3 == 0) t.emplace_back(i, j, u(gen));
    for (int i = 15; i < 35; ++i)
      for (int j = 15; j < 39; ++j)
        if (gen() % 4 == 0) t.emplace_back(i, j, u(gen));
    t.emplace_back(39, 39, 3.0 * u(gen));
    t.emplace_back(39, 38, 3.0 * u(gen));
    m.setFromTriplets(t.begin(), t.end());
    const Eigen::MatrixXd d(m);
    const double expect = Eigen::JacobiSVD<Eigen::MatrixXd>(d).singularValues()(0);
    CHECK(linalg::operator_norm(m) == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(linalg::operator_norm(linalg::SparseRM(5, 5)) == 0.0);
}

TEST_CASE("operator_norm on a large component") {
  // bidiagonal 3000 x 3000: one component with a clustered top spectrum
  const int n = 3000;
  linalg::SparseRM m(n, n);
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, 2.0);
    if (i + 1 < n) t.emplace_back(i, i + 1, -1.0);
  }
  m.setFromTriplets(t.begin(), t.end());
  // oracle: largest eigenvalue of the tridiagonal B^T B
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, 5.0);
  diag(0) = 4.0;
  const Eigen::VectorXd off = Eigen::VectorXd::Constant(n - 1, -2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  CHECK(linalg::operator_norm(m) == doctest::Approx(std::sqrt(es.eigenvalues().maxCoeff())).epsilon(1e-10));
}

TEST_CASE("operator_norm through subspace iteration") {
  // 6000 x 6000 bidiagonal with a dominant leading entry: separated top singular value
  const int n = 6000;
  linalg::SparseRM m(n, n);
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, i == 0 ? 10.0 : 2.0);
    if (i + 1 < n) t.emplace_back(i, i + 1, -1.0);
  }
  m.setFromTriplets(t.begin(), t.end());
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, 5.0);
  diag(0) = 100.0;
  Eigen::VectorXd off = Eigen::VectorXd::Constant(n - 1, -2.0);
  off(0) = -10.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  CHECK(linalg::operator_norm(m) == doctest::Approx(std::sqrt(es.eigenvalues().maxCoeff())).epsilon(1e-10));
}
