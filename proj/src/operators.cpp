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

#include "lfs/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lfs {

namespace {

using Trip = Eigen::Triplet<double>;

SparseOperator make_op(const TreeWindow& w, SparseOperator::Basis basis, Eigen::Index rows, Eigen::Index cols,
                       const std::vector<Trip>& trip) {
  SparseOperator op;
  op.window = w;
  op.basis = basis;
  op.matrix.resize(rows, cols);
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  op.matrix.makeCompressed();
  return op;
}

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::vector<int> level_of_index(const TreeWindow& w) {
  std::vector<int> lv(w.size());
  for (int n = w.min_level(); n <= w.max_level(); ++n) {
    std::fill_n(lv.begin() + static_cast<std::ptrdiff_t>(w.level_offset(n)), w.level_size(n), n);
  }
  return lv;
}

}  // namespace

std::vector<Eigen::Triplet<double>> SparseOperator::triplets() const {
  std::vector<Trip> out;
  out.reserve(static_cast<std::size_t>(matrix.nonZeros()));
  for (Eigen::Index r = 0; r < matrix.outerSize(); ++r) {
    for (linalg::SparseRM::InnerIterator it(matrix, r); it; ++it) out.emplace_back(it.row(), it.col(), it.value());
  }
  return out;
}

SparseOperator to_symmetric(const SparseOperator& a) {
  if (a.basis == SparseOperator::Basis::symmetric) return a;
  const auto lv = level_of_index(a.window);
  const FieldParams& pr = a.window.params();
  SparseOperator out = a;
  out.basis = SparseOperator::Basis::symmetric;
  for (Eigen::Index r = 0; r < out.matrix.outerSize(); ++r) {
    for (linalg::SparseRM::InnerIterator it(out.matrix, r); it; ++it) {
      const long dl = lv[static_cast<std::size_t>(it.row())] - lv[static_cast<std::size_t>(it.col())];
      it.valueRef() *= pow_ratio(pr.p, -dl * pr.f, 2);
    }
  }
  return out;
}

std::vector<double> vertex_values(const TreeWindow& w, const TestFunction& a) {
  std::vector<double> vals(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Vertex v = w.vertex(i);
    const Center c = w.center(v);
    vals[i] = c.is_zero() ? a(Center::uniformizer_power(w.min_level(), v.level, v.level + 1)) : a(c);
  }
  return vals;
}

WeightedVector<double> apply_D(const WeightedVector<double>& phi, Truncation t) {
  WeightedVector<double> out(phi.window);
  kernels::apply_D(phi.window, t, phi.values, out.values);
  return out;
}

WeightedVector<double> apply_Dstar(const WeightedVector<double>& psi, Truncation t) {
  WeightedVector<double> out(psi.window);
  kernels::apply_Dstar(psi.window, t, psi.values, out.values);
  return out;
}

SparseOperator assemble_D(const TreeWindow& w, Truncation t) {
  const FieldParams& pr = w.params();
  const std::uint32_t q = w.arity();
  std::vector<Trip> trip;
  trip.reserve(w.size() * (q + 1));
  for (int n = w.min_level(); n <= w.max_level(); ++n) {
    const double c = pr.pow_e(n);
    for (std::size_t r = 0; r < w.level_size(n); ++r) {
      const Vertex v{n, r};
      const auto row = as_index(w.index(v));
      if (n == w.max_level()) {
        if (t == Truncation::dirichlet) trip.emplace_back(row, row, c);
        continue;
      }
      trip.emplace_back(row, row, c);
      for (const Vertex& ch : w.children(v)) trip.emplace_back(row, as_index(w.index(ch)), -c / q);
    }
  }
  const auto n = as_index(w.size());
  return make_op(w, SparseOperator::Basis::weighted, n, n, trip);
}

SparseOperator assemble_Dstar(const TreeWindow& w, Truncation t) {
  const FieldParams& pr = w.params();
  std::vector<Trip> trip;
  trip.reserve(2 * w.size());
  for (int n = w.min_level(); n <= w.max_level(); ++n) {
    const bool dropped = n == w.max_level() && t == Truncation::open;
    for (std::size_t r = 0; r < w.level_size(n); ++r) {
      const Vertex v{n, r};
      const auto row = as_index(w.index(v));
      if (auto par = w.parent(v)) trip.emplace_back(row, as_index(w.index(*par)), -pr.pow_e(n - 1));
      if (!dropped) trip.emplace_back(row, row, pr.pow_e(n));
    }
  }
  const auto n = as_index(w.size());
  return make_op(w, SparseOperator::Basis::weighted, n, n, trip);
}

SparseOperator assemble_DstarD(const TreeWindow& w, Truncation t) {
  if (w.kind() != TreeWindow::Kind::ring) throw std::invalid_argument("assemble_DstarD: ring window expected");
  if (w.depth() < 1) throw std::invalid_argument("assemble_DstarD: depth N >= 1 required");
  const SparseOperator s = to_symmetric(assemble_D(w, t));
  linalg::SparseRM a = s.matrix.transpose() * s.matrix;
  linalg::SparseRM at = a.transpose();
  SparseOperator out;
  out.window = w;
  out.basis = SparseOperator::Basis::symmetric;
  out.matrix = 0.5 * (a + at);
  out.matrix.prune(0.0);
  out.matrix.makeCompressed();
  return out;
}

SparseOperator rho(const TreeWindow& w, const TestFunction& a) {
  const auto vals = vertex_values(w, a);
  std::vector<Trip> trip;
  trip.reserve(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) trip.emplace_back(as_index(i), as_index(i), vals[i]);
  const auto n = as_index(w.size());
  return make_op(w, SparseOperator::Basis::weighted, n, n, trip);
}

SparseOperator assemble_commutator(const TreeWindow& w, const TestFunction& a) {
  const auto vals = vertex_values(w, a);
  const FieldParams& pr = w.params();
  const double inv_q = 1.0 / static_cast<double>(w.arity());
  std::vector<Trip> trip;
  trip.reserve(w.size());
  for (int n = w.min_level(); n < w.max_level(); ++n) {
    const double c = pr.pow_e(n) * inv_q;
    for (std::size_t r = 0; r < w.level_size(n); ++r) {
      const Vertex v{n, r};
      const std::size_t i = w.index(v);
      for (const Vertex& ch : w.children(v)) {
        const std::size_t j = w.index(ch);
        const double val = c * (vals[i] - vals[j]);
        if (val != 0.0) trip.emplace_back(as_index(i), as_index(j), val);
      }
    }
  }
  const auto n = as_index(w.size());
  return make_op(w, SparseOperator::Basis::weighted, n, n, trip);
}

double commutator_norm(const TreeWindow& w, const TestFunction& a) {
  return linalg::operator_norm(to_symmetric(assemble_commutator(w, a)).matrix);
}

Eigen::MatrixXd jacobi_D0(int L, const FieldParams& params) {
  if (L < 2) throw std::invalid_argument("jacobi_D0: L >= 2 required");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(L, L);
  j(0, 0) = 1.0;
  j(0, 1) = -1.0;
  j(1, 0) = -1.0;
  for (int l = 1; l < L; ++l) {
    j(l, l) = params.pow_e(2L * (l - 1)) * (1.0 + params.pow_e(2));
    if (l + 1 < L) {
      j(l, l + 1) = -params.pow_e(2L * l);
      j(l + 1, l) = -params.pow_e(2L * l);
    }
  }
  return j;
}

double hs_norm_Dg_inverse(int m, const FieldParams& params) {
  if (m < 0) throw std::invalid_argument("hs_norm_Dg_inverse: m >= 0 required");
  const double d = 1.0 - params.q();
  return params.pow_e(-2L * m) / (d * d);
}

double hs_norm_Dg_inverse_direct(int m, const FieldParams& params, int L) {
  if (m < 0) throw std::invalid_argument("hs_norm_Dg_inverse_direct: m >= 0 required");
  if (L <= 0) L = static_cast<int>(std::ceil(18.0 * std::log(10.0) / -std::log(params.q()))) + 2;
  const double g = params.pow_e(m);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(L, L);
  for (int l = 0; l < L; ++l) {
    b(l, l) = g * params.pow_e(l);
    if (l + 1 < L) b(l, l + 1) = -g * params.pow_e(l);
  }
  const Eigen::MatrixXd inv = b.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(L, L));
  return inv.squaredNorm();
}

double hs_total_partial(int m_max, const FieldParams& params) {
  if (m_max < 0) throw std::invalid_argument("hs_total_partial: m_max >= 0 required");
  double total = 0.0;
  for (int m = 0; m <= m_max; ++m) total += count_g_real(params, m) * hs_norm_Dg_inverse(m, params);
  return total;
}

LowestEigenvalues lowest_eigenvalues_DstarD(const TreeWindow& w, int k, std::uint64_t seed, double tol) {
  if (w.kind() != TreeWindow::Kind::ring) throw std::invalid_argument("lowest_eigenvalues: ring window expected");
  const auto dim = as_index(w.size());
  std::vector<double> sqrt_w(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) sqrt_w[i] = std::sqrt(w.weight(w.vertex(i).level));

  linalg::BlockOp inv = [&](const Eigen::MatrixXd& in, Eigen::MatrixXd& out) {
    out.resize(in.rows(), in.cols());
    std::vector<double> u(w.size()), y(w.size()), z(w.size());
    for (Eigen::Index c = 0; c < in.cols(); ++c) {
      for (std::size_t i = 0; i < w.size(); ++i) u[i] = in(as_index(i), c) / sqrt_w[i];
      kernels::solve_Dstar(w, u, y);
      kernels::solve_D(w, y, z);
      for (std::size_t i = 0; i < w.size(); ++i) out(as_index(i), c) = z[i] * sqrt_w[i];
    }
  };
  linalg::SubspaceOptions opt;
  opt.seed = seed;
  opt.tol = tol;
  auto r = linalg::top_eigenpairs(dim, k, inv, opt);
  LowestEigenvalues out;
  out.iterations = r.iterations;
  out.converged = r.converged;
  for (Eigen::Index i = 0; i < r.values.size(); ++i) {
    out.values.push_back(1.0 / r.values(i));
    out.residuals.push_back(r.residuals(i));
  }
  return out;
}

bool decay_admissible(const FieldParams& params, double alpha) {
  return alpha > 1.0 && alpha > 0.5 * params.e * params.f;
}

double regularizer_bt(const FieldParams& params, double t, int k, double alpha) {
  if (!(t > 0.0)) throw std::invalid_argument("regularizer_bt: t > 0 required");
  if (k < 0) return 1.0;
  return 1.0 / (1.0 + t * std::pow(static_cast<double>(params.p), alpha * k / params.e));
}

namespace {

SparseOperator kernel_impl(const TreeWindow& wf, const TestFunction& a, std::optional<double> t) {
  if (wf.kind() != TreeWindow::Kind::field) throw std::invalid_argument("kernel: field window expected");
  if (!a.decay_alpha) throw std::invalid_argument("kernel: function '" + a.id + "' has no decay exponent");
  const double alpha = *a.decay_alpha;
  if (!decay_admissible(wf.params(), alpha)) {
    throw std::invalid_argument("kernel: decay exponent of '" + a.id + "' violates alpha > max(1, ef/2)");
  }
  const FieldParams& pr = wf.params();
  const auto vals = vertex_values(wf, a);
  const std::uint64_t q = wf.arity();
  std::vector<double> col_scale;
  for (int k = wf.min_level(); k <= wf.max_level(); ++k) {
    col_scale.push_back(pr.pow_e(-k) * (t ? regularizer_bt(pr, *t, k, alpha) : 1.0));
  }
  std::vector<Trip> trip;
  for (int n = wf.min_level(); n <= wf.max_level(); ++n) {
    for (std::uint64_t r = 0; r < wf.level_size(n); ++r) {
      const std::size_t i = wf.index(Vertex{n, r});
      const double an = vals[i];
      std::uint64_t span = 1;
      for (int k = n; k <= wf.max_level(); ++k) {
        const double v = col_scale[static_cast<std::size_t>(k - wf.min_level())] *
                         pow_ratio(pr.p, static_cast<long>(pr.f) * (n - k), 1) * an;
        const std::size_t base = wf.level_offset(k) + static_cast<std::size_t>(r * span);
        if (v != 0.0) {
          for (std::uint64_t s = 0; s < span; ++s) trip.emplace_back(as_index(i), as_index(base + s), v);
        }
        span *= q;
      }
    }
  }
  const auto n = as_index(wf.size());
  return make_op(wf, SparseOperator::Basis::weighted, n, n, trip);
}

}  // namespace

SparseOperator kernel_rho_a_DFinv(const TreeWindow& wf, const TestFunction& a) {
  return kernel_impl(wf, a, std::nullopt);
}

SparseOperator kernel_rho_a_DFinv_bt(const TreeWindow& wf, const TestFunction& a, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel: t > 0 required");
  return kernel_impl(wf, a, t);
}

double hs_norm(const SparseOperator& a) { return to_symmetric(a).matrix.norm(); }

std::vector<double> singular_values_window(const TreeWindow& wf, const TestFunction& a, int count,
                                           std::uint64_t seed) {
  const SparseOperator k = to_symmetric(kernel_rho_a_DFinv(wf, a));
  const linalg::SparseRM& m = k.matrix;
  const int nev = static_cast<int>(std::min<Eigen::Index>(count, m.cols()));
  linalg::BlockOp gram = [&m](const Eigen::MatrixXd& in, Eigen::MatrixXd& out) {
    Eigen::MatrixXd t = m * in;
    out = m.transpose() * t;
  };
  linalg::SubspaceOptions opt;
  opt.seed = seed;
  opt.tol = 1e-10;
  auto r = linalg::top_eigenpairs(m.cols(), nev, gram, opt);
  std::vector<double> sv;
  for (Eigen::Index i = 0; i < r.values.size(); ++i) sv.push_back(std::sqrt(std::max(0.0, r.values(i))));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

}  // namespace lfs
