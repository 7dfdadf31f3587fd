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

#include "lfs/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

namespace lfs {

namespace {

void require_ring(const TreeWindow& w) {
  if (w.kind() != TreeWindow::Kind::ring) throw std::invalid_argument("seminorms: ring window expected");
  if (w.depth() < 1) throw std::invalid_argument("seminorms: depth N >= 1 required");
}

Center child_center(const Center& x, Digit s) { return x.appended(s); }

// pi^n as an element, written with digits 0..n.
Center pi_power(int n) { return Center::uniformizer_power(0, n, n + 1); }

// s pi^n with digits 0..n.
Center digit_times_pi_power(Digit s, int n) {
  std::vector<Digit> d(static_cast<std::size_t>(n + 1), 0);
  d.back() = s;
  return Center(0, std::move(d));
}

// Distance between elements given by centers of arbitrary start and depth.
double element_dist(const FieldParams& params, const Center& x, const Center& y) {
  const long lo = std::min(x.start(), y.start());
  const long hi = std::max(x.depth(), y.depth());
  for (long k = lo; k < hi; ++k) {
    if (x.digit(k) != y.digit(k)) return params.pow_e(-k);
  }
  return 0.0;
}

struct ZeroRow {
  double to_next = 0.0;  // |a(pi^n) - a(pi^(n+1))|^2
  double digits = 0.0;   // sum_{s >= 1} |a(pi^n) - a(s pi^n)|^2
};

ZeroRow zero_row(const TestFunction& a, int n, std::uint32_t q) {
  ZeroRow z;
  const double an = a(pi_power(n));
  const double d = an - a(pi_power(n + 1));
  z.to_next = d * d;
  for (Digit s = 1; s < q; ++s) {
    const double e = an - a(digit_times_pi_power(s, n));
    z.digits += e * e;
  }
  return z;
}

double nonzero_rows_max(const TestFunction& a, const TreeWindow& w, int n) {
  const std::uint32_t q = w.arity();
  double best = 0.0;
  for (std::uint64_t r = 1; r < w.level_size(n); ++r) {
    const Center x = w.center(Vertex{n, r});
    const double ax = a(x);
    double s2 = 0.0;
    for (Digit s = 1; s < q; ++s) {
      const double d = ax - a(child_center(x, s));
      s2 += d * d;
    }
    best = std::max(best, s2);
  }
  return best;
}

}  // namespace

double lipschitz_depth(const TestFunction& a, const TreeWindow& w) {
  require_ring(w);
  const FieldParams& pr = w.params();
  const int N = w.depth();
  const std::uint64_t q = w.arity();

  // Level-N prefixes hold one point each; the zero prefix also holds pi^N.
  std::vector<double> mx(w.level_size(N)), mn(w.level_size(N));
  double best = 0.0;
  for (std::uint64_t r = 0; r < w.level_size(N); ++r) {
    const double v = a(w.center(Vertex{N, r}));
    mx[r] = mn[r] = v;
  }
  {
    const double v = a(pi_power(N));
    best = std::max(best, std::abs(v - mx[0]) * pr.pow_e(N));
    mx[0] = std::max(mx[0], v);
    mn[0] = std::min(mn[0], v);
  }
  for (int l = N - 1; l >= 0; --l) {
    const double scale = pr.pow_e(l);
    const std::uint64_t cnt = w.level_size(l);
    std::vector<double> pmx(cnt), pmn(cnt);
    for (std::uint64_t r = 0; r < cnt; ++r) {
      const std::uint64_t base = r * q;
      double split = 0.0;
      for (std::uint64_t i = 0; i < q; ++i) {
        for (std::uint64_t j = 0; j < q; ++j) {
          if (i != j) split = std::max(split, mx[base + i] - mn[base + j]);
        }
      }
      best = std::max(best, split * scale);
      pmx[r] = *std::max_element(mx.begin() + static_cast<std::ptrdiff_t>(base),
                                 mx.begin() + static_cast<std::ptrdiff_t>(base + q));
      pmn[r] = *std::min_element(mn.begin() + static_cast<std::ptrdiff_t>(base),
                                 mn.begin() + static_cast<std::ptrdiff_t>(base + q));
    }
    mx.swap(pmx);
    mn.swap(pmn);
  }
  return best;
}

double spectral_seminorm_formula(const TestFunction& a, const TreeWindow& w) {
  require_ring(w);
  const FieldParams& pr = w.params();
  const std::uint32_t q = w.arity();
  double best = 0.0;
  for (int n = 0; n < w.depth(); ++n) {
    const ZeroRow z = zero_row(a, n, q);
    // The s = 1 summand vanishes: 1 * pi^n is pi^n.
    const double zero_sum = z.to_next + z.digits;
    const double row = std::max(nonzero_rows_max(a, w, n), zero_sum);
    best = std::max(best, row * pr.pow_e(2L * n) / q);
  }
  return std::sqrt(best);
}

double spectral_seminorm_displayed(const TestFunction& a, const TreeWindow& w) {
  require_ring(w);
  const FieldParams& pr = w.params();
  const std::uint32_t q = w.arity();
  double best = 0.0;
  for (int n = 0; n < w.depth(); ++n) {
    const ZeroRow z = zero_row(a, n, q);
    const double fam1 = nonzero_rows_max(a, w, n) / q;
    const double fam2 = static_cast<double>(q - 1) / q * z.to_next;
    const double fam3 = z.digits / q;
    best = std::max(best, std::max({fam1, fam2, fam3}) * pr.pow_e(2L * n));
  }
  return std::sqrt(best);
}

SeminormConstants seminorm_constants(const FieldParams& params) {
  const double b = params.norm_base();
  const double qf = params.residue_size();
  return SeminormConstants{(b - 1.0) / (2.0 * b * std::sqrt(qf)), std::sqrt((qf - 1.0) / qf)};
}

SeminormReport check_norm_comparison(const TestFunction& a, const TreeWindow& w, double eq_tol) {
  SeminormReport r;
  r.id = a.id;
  r.N = w.depth();
  r.L1_depthN = lipschitz_depth(a, w);
  r.LD_formula_depthN = spectral_seminorm_formula(a, w);
  r.LD_displayed_depthN = spectral_seminorm_displayed(a, w);
  r.commutator_norm_depthN = commutator_norm(w, a);
  r.bounds = seminorm_constants(w.params());
  const double slack = 1e-12;
  r.lower_ok = r.bounds.lower * r.L1_depthN <= r.LD_formula_depthN * (1.0 + slack) + slack;
  r.upper_ok = r.LD_formula_depthN <= r.bounds.upper * r.L1_depthN * (1.0 + slack) + slack;
  r.equality_ok = std::abs(r.LD_formula_depthN - r.commutator_norm_depthN) <= eq_tol;
  return r;
}

std::vector<TestFunction> testfn_library(const FieldParams& params, std::uint64_t seed) {
  const std::uint32_t q = params.residue_size();
  std::vector<TestFunction> lib;
  auto add = [&lib](std::string id, std::function<double(const Center&)> f, std::optional<double> lip) {
    TestFunction t;
    t.id = std::move(id);
    t.eval = std::move(f);
    t.known_lipschitz = lip;
    lib.push_back(std::move(t));
  };

  add("const", [](const Center&) { return 2.5; }, 0.0);
  add("abs", [params](const Center& x) { return norm(params, x); }, 1.0);

  const std::vector<std::pair<std::string, Center>> points = {
      {"dist_1", Center(0, {1})}, {"dist_pi", Center(0, {0, 1})}, {"dist_1_plus_pi", Center(0, {1, 1})}};
  for (const auto& [id, c] : points) {
    add(id, [params, c](const Center& x) { return element_dist(params, x, c); }, 1.0);
  }

  const std::vector<Digit> prefix = {1, 1, 0};
  for (int d = 1; d <= 3; ++d) {
    std::vector<Digit> pre(prefix.begin(), prefix.begin() + d);
    add("ball_indicator_" + std::to_string(d),
        [pre](const Center& x) {
          for (std::size_t k = 0; k < pre.size(); ++k) {
            if (x.digit(static_cast<long>(k)) != pre[k]) return 0.0;
          }
          return 1.0;
        },
        params.pow_e(d - 1));
  }
  add("zero_ball_indicator_2", [](const Center& x) { return x.digit(0) == 0 && x.digit(1) == 0 ? 1.0 : 0.0; },
      params.pow_e(1));

  for (int d = 2; d <= 4; ++d) {
    std::size_t cells = 1;
    for (int i = 0; i < d; ++i) cells *= q;
    auto table = std::make_shared<std::vector<double>>(cells);
    std::mt19937_64 gen(seed + static_cast<std::uint64_t>(d));
    for (double& v : *table) v = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    // Exact Lipschitz constant over the q^d cells.
    double lip = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
      for (std::size_t j = i + 1; j < cells; ++j) {
        int l = 0;
        std::size_t span = cells / q;
        while (i / span == j / span) {
          ++l;
          span /= q;
        }
        lip = std::max(lip, std::abs((*table)[i] - (*table)[j]) * params.pow_e(l));
      }
    }
    add("random_locally_constant_" + std::to_string(d),
        [table, d, q](const Center& x) {
          std::size_t idx = 0;
          for (int k = 0; k < d; ++k) idx = idx * q + x.digit(k);
          return (*table)[idx];
        },
        lip);
  }

  add("abs_squared", [params](const Center& x) { return std::pow(norm(params, x), 2); }, 1.0);

  add("inv_1p_abs_sq", [params](const Center& x) { return 1.0 / (1.0 + std::pow(norm(params, x), 2)); },
      std::nullopt);
  lib.back().decay_alpha = 2.0;
  lib.back().decay_constant = 1.0;

  const double ef = static_cast<double>(params.e) * params.f;
  add("inv_1p_abs_pow_ef", [params, ef](const Center& x) { return 1.0 / (1.0 + std::pow(norm(params, x), ef)); },
      std::nullopt);
  lib.back().decay_alpha = ef;
  lib.back().decay_constant = 1.0;

  return lib;
}

}  // namespace lfs
