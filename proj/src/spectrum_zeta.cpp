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

#include "lfs/spectrum_zeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "lfs/errors.hpp"
#include "lfs/operators.hpp"

namespace lfs {

namespace {

void require_roots(const RootTable& roots, int count) {
  if (static_cast<int>(roots.roots.size()) < count) {
    throw std::invalid_argument("root table holds " + std::to_string(roots.roots.size()) + " roots, " +
                                std::to_string(count) + " needed");
  }
  for (int n = 0; n < count; ++n) {
    const Root& r = roots.roots[static_cast<std::size_t>(n)];
    if (!r.certified) {
      throw NumericalError("root lambda_" + std::to_string(n) + " not certified: " +
                           (r.failure.empty() ? "residual above tolerance" : r.failure));
    }
  }
}

}  // namespace

SpectrumTable full_spectrum(const FieldParams& params, int m_max, int n_max, const RootTable& roots) {
  if (m_max < 0 || n_max < 0) throw std::invalid_argument("full_spectrum: m_max, n_max >= 0 required");
  require_roots(roots, n_max + 1);
  SpectrumTable t;
  t.params = params;
  for (int m = 0; m <= m_max; ++m) {
    const std::uint64_t mult = count_g(params, m);
    const double scale = params.pow_e(2L * m);
    for (int n = 0; n <= n_max; ++n) {
      const double lam = roots.roots[static_cast<std::size_t>(n)].value;
      t.entries.push_back(SpectrumEntry{m, n, lam, scale * lam, mult});
    }
  }
  std::stable_sort(t.entries.begin(), t.entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    return std::tie(a.value, a.m, a.n) < std::tie(b.value, b.m, b.n);
  });
  return t;
}

SpectrumTable full_spectrum(const FieldParams& params, int m_max, int n_max) {
  return full_spectrum(params, m_max, n_max, find_roots(QSeriesContext::make(params), n_max + 1));
}

std::vector<int> cluster_sizes(const std::vector<double>& sorted, double gap) {
  std::vector<int> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && std::abs(sorted[i] - sorted[i - 1]) <= gap * std::abs(sorted[i])) {
      ++out.back();
    } else {
      out.push_back(1);
    }
  }
  return out;
}

SpectrumValidation validate_spectrum(const FieldParams& params, int N, const ValidationOptions& opt) {
  if (N < 1) throw std::invalid_argument("validate_spectrum: N >= 1 required");
  if (opt.k < 1) throw std::invalid_argument("validate_spectrum: k >= 1 required");
  SpectrumValidation v;
  v.params = params;
  v.N = N;
  v.k = opt.k;
  v.tol = opt.tol;
  v.drift_tol = opt.drift_tol;
  v.cutoff = params.pow_e(2L * (N - 2));

  // lambda_n >= p^(2(n-1)/e), so roots up to n = N-2 cover every value below the cutoff.
  const int n_roots = std::max(N - 1, 1);
  const RootTable roots = find_roots(QSeriesContext::make(params), n_roots);
  require_roots(roots, n_roots);

  struct Item {
    double value;
    int m, n;
  };
  std::vector<Item> items;
  for (int m = 0; m <= N; ++m) {
    const double scale = params.pow_e(2L * m);
    const std::uint64_t mult = count_g(params, m);
    for (int n = 0; n < n_roots; ++n) {
      const double val = scale * roots.roots[static_cast<std::size_t>(n)].value;
      if (!(val < v.cutoff)) continue;
      const auto copies = std::min<std::uint64_t>(mult, static_cast<std::uint64_t>(opt.k));
      for (std::uint64_t c = 0; c < copies; ++c) items.push_back({val, m, n});
    }
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return std::tie(a.value, a.m, a.n) < std::tie(b.value, b.m, b.n);
  });
  if (static_cast<int>(items.size()) < opt.k) {
    std::ostringstream os;
    os << "cutoff too low: " << items.size() << " analytic eigenvalues below p^(2(N-2)/e) = " << v.cutoff
       << ", " << opt.k << " requested";
    v.error = os.str();
    return v;
  }
  items.resize(static_cast<std::size_t>(opt.k));
  for (const Item& it : items) {
    v.analytic_values.push_back(it.value);
    v.analytic_m.push_back(it.m);
    v.analytic_n.push_back(it.n);
  }

  const TreeWindow w = TreeWindow::ring(params, N);
  const LowestEigenvalues low = lowest_eigenvalues_DstarD(w, opt.k, opt.seed);
  v.converged = low.converged;
  if (!low.converged) v.error = "eigensolver did not converge";
  v.matrix_values = low.values;
  std::sort(v.matrix_values.begin(), v.matrix_values.end());
  if (opt.corrupt != 0.0 && !v.matrix_values.empty()) v.matrix_values[0] *= 1.0 + opt.corrupt;

  for (std::size_t i = 0; i < v.matrix_values.size(); ++i) {
    const double rel = std::abs(v.matrix_values[i] - v.analytic_values[i]) / v.analytic_values[i];
    v.max_rel_error = std::max(v.max_rel_error, rel);
  }
  v.matrix_clusters = cluster_sizes(v.matrix_values, opt.cluster_gap);
  v.analytic_clusters = cluster_sizes(v.analytic_values, opt.cluster_gap);
  v.multiplicity_match = v.matrix_clusters == v.analytic_clusters;

  if (opt.check_drift) {
    const LowestEigenvalues deeper = lowest_eigenvalues_DstarD(TreeWindow::ring(params, N + 2), 1, opt.seed);
    v.drift_checked = true;
    v.drift = std::abs(v.matrix_values[0] - deeper.values[0]) / deeper.values[0];
    if (!deeper.converged) {
      v.converged = false;
      v.error = "eigensolver did not converge at depth N+2";
    }
  }
  return v;
}

double schatten_m_sum(const FieldParams& params, double s, int m_max) {
  double total = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    const double vol = pow_ratio(params.p, static_cast<long>(m) * params.f, 1) -
                       pow_ratio(params.p, static_cast<long>(m - 1) * params.f, 1);
    total += std::pow(static_cast<double>(params.p), -2.0 * m * s / params.e) * vol;
  }
  return total;
}

std::optional<double> schatten_m_sum_closed(const FieldParams& params, double s) {
  if (!(2.0 * s > static_cast<double>(params.e) * params.f)) return std::nullopt;
  const double x = std::pow(static_cast<double>(params.p), params.f - 2.0 * s / params.e);
  return (1.0 - pow_ratio(params.p, -params.f, 1)) * x / (1.0 - x);
}

SchattenResult schatten_partial(const FieldParams& params, double s, int m_max, int n_max, const RootTable& roots) {
  if (!(s > 0.0)) throw std::invalid_argument("schatten_partial: s > 0 required");
  require_roots(roots, n_max + 1);
  SchattenResult r;
  r.s = s;
  r.m_divergent = !(2.0 * s > static_cast<double>(params.e) * params.f);
  r.m_sum = schatten_m_sum(params, s, m_max);
  for (int n = 0; n <= n_max; ++n) r.root_sum += std::pow(roots.roots[static_cast<std::size_t>(n)].value, -s);
  r.trace = (1.0 + r.m_sum) * r.root_sum;
  return r;
}

double zeta_tail_bound(const FieldParams& params, double sigma, int n0) {
  if (n0 < 1) return std::numeric_limits<double>::infinity();
  const double qn = std::pow(params.q(), n0);
  const double r = qn / (1.0 - qn);
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  const double ratio = std::pow(static_cast<double>(params.p), -2.0 * sigma / params.e);
  return std::pow(1.0 - r, -2.0 * sigma) * std::pow(ratio, n0) / (1.0 - ratio);
}

ZetaValue zeta_D0(const FieldParams& params, std::complex<double> s, const RootTable& roots, int n_roots) {
  if (!(s.real() > 0.0)) throw std::invalid_argument("zeta_D0: Re(s) > 0 required");
  if (n_roots < 1) throw std::invalid_argument("zeta_D0: n_roots >= 1 required");
  require_roots(roots, n_roots);
  ZetaValue z;
  z.s = s;
  z.n_roots_used = n_roots;
  for (int n = 0; n < n_roots; ++n) {
    z.value += std::exp(-s * std::log(roots.roots[static_cast<std::size_t>(n)].value));
  }
  z.tail_bound = zeta_tail_bound(params, s.real(), n_roots);
  return z;
}

std::complex<double> zeta_factor(const FieldParams& params, std::complex<double> s) {
  const double lp = std::log(static_cast<double>(params.p));
  const std::complex<double> num = 1.0 - std::exp(-2.0 * s / static_cast<double>(params.e) * lp);
  const std::complex<double> den =
      1.0 - std::exp((static_cast<double>(params.f) - 2.0 * s / static_cast<double>(params.e)) * lp);
  return num / den;
}

bool is_factor_pole(const FieldParams& params, std::complex<double> s, double tol) {
  const double lp = std::log(static_cast<double>(params.p));
  const std::complex<double> den =
      1.0 - std::exp((static_cast<double>(params.f) - 2.0 * s / static_cast<double>(params.e)) * lp);
  return std::abs(den) < tol;
}

ZetaValue zeta_DR(const FieldParams& params, std::complex<double> s, const RootTable& roots, int n_roots) {
  ZetaValue z = zeta_D0(params, s, roots, n_roots);
  if (is_factor_pole(params, s)) {
    z.pole = true;
    z.value = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    z.tail_bound = std::numeric_limits<double>::infinity();
    return z;
  }
  const std::complex<double> fac = zeta_factor(params, s);
  z.value *= fac;
  z.tail_bound *= std::abs(fac);
  return z;
}

namespace {

std::vector<SymbolicPoint> lattice(int k_min, int k_max, double re, double im_step, const std::string& pattern) {
  std::vector<SymbolicPoint> out;
  for (int k = k_min; k <= k_max; ++k) {
    std::string expr = pattern;
    const auto pos = expr.find("{k}");
    if (pos != std::string::npos) expr.replace(pos, 3, std::to_string(k));
    out.push_back(SymbolicPoint{k, {re, im_step * k}, expr});
  }
  return out;
}

}  // namespace

std::vector<SymbolicPoint> factor_poles(const FieldParams& params, int k_min, int k_max) {
  const double lp = std::log(static_cast<double>(params.p));
  return lattice(k_min, k_max, 0.5 * params.e * params.f, -std::numbers::pi * params.e / lp,
                 "(e/2)*(f - 2*pi*i*({k})/ln p)");
}

std::vector<SymbolicPoint> factor_zeros(const FieldParams& params, int k_min, int k_max) {
  const double lp = std::log(static_cast<double>(params.p));
  return lattice(k_min, k_max, 0.0, std::numbers::pi * params.e / lp, "pi*i*({k})*e/ln p");
}

std::vector<SymbolicPoint> continuation_poles_reference(const FieldParams& params, int k_min, int k_max) {
  const double lp = std::log(static_cast<double>(params.p));
  return lattice(k_min, k_max, 0.0, 2.0 * std::numbers::pi * params.e / lp, "2*pi*i*({k})*e/ln p");
}

}  // namespace lfs
