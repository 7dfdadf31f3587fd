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

#include "lfs/qspecial.hpp"

#include <algorithm>
#include <cmath>
#include <ios>
#include <iterator>
#include <utility>
#include <limits>
#include <stdexcept>

#include "mp.hpp"

namespace lfs {

namespace {

template <class T>
struct MpSeries {
  T sum;
  T tail;
  T max_term;
  int terms = 0;
  bool converged = false;

  // Rounding noise of the partial sum at the working precision.
  T noise() const {
    return max_term * T(terms) * boost::multiprecision::pow(T(2), -(std::numeric_limits<T>::digits - 2));
  }
};

// Partial sum with the tail bounded by a geometric series: the term ratio
// z q^(n-1) / (1 - q^n)^2 decreases in n.
template <class T>
MpSeries<T> phi11_mp(const T& q, const T& z, const T& rel_tol, int max_terms) {
  MpSeries<T> out;
  T term(1);
  out.sum = T(1);
  out.tail = T(0);
  out.max_term = T(1);
  T qpow(1);  // q^(n-1)
  const T az = abs(z);
  for (int n = 1; n <= max_terms; ++n) {
    const T qn = qpow * q;
    const T d = T(1) - qn;
    term *= -z * qpow / (d * d);
    out.sum += term;
    out.terms = n + 1;
    out.max_term = std::max(out.max_term, T(abs(term)));
    const T d1 = T(1) - qn * q;
    const T d2 = T(1) - qn * q * q;
    const T next = abs(term) * az * qn / (d1 * d1);
    const T rho = az * qn * q / (d2 * d2);
    if (rho < T(1)) {
      const T tail = next / (T(1) - rho);
      if (tail <= rel_tol * std::max(T(1), T(abs(out.sum)))) {
        out.tail = tail;
        out.converged = true;
        return out;
      }
    }
    qpow = qn;
  }
  out.tail = std::numeric_limits<T>::infinity();
  return out;
}

template <class T>
T tol_for_digits() {
  return boost::multiprecision::pow(T(10), -(std::numeric_limits<T>::digits10 - 10));
}

template <class T>
int sign_of(const T& x) {
  return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

// Search bracket in working precision; see find_roots.
template <class T>
std::pair<T, T> search_bracket(const QSeriesContext& ctx, int n) {
  if (n == 0) return {T(1e-12), T(1)};
  const T q = mp::pow_ratio<T>(ctx.p, -2, ctx.e);
  const T qn = boost::multiprecision::pow(q, n);
  const T hi_sqrt = mp::pow_ratio<T>(ctx.p, n, ctx.e);
  const T lo_sqrt = hi_sqrt * (T(1) - qn / (T(1) - qn));
  const T lo_sq = lo_sqrt > 0 ? T(lo_sqrt * lo_sqrt) : T(0);
  return {std::max(lo_sq, mp::pow_ratio<T>(ctx.p, 2L * (n - 1), ctx.e)), hi_sqrt * hi_sqrt};
}

enum class Outcome { done, need_precision };

template <class T>
Outcome refine_root(const QSeriesContext& ctx, int n, Root& r) {
  r = Root{};
  r.n = n;
  r.digits = std::numeric_limits<T>::digits10 + 1;
  const T q = mp::pow_ratio<T>(ctx.p, -2, ctx.e);
  const T tol = tol_for_digits<T>();
  auto phi = [&](const T& z) {
    auto s = phi11_mp<T>(q, z, tol, ctx.max_terms);
    if (!s.converged) throw std::runtime_error("phi11: series did not converge within max_terms");
    return s;
  };
  auto [lo, hi] = search_bracket<T>(ctx, n);
  r.search_lo = lo.template convert_to<double>();
  r.search_hi = hi.template convert_to<double>();
  if (!(lo < hi)) {
    r.failure = "empty bracket";
    return Outcome::done;
  }
  const auto s_lo_v = phi(lo);
  const auto s_hi_v = phi(hi);
  if (abs(s_lo_v.sum) <= s_lo_v.noise() || abs(s_hi_v.sum) <= s_hi_v.noise()) return Outcome::need_precision;
  const int s_lo = sign_of(s_lo_v.sum);
  const int s_hi = sign_of(s_hi_v.sum);
  r.sign_change = s_lo * s_hi < 0;
  if (!r.sign_change) {
    r.failure = "no sign change on bracket";
    r.value = sqrt(lo * hi).template convert_to<double>();
    return Outcome::done;
  }
  const int expect_lo = n % 2 == 0 ? 1 : -1;
  if (s_lo != expect_lo) r.failure = "sign pattern inconsistent with root index";

  const T floor_rel = boost::multiprecision::pow(T(2), -(std::numeric_limits<T>::digits - 8));
  T mid = (lo + hi) / 2;
  auto f_mid = phi(mid);
  for (int it = 0; it < 20000; ++it) {
    const T width = hi - lo;
    if (width <= floor_rel * mid) break;
    if (f_mid.sum == 0) break;
    if (sign_of(f_mid.sum) == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = (lo + hi) / 2;
    f_mid = phi(mid);
  }
  const T res = abs(f_mid.sum) + f_mid.noise();
  if (res >= T(ctx.target_tol) && f_mid.noise() >= T(ctx.target_tol) * T(1e-3)) return Outcome::need_precision;
  r.value = mid.template convert_to<double>();
  r.decimal = mid.str(std::numeric_limits<T>::digits10, std::ios_base::scientific);
  r.residual = res.template convert_to<double>();
  r.rel_width = ((hi - lo) / mid).template convert_to<double>();
  r.certified = r.sign_change && r.failure.empty() && r.residual < ctx.target_tol;
  return Outcome::done;
}

template <class T>
std::vector<T> recurrence_mp(const QSeriesContext& ctx, const T& lambda, int L) {
  if (L < 2) throw std::invalid_argument("eigvec_recurrence: L >= 2 required");
  const T P = mp::pow_ratio<T>(ctx.p, 2, ctx.e);
  const T q = T(1) / P;
  std::vector<T> phi(static_cast<std::size_t>(L));
  phi[0] = T(1);
  phi[1] = T(1) - lambda;
  T qpow(1);  // P^(-(l-1))
  for (int l = 1; l + 1 < L; ++l) {
    const auto i = static_cast<std::size_t>(l);
    phi[i + 1] = ((T(1) + P) * phi[i] - phi[i - 1] - lambda * qpow * phi[i]) / P;
    qpow *= q;
  }
  return phi;
}

// Coefficients from the closed product form (k >= 2), c(2) = c2.
template <class T>
std::vector<T> series_c_mp(const QSeriesContext& ctx, const T& lambda, int K, const T& c2) {
  std::vector<T> c;
  if (K < 1) return c;
  const T q = mp::pow_ratio<T>(ctx.p, -2, ctx.e);
  const T P = T(1) / q;
  c.push_back(c2);
  T prod_sq(1);  // prod_{j=2}^{k-1} (p^(2j/e) - 1)^2
  for (int k = 2; k <= K; ++k) {
    if (k >= 3) {
      const T fj = mp::pow_ratio<T>(ctx.p, 2L * (k - 1), ctx.e) - T(1);
      prod_sq *= fj * fj;
    }
    const T base = -lambda / (T(1) - q);
    T val = boost::multiprecision::pow(base, k - 1) * c2 *
            mp::pow_ratio<T>(ctx.p, static_cast<long>(k) * (k - 1), ctx.e) *
            boost::multiprecision::pow(P - T(1), k - 2) /
            (prod_sq * (mp::pow_ratio<T>(ctx.p, 2L * k, ctx.e) - T(1)));
    c.push_back(val);
  }
  return c;
}

template <class T>
std::vector<T> reconstruct_mp(const QSeriesContext& ctx, const std::vector<T>& c, int L) {
  const T q = mp::pow_ratio<T>(ctx.p, -2, ctx.e);
  std::vector<T> out(static_cast<std::size_t>(std::max(L, 0)), T(0));
  for (int l = 0; l < L; ++l) {
    const T ql = boost::multiprecision::pow(q, l);
    T qlk = ql;  // q^(l k)
    T s(0);
    for (const T& ck : c) {
      s += ck * qlk;
      qlk *= ql;
    }
    out[static_cast<std::size_t>(l)] = s;
  }
  return out;
}

template <class T>
std::vector<double> to_double(const std::vector<T>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const T& x : v) out.push_back(x.template convert_to<double>());
  return out;
}

}  // namespace

QSeriesContext QSeriesContext::make(const FieldParams& params, double target_tol) {
  QSeriesContext c;
  c.p = params.p;
  c.e = params.e;
  c.target_tol = target_tol;
  return c;
}

double q_pochhammer(double q, int n) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q_pochhammer: 0 < q < 1 required");
  if (n < 0) throw std::invalid_argument("q_pochhammer: n >= 0 required");
  double prod = 1.0;
  double qk = 1.0;
  for (int k = 1; k <= n; ++k) {
    qk *= q;
    prod *= 1.0 - qk;
  }
  return prod;
}

int working_digits(const QSeriesContext& ctx, double z) {
  const double lq = std::log(ctx.q());
  const double lz = std::log(std::max(std::abs(z), 1.0));
  double best = 0.0;
  double log_poch = 0.0;
  double qk = 1.0;
  for (int n = 1; n <= ctx.max_terms; ++n) {
    qk *= ctx.q();
    log_poch += std::log1p(-qk);
    const double lt = n * lz + 0.5 * n * (n - 1) * lq - 2.0 * log_poch;
    best = std::max(best, lt);
    if (lt < best - 50.0) break;
  }
  return static_cast<int>(std::ceil(best / std::log(10.0))) + 45;
}

SeriesValue phi11(const QSeriesContext& ctx, double z) {
  const int digits = working_digits(ctx, z);
  return mp::with_tier(digits, [&]<class T>(std::type_identity<T>) {
    const T q = mp::pow_ratio<T>(ctx.p, -2, ctx.e);
    auto s = phi11_mp<T>(q, T(z), T(ctx.target_tol), ctx.max_terms);
    SeriesValue out;
    out.value = s.sum.template convert_to<double>();
    out.tail_bound = s.tail.template convert_to<double>();
    out.terms_used = s.terms;
    out.converged = s.converged;
    return out;
  });
}

Bracket estimate_bracket(const QSeriesContext& ctx, int n) {
  if (n < 1) throw std::invalid_argument("estimate_bracket: n >= 1 required");
  const double qn = std::pow(ctx.q(), n);
  const double r = qn / (1.0 - qn);
  const double hi = pow_ratio(ctx.p, n, ctx.e);
  return Bracket{hi * (1.0 - r), hi};
}

bool RootTable::all_certified() const {
  return std::all_of(roots.begin(), roots.end(), [](const Root& r) { return r.certified; });
}

std::vector<double> RootTable::values() const {
  std::vector<double> v;
  for (const Root& r : roots) v.push_back(r.value);
  return v;
}

RootTable find_roots(const QSeriesContext& ctx, int n_roots) {
  if (n_roots < 0) throw std::invalid_argument("find_roots: n_roots >= 0 required");
  RootTable table;
  table.ctx = ctx;
  for (int n = 0; n < n_roots; ++n) {
    const double hi = n == 0 ? 1.0 : std::pow(pow_ratio(ctx.p, n, ctx.e), 2);
    int digits = working_digits(ctx, hi);
    Root root;
    for (;;) {
      const int tier = mp::tier_for(digits);
      const Outcome o = mp::with_tier(tier, [&]<class T>(std::type_identity<T>) {
        return refine_root<T>(ctx, n, root);
      });
      if (o == Outcome::done) break;
      if (tier >= mp::kTiers[std::size(mp::kTiers) - 1]) {
        root.failure = "precision exhausted";
        break;
      }
      digits = tier + 1;
    }
    table.roots.push_back(root);
  }
  return table;
}

std::vector<double> eigvec_recurrence(const QSeriesContext& ctx, double lambda, int L) {
  const int digits = working_digits(ctx, lambda);
  return mp::with_tier(digits, [&]<class T>(std::type_identity<T>) {
    return to_double(recurrence_mp<T>(ctx, T(lambda), L));
  });
}

std::vector<double> eigvec_recurrence(const QSeriesContext& ctx, const Root& root, int L) {
  if (root.decimal.empty()) throw std::invalid_argument("eigvec_recurrence: root was not refined");
  return mp::with_tier(root.digits, [&]<class T>(std::type_identity<T>) {
    return to_double(recurrence_mp<T>(ctx, T(root.decimal), L));
  });
}

double tail_mass(const std::vector<double>& phi) {
  double s = 0.0;
  const std::size_t L = phi.size();
  for (std::size_t l = L / 2 + 1; l < L; ++l) s += phi[l] * phi[l];
  return s;
}

std::vector<double> eigvec_series_c(const QSeriesContext& ctx, double lambda, int K, double c2) {
  const int digits = working_digits(ctx, lambda);
  return mp::with_tier(digits, [&]<class T>(std::type_identity<T>) {
    return to_double(series_c_mp<T>(ctx, T(lambda), K, T(c2)));
  });
}

std::vector<double> series_reconstruct(const QSeriesContext& ctx, const std::vector<double>& c, int L) {
  using T = mp::Real<50>;
  std::vector<T> cm(c.begin(), c.end());
  return to_double(reconstruct_mp<T>(ctx, cm, L));
}

EigvecCheck check_eigenvector(const QSeriesContext& ctx, const Root& root, int L, int l_max) {
  if (root.decimal.empty()) throw std::invalid_argument("check_eigenvector: root was not refined");
  if (l_max + 1 > L) throw std::invalid_argument("check_eigenvector: l_max must be below L");
  return mp::with_tier(root.digits, [&]<class T>(std::type_identity<T>) {
    const T lambda(root.decimal);
    const auto phi = recurrence_mp<T>(ctx, lambda, L);
    EigvecCheck out;
    out.n = root.n;
    T tm(0);
    for (std::size_t l = phi.size() / 2 + 1; l < phi.size(); ++l) tm += phi[l] * phi[l];
    out.tail_mass = tm.template convert_to<double>();

    // Grow K until the coefficients fall below working precision.
    const T eps = tol_for_digits<T>() * T(1e-10);
    int K = 8;
    std::vector<T> c;
    for (;;) {
      c = series_c_mp<T>(ctx, lambda, K, T(1));
      T cmax(0);
      for (const T& v : c) cmax = std::max(cmax, T(abs(v)));
      if (abs(c.back()) < eps * cmax || K >= ctx.max_terms) break;
      K *= 2;
    }
    out.terms = K;
    const auto s = reconstruct_mp<T>(ctx, c, l_max + 1);
    const T scale = phi[1] / s[1];
    T max_phi(0), max_diff(0);
    for (int l = 0; l <= l_max; ++l) {
      const auto i = static_cast<std::size_t>(l);
      max_phi = std::max(max_phi, T(abs(phi[i])));
      max_diff = std::max(max_diff, T(abs(scale * s[i] - phi[i])));
    }
    out.scale = scale.template convert_to<double>();
    out.rel_error = (max_diff / max_phi).template convert_to<double>();
    return out;
  });
}

}  // namespace lfs
