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

#ifndef LFS_QSPECIAL_HPP
#define LFS_QSPECIAL_HPP

#include <string>
#include <vector>

#include "lfs/field_model.hpp"

namespace lfs {

/// Series settings for q = p^(-2/e). Evaluation runs in MPFR arithmetic at a
/// precision picked from the size of the largest series term.
struct QSeriesContext {
  int p = 2;
  int e = 1;
  double target_tol = 1e-10;
  int max_terms = 4000;

  static QSeriesContext make(const FieldParams& params, double target_tol = 1e-10);
  double q() const { return pow_ratio(p, -2, e); }
};

/// (q; q)_n = prod_{k=1}^n (1 - q^k).
double q_pochhammer(double q, int n);

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;  // bound on the omitted terms
  int terms_used = 0;
  bool converged = false;
};

/// sum_n (-1)^n q^(n(n-1)/2) z^n / ((q;q)_n)^2.
SeriesValue phi11(const QSeriesContext& ctx, double z);

/// Decimal digits of working precision chosen for arguments up to |z|.
int working_digits(const QSeriesContext& ctx, double z);

struct Root {
  int n = 0;
  double value = 0.0;
  std::string decimal;       // enclosure midpoint at working precision
  double residual = 0.0;     // |phi11| at the midpoint
  double search_lo = 0.0;    // bracket that was searched
  double search_hi = 0.0;
  double rel_width = 0.0;    // final enclosure width / value
  bool sign_change = false;
  bool certified = false;    // sign change and residual < target_tol
  int digits = 0;
  std::string failure;       // empty unless the search failed
};

struct RootTable {
  QSeriesContext ctx;
  std::vector<Root> roots;

  bool all_certified() const;
  std::vector<double> values() const;
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// [p^(n/e)(1 - r_n), p^(n/e)] with r_n = q^n / (1 - q^n), n >= 1.
Bracket estimate_bracket(const QSeriesContext& ctx, int n);

/// Roots lambda_0 < ... < lambda_{n_roots-1} by bisection. lambda_0 is searched
/// in (1e-12, 1]; lambda_n for n >= 1 in
/// [max(lo_n^2, p^(2(n-1)/e)), p^(2n/e)] where lo_n is estimate_bracket(n).lo.
/// A bracket without a sign change is reported on that root, not widened.
RootTable find_roots(const QSeriesContext& ctx, int n_roots);

/// phi(0) = 1, phi(1) = 1 - lambda,
/// phi(l+1) = ((1 + p^(2/e)) phi(l) - phi(l-1) - lambda p^(-2(l-1)/e) phi(l)) / p^(2/e).
/// Returns phi(0..L-1).
std::vector<double> eigvec_recurrence(const QSeriesContext& ctx, double lambda, int L);
/// Same recurrence run at the multiprecision root.
std::vector<double> eigvec_recurrence(const QSeriesContext& ctx, const Root& root, int L);

/// sum_{l > L/2} phi(l)^2 for phi of length L.
double tail_mass(const std::vector<double>& phi);

/// c(2), c(4), ..., c(2K) for c(2) = c2 and, for k >= 2,
/// c(2k) = (-lambda/(1-q))^(k-1) c2 p^(k(k-1)/e) (p^(2/e)-1)^(k-2)
///         / [ prod_{j=2}^{k-1} (p^(2j/e)-1)^2 * (p^(2k/e)-1) ].
std::vector<double> eigvec_series_c(const QSeriesContext& ctx, double lambda, int K, double c2);

/// phi(l) = sum_k c(2k) q^(l k) for l = 0..L-1.
std::vector<double> series_reconstruct(const QSeriesContext& ctx, const std::vector<double>& c, int L);

struct EigvecCheck {
  int n = 0;
  double tail_mass = 0.0;   // recurrence, L terms
  double rel_error = 0.0;   // max_{l<=l_max} |scale*S(l) - phi(l)| / max_{l<=l_max} |phi(l)|
  double scale = 0.0;       // c(2) matching phi(1)
  int terms = 0;            // series terms used
};

/// Recurrence versus series at a refined root, all in multiprecision.
EigvecCheck check_eigenvector(const QSeriesContext& ctx, const Root& root, int L = 80, int l_max = 10);

}  // namespace lfs

#endif  // LFS_QSPECIAL_HPP
