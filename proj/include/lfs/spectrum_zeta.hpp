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

#ifndef LFS_SPECTRUM_ZETA_HPP
#define LFS_SPECTRUM_ZETA_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lfs/field_model.hpp"
#include "lfs/qspecial.hpp"

namespace lfs {

struct SpectrumEntry {
  int m = 0;
  int n = 0;
  double lambda = 0.0;  // lambda_n
  double value = 0.0;   // p^(2m/e) lambda_n
  std::uint64_t multiplicity = 0;
};

/// Eigenvalues of D*D on the ring, sorted by value with (m, n) tie-breaking.
struct SpectrumTable {
  FieldParams params;
  std::vector<SpectrumEntry> entries;
};

/// All (m, n) with m <= m_max, n <= n_max. Throws NumericalError if a needed
/// root is not certified.
SpectrumTable full_spectrum(const FieldParams& params, int m_max, int n_max, const RootTable& roots);
SpectrumTable full_spectrum(const FieldParams& params, int m_max, int n_max);

struct ValidationOptions {
  int k = 8;
  double tol = 1e-6;
  double drift_tol = 1e-8;
  double cluster_gap = 1e-9;
  bool check_drift = true;
  /// Relative perturbation applied to the lowest matrix eigenvalue
  /// (negative control for the harness).
  double corrupt = 0.0;
  std::uint64_t seed = 0x5eedULL;
};

struct SpectrumValidation {
  FieldParams params;
  int N = 0;
  int k = 0;
  double tol = 0.0;
  double cutoff = 0.0;  // p^(2(N-2)/e)
  std::string error;    // "cutoff too low" or a convergence message
  std::vector<double> matrix_values;
  std::vector<double> analytic_values;
  std::vector<int> analytic_m;
  std::vector<int> analytic_n;
  std::vector<int> matrix_clusters;    // multiplicity pattern of the matrix values
  std::vector<int> analytic_clusters;  // same for the analytic values
  double max_rel_error = 0.0;
  bool multiplicity_match = false;
  bool drift_checked = false;
  double drift = 0.0;  // relative change of the lowest eigenvalue, N vs N+2
  double drift_tol = 0.0;
  bool converged = false;

  bool values_ok() const { return error.empty() && converged && max_rel_error < tol; }
  bool drift_ok() const { return !drift_checked || drift < drift_tol; }
  bool pass() const { return values_ok() && multiplicity_match && drift_ok(); }
};

/// Lowest k eigenvalues of the Dirichlet-truncated D*D at depth N against
/// the analytic multiset below the cutoff p^(2(N-2)/e).
SpectrumValidation validate_spectrum(const FieldParams& params, int N, const ValidationOptions& opt = {});

/// Sizes of runs of sorted values whose relative gaps are below `gap`.
std::vector<int> cluster_sizes(const std::vector<double>& sorted, double gap);

/// sum_{m=1}^{m_max} p^(-2ms/e) (p^(mf) - p^((m-1)f)).
double schatten_m_sum(const FieldParams& params, double s, int m_max);
/// (1 - p^(-f)) p^(f-2s/e) / (1 - p^(f-2s/e)) for s > ef/2, empty otherwise.
std::optional<double> schatten_m_sum_closed(const FieldParams& params, double s);

struct SchattenResult {
  double s = 0.0;
  double trace = 0.0;     // (1 + m_sum) * root_sum
  double m_sum = 0.0;
  double root_sum = 0.0;  // sum_{n<=n_max} lambda_n^(-s)
  bool m_divergent = false;
};

SchattenResult schatten_partial(const FieldParams& params, double s, int m_max, int n_max, const RootTable& roots);

struct ZetaValue {
  std::complex<double> s;
  std::complex<double> value;
  int n_roots_used = 0;
  double tail_bound = 0.0;
  bool pole = false;
};

/// Bound on sum_{n >= n0} lambda_n^(-sigma) from lambda_n >= (p^(n/e)(1 - r_n))^2.
double zeta_tail_bound(const FieldParams& params, double sigma, int n0);

/// sum_{n < n_roots} lambda_n^(-s); requires Re s > 0.
ZetaValue zeta_D0(const FieldParams& params, std::complex<double> s, const RootTable& roots, int n_roots);

/// (1 - p^(-2s/e)) / (1 - p^(f - 2s/e)).
std::complex<double> zeta_factor(const FieldParams& params, std::complex<double> s);
bool is_factor_pole(const FieldParams& params, std::complex<double> s, double tol = 1e-12);

/// zeta_factor(s) * zeta_D0(s); flagged (value NaN) at a pole of the factor.
ZetaValue zeta_DR(const FieldParams& params, std::complex<double> s, const RootTable& roots, int n_roots);

struct SymbolicPoint {
  int k = 0;
  std::complex<double> value;
  std::string expr;
};

/// s = (e/2)(f - 2 pi i k / ln p).
std::vector<SymbolicPoint> factor_poles(const FieldParams& params, int k_min, int k_max);
/// s = pi i k e / ln p.
std::vector<SymbolicPoint> factor_zeros(const FieldParams& params, int k_min, int k_max);
/// s = 2 pi i k e / ln p. Reference data only: these arise from the
/// continuation of zeta_D0, which is not computed here.
std::vector<SymbolicPoint> continuation_poles_reference(const FieldParams& params, int k_min, int k_max);

}  // namespace lfs

#endif  // LFS_SPECTRUM_ZETA_HPP
