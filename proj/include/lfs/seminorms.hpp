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

#ifndef LFS_SEMINORMS_HPP
#define LFS_SEMINORMS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lfs/operators.hpp"

namespace lfs {

/// sup |a(x) - a(y)| / |x - y| over distinct points of the depth-N centers
/// together with pi^N. Exact for functions locally constant at depth <= N.
double lipschitz_depth(const TestFunction& a, const TreeWindow& w);

/// sqrt of the sup over levels n <= N-1 of
///   x != 0: (1/p^f) sum_{s != 0} |a(x) - a(x + s pi^n)|^2 p^(2n/e)
///   x  = 0: (1/p^f) [ |a(pi^n) - a(pi^(n+1))|^2 + sum_{s >= 2} |a(pi^n) - a(s pi^n)|^2 ] p^(2n/e)
/// i.e. the largest row norm of the commutator under a(0) -> a(pi^n).
double spectral_seminorm_formula(const TestFunction& a, const TreeWindow& w);

/// Variant that keeps the two zero-ball families separate: the pi^n -> pi^(n+1)
/// term weighted by (p^f - 1)/p^f and the s pi^n family weighted by 1/p^f.
/// Agrees with spectral_seminorm_formula when p^f = 2.
double spectral_seminorm_displayed(const TestFunction& a, const TreeWindow& w);

struct SeminormConstants {
  double lower = 0.0;  // (p^(1/e) - 1) / (2 p^(1/e) sqrt(p^f))
  double upper = 0.0;  // sqrt((p^f - 1) / p^f)
};
SeminormConstants seminorm_constants(const FieldParams& params);

struct SeminormReport {
  std::string id;
  int N = 0;
  double L1_depthN = 0.0;
  double LD_formula_depthN = 0.0;
  double LD_displayed_depthN = 0.0;
  double commutator_norm_depthN = 0.0;
  SeminormConstants bounds;
  bool lower_ok = false;
  bool upper_ok = false;
  bool equality_ok = false;  // |LD_formula - commutator norm| <= eq_tol

  bool pass() const { return lower_ok && upper_ok && equality_ok; }
};

SeminormReport check_norm_comparison(const TestFunction& a, const TreeWindow& w, double eq_tol = 1e-8);

/// Constants, |x|, distances to fixed centers, ball indicators, seeded random
/// locally constant functions, |x|^2 and decaying functions 1/(1+|x|^alpha).
std::vector<TestFunction> testfn_library(const FieldParams& params, std::uint64_t seed = 20260101ULL);

}  // namespace lfs

#endif  // LFS_SEMINORMS_HPP
