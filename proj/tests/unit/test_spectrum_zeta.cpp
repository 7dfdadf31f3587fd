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

#include <cmath>
#include <limits>
#include <numbers>

#include "lfs/errors.hpp"
#include "lfs/operators.hpp"
#include "lfs/spectrum_zeta.hpp"
#include "support.hpp"

using namespace lfs;

TEST_CASE("full spectrum table") {
  const FieldParams pr = FieldParams::make(2, 1, 1);
  const SpectrumTable t = full_spectrum(pr, 3, 5);
  REQUIRE(t.entries.size() == 24);
  for (std::size_t i = 1; i < t.entries.size(); ++i) CHECK(t.entries[i].value >= t.entries[i - 1].value);
  for (const auto& e : t.entries) {
    CHECK(e.value == doctest::Approx(std::pow(4.0, e.m) * e.lambda).epsilon(1e-15));
    CHECK(e.multiplicity == count_g(pr, e.m));
  }
}

TEST_CASE("uncertified roots are refused") {
  const FieldParams pr = FieldParams::make(2, 1, 1);
  RootTable t = find_roots(QSeriesContext::make(pr), 3);
  t.roots[1].certified = false;
  CHECK_THROWS_AS(full_spectrum(pr, 1, 2, t), NumericalError);
  CHECK_THROWS_AS(full_spectrum(pr, 1, 5, t), std::invalid_argument);
}

TEST_CASE("cluster sizes") {
  CHECK(cluster_sizes({1.0, 2.0, 2.0, 2.0 + 1e-12, 5.0}, 1e-9) == std::vector<int>{1, 3, 1});
  CHECK(cluster_sizes({}, 1e-9).empty());
}

TEST_CASE("Dirichlet-truncated spectrum converges to the analytic multiset") {
  SUBCASE("(2,1,1) at depth 13") {
    const SpectrumValidation v = validate_spectrum(FieldParams::make(2, 1, 1), 13);
    CHECK(v.error.empty());
    CHECK(v.multiplicity_match);
    CHECK(v.max_rel_error < 1e-6);
    CHECK(v.drift < 1e-8);
  }
  SUBCASE("error shrinks with depth") {
    const FieldParams pr = FieldParams::make(2, 2, 1);
    const double e6 = validate_spectrum(pr, 6).max_rel_error;
    const double e9 = validate_spectrum(pr, 9).max_rel_error;
    const double e12 = validate_spectrum(pr, 12).max_rel_error;
    CHECK(e9 < e6);
    CHECK(e12 < e9);
  }
  SUBCASE("a corrupted eigenvalue is caught") {
    ValidationOptions opt;
    opt.corrupt = 1e-3;
    const SpectrumValidation v = validate_spectrum(FieldParams::make(2, 1, 1), 13, opt);
    CHECK_FALSE(v.pass());
    CHECK(v.max_rel_error > 9e-4);
  }
  SUBCASE("too shallow a window is reported") {
    const SpectrumValidation v = validate_spectrum(FieldParams::make(2, 1, 1), 2);
    CHECK(v.error.rfind("cutoff too low", 0) == 0);
    CHECK_FALSE(v.pass());
  }
}

TEST_CASE("Schatten m-sum") {
  const FieldParams pr = FieldParams::make(2, 1, 1);
  for (double s : {0.75, 1.0, 2.0, 3.5}) {
    const auto closed = schatten_m_sum_closed(pr, s);
    REQUIRE(closed.has_value());
    CHECK(schatten_m_sum(pr, s, 400) == doctest::Approx(*closed).epsilon(1e-12));
  }
  CHECK(schatten_m_sum_closed(pr, 1.0) == doctest::Approx(0.5));
  CHECK_FALSE(schatten_m_sum_closed(pr, 0.5).has_value());
  // at s = ef/2 every shell contributes 1 - p^(-f)
  CHECK(schatten_m_sum(pr, 0.5, 100) == doctest::Approx(50.0));

  const RootTable roots = find_roots(QSeriesContext::make(pr), 21);
  const SchattenResult r = schatten_partial(pr, 1.0, 60, 20, roots);
  CHECK_FALSE(r.m_divergent);
  CHECK(r.trace == doctest::Approx(8.0 / 3.0).epsilon(1e-10));
  CHECK(schatten_partial(pr, 0.5, 10, 20, roots).m_divergent);
}

TEST_CASE("zeta function") {
  const FieldParams pr = FieldParams::make(2, 1, 1);
  const RootTable roots = find_roots(QSeriesContext::make(pr), 20);

  SUBCASE("trace of the inverse at s = 1 is the Hilbert-Schmidt total") {
    const ZetaValue z = zeta_DR(pr, 1.0, roots, 20);
    CHECK_FALSE(z.pole);
    CHECK(z.value.real() == doctest::Approx(hs_total_partial(80, pr)).epsilon(1e-11));
  }
  SUBCASE("product structure") {
    for (double s : {0.75, 1.0, 2.5, 7.0}) {
      const auto d0 = zeta_D0(pr, s, roots, 20);
      const auto dr = zeta_DR(pr, s, roots, 20);
      CHECK(std::abs(dr.value - zeta_factor(pr, s) * d0.value) <= 1e-12 * std::abs(dr.value));
    }
  }
  SUBCASE("pole at s = ef/2") {
    const ZetaValue z = zeta_DR(pr, 0.5, roots, 20);
    CHECK(z.pole);
    CHECK(std::isnan(z.value.real()));
    CHECK_FALSE(zeta_DR(pr, 0.5 + 1e-6, roots, 20).pole);
  }
  SUBCASE("conjugation symmetry") {
    const std::complex<double> s(1.3, 2.1);
    CHECK(std::abs(zeta_D0(pr, std::conj(s), roots, 20).value - std::conj(zeta_D0(pr, s, roots, 20).value)) < 1e-14);
  }
  SUBCASE("tail bound decreases with more roots") {
    double prev = std::numeric_limits<double>::infinity();
    for (int n0 = 1; n0 <= 20; ++n0) {
      const double b = zeta_tail_bound(pr, 1.0, n0);
      CHECK(b < prev);
      prev = b;
    }
    // and dominates the actual remainder
    const double rest = zeta_D0(pr, 1.0, roots, 20).value.real() - zeta_D0(pr, 1.0, roots, 5).value.real();
    CHECK(rest <= zeta_tail_bound(pr, 1.0, 5));
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(zeta_D0(pr, -1.0, roots, 5), std::invalid_argument);
    CHECK_THROWS_AS(zeta_D0(pr, 1.0, roots, 0), std::invalid_argument);
  }
}

TEST_CASE("symbolic pole and zero lattices") {
  for (const FieldParams& pr : test::standard_params()) {
    for (const SymbolicPoint& s : factor_poles(pr, -3, 3)) CHECK(is_factor_pole(pr, s.value, 1e-9));
    for (const SymbolicPoint& s : factor_zeros(pr, -3, 3)) {
      if (s.k != 0) CHECK(std::abs(zeta_factor(pr, s.value)) < 1e-12);
    }
    const auto ref = continuation_poles_reference(pr, 1, 1);
    CHECK(ref[0].value.imag() == doctest::Approx(2.0 * std::numbers::pi * pr.e / std::log(pr.p)));
  }
}
