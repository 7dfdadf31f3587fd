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
#include <set>

#include "lfs/operators.hpp"
#include "lfs/seminorms.hpp"
#include "support.hpp"

using namespace lfs;

namespace {

// All-pairs quotient over depth-N centers plus pi^N, with points written as
// digit strings of length N + 1.
double brute_force_lipschitz(const TestFunction& a, const TreeWindow& w) {
  const FieldParams& pr = w.params();
  const int N = w.depth();
  std::vector<Center> pts;
  for (std::uint64_t r = 0; r < w.level_size(N); ++r) pts.push_back(w.center(Vertex{N, r}).resized(N + 1));
  pts.push_back(Center::uniformizer_power(0, N, N + 1));
  std::vector<double> vals;
  for (const Center& c : pts) vals.push_back(a(c));
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, std::abs(vals[i] - vals[j]) / dist(pr, pts[i], pts[j]));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("library contents") {
  for (const FieldParams& pr : test::standard_params()) {
    const auto lib = testfn_library(pr);
    CHECK(lib.size() >= 10);
    std::set<std::string> ids;
    for (const auto& f : lib) ids.insert(f.id);
    CHECK(ids.size() == lib.size());
  }
  const FieldParams pr = FieldParams::make(3, 1, 1);
  const Center x(0, {2, 1, 0, 1});
  const auto a = testfn_library(pr, 1);
  const auto b = testfn_library(pr, 1);
  const auto c = testfn_library(pr, 2);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i](x) == b[i](x));
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs = differs || a[i](x) != c[i](x);
  CHECK(differs);
}

TEST_CASE("tree Lipschitz computation matches all pairs") {
  for (const FieldParams& pr : test::standard_params()) {
    const TreeWindow w = TreeWindow::ring(pr, pr.residue_size() == 4 ? 4 : 6);
    for (const TestFunction& a : testfn_library(pr)) {
      CHECK(lipschitz_depth(a, w) == doctest::Approx(brute_force_lipschitz(a, w)).epsilon(1e-13));
    }
  }
}

TEST_CASE("depth-N Lipschitz constant reaches the known value") {
  for (const FieldParams& pr : test::standard_params()) {
    const TreeWindow w = TreeWindow::ring(pr, 8);
    for (const TestFunction& a : testfn_library(pr)) {
      if (!a.known_lipschitz) continue;
      INFO(a.id);
      CHECK(lipschitz_depth(a, w) == doctest::Approx(*a.known_lipschitz).epsilon(1e-13));
    }
  }
}

TEST_CASE("row-sum formula equals the commutator norm") {
  for (const FieldParams& pr : test::standard_params()) {
    const TreeWindow w = TreeWindow::ring(pr, 5);
    for (const TestFunction& a : testfn_library(pr)) {
      INFO(pr.to_string(), " ", a.id);
      CHECK(spectral_seminorm_formula(a, w) == doctest::Approx(commutator_norm(w, a)).epsilon(1e-12));
    }
  }
}

TEST_CASE("separate zero-ball families agree only for a binary alphabet") {
  const auto abs_fn = [](const FieldParams& pr) {
    TestFunction a;
    a.eval = [pr](const Center& x) { return norm(pr, x); };
    return a;
  };
  const FieldParams binary = FieldParams::make(2, 1, 1);
  const TreeWindow wb = TreeWindow::ring(binary, 6);
  CHECK(spectral_seminorm_displayed(abs_fn(binary), wb) == doctest::Approx(spectral_seminorm_formula(abs_fn(binary), wb)));
  const FieldParams ternary = FieldParams::make(3, 1, 1);
  const TreeWindow wt = TreeWindow::ring(ternary, 6);
  // |x|: zero row (1/3)(2/3)^2 against (2/3)(2/3)^2
  CHECK(spectral_seminorm_formula(abs_fn(ternary), wt) == doctest::Approx(std::sqrt((4.0 / 9.0) / 3.0)));
  CHECK(spectral_seminorm_displayed(abs_fn(ternary), wt) == doctest::Approx(std::sqrt(8.0 / 27.0)));
}

TEST_CASE("constants and the two-sided comparison") {
  const SeminormConstants c = seminorm_constants(FieldParams::make(2, 1, 1));
  CHECK(c.lower == doctest::Approx(0.25 / std::sqrt(2.0)));
  CHECK(c.upper == doctest::Approx(std::sqrt(0.5)));
  for (const FieldParams& pr : test::standard_params()) {
    const TreeWindow w = TreeWindow::ring(pr, 8);
    for (const TestFunction& a : testfn_library(pr)) {
      const SeminormReport r = check_norm_comparison(a, w);
      INFO(pr.to_string(), " ", a.id);
      CHECK(r.lower_ok);
      CHECK(r.upper_ok);
      CHECK(r.equality_ok);
    }
  }
}

TEST_CASE("seminorms require a ring window") {
  const FieldParams pr = FieldParams::make(2, 1, 1);
  const auto lib = testfn_library(pr);
  CHECK_THROWS_AS(lipschitz_depth(lib[0], TreeWindow::field(pr, 1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(spectral_seminorm_formula(lib[0], TreeWindow::ring(pr, 0)), std::invalid_argument);
}
