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

#include <stdexcept>

#include "lfs/tree.hpp"
#include "support.hpp"

using namespace lfs;

TEST_CASE("ring window sizes") {
  for (const FieldParams& pr : test::standard_params()) {
    const TreeWindow w = TreeWindow::ring(pr, 5);
    std::size_t expect = 0, level = 1;
    for (int n = 0; n <= 5; ++n) {
      CHECK(w.level_size(n) == level);
      CHECK(w.level_offset(n) == expect);
      expect += level;
      level *= pr.residue_size();
    }
    CHECK(w.size() == expect);
    CHECK(w.min_level() == 0);
    CHECK(w.depth() == 5);
  }
}

TEST_CASE("field window covers levels -M..N") {
  const FieldParams pr = FieldParams::make(3, 1, 1);
  const TreeWindow w = TreeWindow::field(pr, 2, 3);
  CHECK(w.min_level() == -2);
  CHECK(w.spatial_cutoff() == 2);
  CHECK(w.num_levels() == 6);
  CHECK(w.level_size(-2) == 1);
  CHECK(w.level_size(3) == 243);
  const Center c = w.center(Vertex{1, 5});
  CHECK(c.start() == -2);
  CHECK(c.depth() == 1);
  CHECK_THROWS_AS(w.level_size(4), std::out_of_range);
}

TEST_CASE("index, vertex, center and vertex_of are mutually inverse") {
  for (const FieldParams& pr : test::standard_params()) {
    for (const TreeWindow& w : {TreeWindow::ring(pr, 4), TreeWindow::field(pr, 1, 3)}) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        const Vertex v = w.vertex(i);
        CHECK(w.index(v) == i);
        CHECK(w.vertex_of(w.center(v)) == v);
      }
    }
  }
}

TEST_CASE("children and parent are consistent with digit appending") {
  const FieldParams pr = FieldParams::make(2, 1, 2);
  const TreeWindow w = TreeWindow::field(pr, 1, 3);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Vertex v = w.vertex(i);
    const auto kids = w.children(v);
    if (v.level == w.max_level()) {
      CHECK(kids.empty());
    } else {
      REQUIRE(kids.size() == 4);
      for (std::size_t s = 0; s < kids.size(); ++s) {
        CHECK(kids[s].rank == v.rank * 4 + s);
        CHECK(w.center(kids[s]) == w.center(v).appended(static_cast<Digit>(s)));
        CHECK(w.parent(kids[s]) == v);
      }
    }
  }
  CHECK_FALSE(w.parent(Vertex{-1, 0}).has_value());
}

TEST_CASE("vertex_of rejects foreign centers") {
  const TreeWindow w = TreeWindow::ring(FieldParams::make(2, 1, 1), 3);
  CHECK_THROWS_AS(w.vertex_of(Center(-1, {1})), std::invalid_argument);
  CHECK_THROWS_AS(w.vertex_of(Center(0, {1, 0, 0, 1})), std::invalid_argument);
}

TEST_CASE("weighted inner product") {
  const FieldParams pr = FieldParams::make(3, 1, 1);
  const TreeWindow w = TreeWindow::ring(pr, 3);
  const Vertex v{2, 4};
  const auto e = WeightedVector<double>::indicator(w, v);
  CHECK(weighted_inner(e, e) == doctest::Approx(1.0 / 9.0));

  WeightedVector<double> a(w, test::random_vector(w.size(), 1));
  WeightedVector<double> b(w, test::random_vector(w.size(), 2));
  CHECK(weighted_inner(a, b) == doctest::Approx(weighted_inner(b, a)).epsilon(1e-14));

  WeightedVector<std::complex<double>> z(w);
  z[v] = {0.0, 2.0};
  CHECK(weighted_inner(z, z).real() == doctest::Approx(4.0 / 9.0));
  CHECK(weighted_inner(z, z).imag() == 0.0);

  CHECK_THROWS_AS(weighted_inner(a, WeightedVector<double>(TreeWindow::ring(pr, 2))), std::invalid_argument);
}
