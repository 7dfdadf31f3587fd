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

#include "lfs/kernels.hpp"

#include <cstdint>
#include <stdexcept>

namespace lfs::kernels {

namespace {

using Idx = std::int64_t;
constexpr Idx kParallelMin = 2048;

void check_sizes(const TreeWindow& w, std::size_t a, std::size_t b) {
  if (a != w.size() || b != w.size()) throw std::invalid_argument("kernel: vector size does not match window");
}

}  // namespace

void apply_D(const TreeWindow& w, Truncation t, std::span<const double> x, std::span<double> y) {
  check_sizes(w, x.size(), y.size());
  const FieldParams& pr = w.params();
  const Idx q = w.arity();
  const double inv_q = 1.0 / static_cast<double>(q);
  for (int n = w.min_level(); n <= w.max_level(); ++n) {
    const double c = pr.pow_e(n);
    const Idx off = static_cast<Idx>(w.level_offset(n));
    const Idx cnt = static_cast<Idx>(w.level_size(n));
    if (n == w.max_level()) {
      const double cd = t == Truncation::dirichlet ? c : 0.0;
      for (Idx r = 0; r < cnt; ++r) y[off + r] = cd * x[off + r];
      continue;
    }
    const Idx coff = static_cast<Idx>(w.level_offset(n + 1));
#pragma omp parallel for schedule(static) if (cnt >= kParallelMin)
    for (Idx r = 0; r < cnt; ++r) {
      double s = 0.0;
      const Idx base = coff + r * q;
      for (Idx k = 0; k < q; ++k) s += x[base + k];
      y[off + r] = c * (x[off + r] - inv_q * s);
    }
  }
}

void apply_Dstar(const TreeWindow& w, Truncation t, std::span<const double> x, std::span<double> y) {
  check_sizes(w, x.size(), y.size());
  const FieldParams& pr = w.params();
  const Idx q = w.arity();
  for (int n = w.min_level(); n <= w.max_level(); ++n) {
    double c = pr.pow_e(n);
    if (n == w.max_level() && t == Truncation::open) c = 0.0;
    const Idx off = static_cast<Idx>(w.level_offset(n));
    const Idx cnt = static_cast<Idx>(w.level_size(n));
    if (n == w.min_level()) {
      for (Idx r = 0; r < cnt; ++r) y[off + r] = c * x[off + r];
      continue;
    }
    const double cp = pr.pow_e(n - 1);
    const Idx poff = static_cast<Idx>(w.level_offset(n - 1));
#pragma omp parallel for schedule(static) if (cnt >= kParallelMin)
    for (Idx r = 0; r < cnt; ++r) y[off + r] = c * x[off + r] - cp * x[poff + r / q];
  }
}

void solve_D(const TreeWindow& w, std::span<const double> y, std::span<double> x) {
  check_sizes(w, x.size(), y.size());
  const FieldParams& pr = w.params();
  const Idx q = w.arity();
  const double inv_q = 1.0 / static_cast<double>(q);
  for (int n = w.max_level(); n >= w.min_level(); --n) {
    const double ic = 1.0 / pr.pow_e(n);
    const Idx off = static_cast<Idx>(w.level_offset(n));
    const Idx cnt = static_cast<Idx>(w.level_size(n));
    if (n == w.max_level()) {
      for (Idx r = 0; r < cnt; ++r) x[off + r] = ic * y[off + r];
      continue;
    }
    const Idx coff = static_cast<Idx>(w.level_offset(n + 1));
#pragma omp parallel for schedule(static) if (cnt >= kParallelMin)
    for (Idx r = 0; r < cnt; ++r) {
      double s = 0.0;
      const Idx base = coff + r * q;
      for (Idx k = 0; k < q; ++k) s += x[base + k];
      x[off + r] = ic * y[off + r] + inv_q * s;
    }
  }
}

void solve_Dstar(const TreeWindow& w, std::span<const double> y, std::span<double> x) {
  check_sizes(w, x.size(), y.size());
  const FieldParams& pr = w.params();
  const Idx q = w.arity();
  for (int n = w.min_level(); n <= w.max_level(); ++n) {
    const double ic = 1.0 / pr.pow_e(n);
    const Idx off = static_cast<Idx>(w.level_offset(n));
    const Idx cnt = static_cast<Idx>(w.level_size(n));
    if (n == w.min_level()) {
      for (Idx r = 0; r < cnt; ++r) x[off + r] = ic * y[off + r];
      continue;
    }
    const double cp = pr.pow_e(n - 1);
    const Idx poff = static_cast<Idx>(w.level_offset(n - 1));
#pragma omp parallel for schedule(static) if (cnt >= kParallelMin)
    for (Idx r = 0; r < cnt; ++r) x[off + r] = ic * (y[off + r] + cp * x[poff + r / q]);
  }
}

void apply_commutator(const TreeWindow& w, std::span<const double> a, std::span<const double> x,
                      std::span<double> y) {
  check_sizes(w, x.size(), y.size());
  if (a.size() != w.size()) throw std::invalid_argument("kernel: coefficient size does not match window");
  const FieldParams& pr = w.params();
  const Idx q = w.arity();
  const double inv_q = 1.0 / static_cast<double>(q);
  for (int n = w.min_level(); n <= w.max_level(); ++n) {
    const Idx off = static_cast<Idx>(w.level_offset(n));
    const Idx cnt = static_cast<Idx>(w.level_size(n));
    if (n == w.max_level()) {
      for (Idx r = 0; r < cnt; ++r) y[off + r] = 0.0;
      continue;
    }
    const double c = pr.pow_e(n) * inv_q;
    const Idx coff = static_cast<Idx>(w.level_offset(n + 1));
#pragma omp parallel for schedule(static) if (cnt >= kParallelMin)
    for (Idx r = 0; r < cnt; ++r) {
      const double an = a[off + r];
      double s = 0.0;
      const Idx base = coff + r * q;
      for (Idx k = 0; k < q; ++k) s += (an - a[base + k]) * x[base + k];
      y[off + r] = c * s;
    }
  }
}

namespace reference {

void apply_D(const TreeWindow& w, Truncation t, std::span<const double> x, std::span<double> y) {
  check_sizes(w, x.size(), y.size());
  const double qres = w.params().residue_size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Vertex v = w.vertex(i);
    const double c = w.params().pow_e(v.level);
    if (v.level == w.max_level()) {
      y[i] = t == Truncation::dirichlet ? c * x[i] : 0.0;
      continue;
    }
    double avg = 0.0;
    for (const Vertex& ch : w.children(v)) avg += x[w.index(ch)];
    y[i] = c * (x[i] - avg / qres);
  }
}

void apply_Dstar(const TreeWindow& w, Truncation t, std::span<const double> x, std::span<double> y) {
  check_sizes(w, x.size(), y.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Vertex v = w.vertex(i);
    const bool dropped = t == Truncation::open && v.level == w.max_level();
    double val = dropped ? 0.0 : w.params().pow_e(v.level) * x[i];
    if (auto par = w.parent(v)) val -= w.params().pow_e(par->level) * x[w.index(*par)];
    y[i] = val;
  }
}

void solve_D(const TreeWindow& w, std::span<const double> y, std::span<double> x) {
  check_sizes(w, x.size(), y.size());
  const double qres = w.params().residue_size();
  for (std::size_t i = w.size(); i-- > 0;) {
    const Vertex v = w.vertex(i);
    double avg = 0.0;
    for (const Vertex& ch : w.children(v)) avg += x[w.index(ch)];
    x[i] = y[i] / w.params().pow_e(v.level) + avg / qres;
  }
}

void solve_Dstar(const TreeWindow& w, std::span<const double> y, std::span<double> x) {
  check_sizes(w, x.size(), y.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Vertex v = w.vertex(i);
    double rhs = y[i];
    if (auto par = w.parent(v)) rhs += w.params().pow_e(par->level) * x[w.index(*par)];
    x[i] = rhs / w.params().pow_e(v.level);
  }
}

void apply_commutator(const TreeWindow& w, std::span<const double> a, std::span<const double> x,
                      std::span<double> y) {
  check_sizes(w, x.size(), y.size());
  const double qres = w.params().residue_size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Vertex v = w.vertex(i);
    double s = 0.0;
    for (const Vertex& ch : w.children(v)) {
      const std::size_t j = w.index(ch);
      s += (a[i] - a[j]) * x[j];
    }
    y[i] = w.params().pow_e(v.level) * s / qres;
  }
}

}  // namespace reference
}  // namespace lfs::kernels
