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

#ifndef LFS_TREE_HPP
#define LFS_TREE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "lfs/field_model.hpp"

namespace lfs {

struct Vertex {
  int level = 0;
  std::uint64_t rank = 0;  // position of the center within its level

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Finite window of the ball tree. Ring windows hold levels 0..N, field
/// windows levels -M..N. A vertex (n, x) is identified by the digits of x
/// from the window's first index up to n-1; ranks are lexicographic in those
/// digits, so the children of rank r are r*q + s for s = 0..q-1.
class TreeWindow {
 public:
  enum class Kind { ring, field };

  TreeWindow() = default;

  static TreeWindow ring(const FieldParams& params, int N);
  static TreeWindow field(const FieldParams& params, int M, int N);

  const FieldParams& params() const { return params_; }
  Kind kind() const { return kind_; }
  int min_level() const { return min_level_; }
  int max_level() const { return max_level_; }
  int depth() const { return max_level_; }
  int spatial_cutoff() const { return -min_level_; }
  int num_levels() const { return max_level_ - min_level_ + 1; }
  std::uint32_t arity() const { return arity_; }

  std::size_t size() const { return offsets_.back(); }
  std::size_t level_size(int n) const { return offsets_[slot(n) + 1] - offsets_[slot(n)]; }
  std::size_t level_offset(int n) const { return offsets_[slot(n)]; }
  bool contains_level(int n) const { return n >= min_level_ && n <= max_level_; }

  std::size_t index(const Vertex& v) const { return level_offset(v.level) + static_cast<std::size_t>(v.rank); }
  Vertex vertex(std::size_t idx) const;

  /// Center of the ball (digits from min_level() to level-1).
  Center center(const Vertex& v) const;
  /// Inverse of center(); throws std::invalid_argument if c is not in the window.
  Vertex vertex_of(const Center& c) const;

  /// Children ordered by appended digit; empty at the deepest level.
  std::vector<Vertex> children(const Vertex& v) const;
  std::optional<Vertex> parent(const Vertex& v) const;

  /// p^(-n f).
  double weight(int level) const { return params_.weight(level); }

  friend bool operator==(const TreeWindow& a, const TreeWindow& b) {
    return a.params_ == b.params_ && a.kind_ == b.kind_ && a.min_level_ == b.min_level_ &&
           a.max_level_ == b.max_level_;
  }

 private:
  TreeWindow(const FieldParams& params, Kind kind, int min_level, int max_level);
  std::size_t slot(int n) const {
    if (!contains_level(n)) throw std::out_of_range("level outside window");
    return static_cast<std::size_t>(n - min_level_);
  }

  FieldParams params_;
  Kind kind_ = Kind::ring;
  int min_level_ = 0;
  int max_level_ = 0;
  std::uint32_t arity_ = 2;
  std::vector<std::size_t> offsets_{0};
};

/// Function on the vertices of a window, living in the weighted l^2 space.
template <class T>
struct WeightedVector {
  TreeWindow window;
  std::vector<T> values;

  WeightedVector() = default;
  explicit WeightedVector(const TreeWindow& w) : window(w), values(w.size(), T{}) {}
  WeightedVector(const TreeWindow& w, std::vector<T> v) : window(w), values(std::move(v)) {
    if (values.size() != window.size()) throw std::invalid_argument("WeightedVector: size mismatch");
  }

  T& operator[](const Vertex& v) { return values[window.index(v)]; }
  const T& operator[](const Vertex& v) const { return values[window.index(v)]; }

  static WeightedVector indicator(const TreeWindow& w, const Vertex& v) {
    WeightedVector out(w);
    out[v] = T{1};
    return out;
  }
};

/// sum_v phi(v) conj(psi(v)) w(v).
template <class T>
T weighted_inner(const WeightedVector<T>& phi, const WeightedVector<T>& psi) {
  if (!(phi.window == psi.window)) throw std::invalid_argument("weighted_inner: window mismatch");
  const TreeWindow& w = phi.window;
  T total{};
  for (int n = w.min_level(); n <= w.max_level(); ++n) {
    T level_sum{};
    const std::size_t off = w.level_offset(n);
    const std::size_t cnt = w.level_size(n);
    for (std::size_t i = 0; i < cnt; ++i) {
      if constexpr (std::is_same_v<T, std::complex<double>>) {
        level_sum += phi.values[off + i] * std::conj(psi.values[off + i]);
      } else {
        level_sum += phi.values[off + i] * psi.values[off + i];
      }
    }
    total += level_sum * w.weight(n);
  }
  return total;
}

}  // namespace lfs

#endif  // LFS_TREE_HPP
