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

#include "lfs/tree.hpp"

#include <algorithm>

namespace lfs {

namespace {
constexpr std::size_t kMaxVertices = std::size_t{1} << 31;
}

TreeWindow::TreeWindow(const FieldParams& params, Kind kind, int min_level, int max_level)
    : params_(params), kind_(kind), min_level_(min_level), max_level_(max_level),
      arity_(params.residue_size()) {
  offsets_.assign(1, 0);
  std::size_t count = 1;
  for (int n = min_level_; n <= max_level_; ++n) {
    if (offsets_.back() + count > kMaxVertices) throw std::length_error("tree window too large");
    offsets_.push_back(offsets_.back() + count);
    if (n < max_level_) {
      if (count > kMaxVertices / arity_) throw std::length_error("tree window too large");
      count *= arity_;
    }
  }
}

TreeWindow TreeWindow::ring(const FieldParams& params, int N) {
  if (N < 0) throw std::invalid_argument("ring window: N must be >= 0");
  return TreeWindow(params, Kind::ring, 0, N);
}

TreeWindow TreeWindow::field(const FieldParams& params, int M, int N) {
  if (M < 0) throw std::invalid_argument("field window: M must be >= 0");
  if (N < -M) throw std::invalid_argument("field window: N must be >= -M");
  return TreeWindow(params, Kind::field, -M, N);
}

Vertex TreeWindow::vertex(std::size_t idx) const {
  if (idx >= size()) throw std::out_of_range("vertex index out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), idx);
  const std::size_t s = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return Vertex{min_level_ + static_cast<int>(s), static_cast<std::uint64_t>(idx - offsets_[s])};
}

Center TreeWindow::center(const Vertex& v) const {
  const int len = v.level - min_level_;
  std::vector<Digit> digits(static_cast<std::size_t>(len), 0);
  std::uint64_t r = v.rank;
  for (int i = len - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = static_cast<Digit>(r % arity_);
    r /= arity_;
  }
  return Center(min_level_, std::move(digits));
}

Vertex TreeWindow::vertex_of(const Center& c) const {
  if (c.start() != min_level_ || !contains_level(c.depth())) {
    throw std::invalid_argument("center " + c.to_string() + " outside window");
  }
  std::uint64_t r = 0;
  for (Digit d : c.digits()) {
    if (d >= arity_) throw std::invalid_argument("digit outside alphabet");
    r = r * arity_ + d;
  }
  return Vertex{c.depth(), r};
}

std::vector<Vertex> TreeWindow::children(const Vertex& v) const {
  std::vector<Vertex> out;
  if (v.level >= max_level_) return out;
  out.reserve(arity_);
  for (std::uint32_t s = 0; s < arity_; ++s) out.push_back(Vertex{v.level + 1, v.rank * arity_ + s});
  return out;
}

std::optional<Vertex> TreeWindow::parent(const Vertex& v) const {
  if (v.level <= min_level_) return std::nullopt;
  return Vertex{v.level - 1, v.rank / arity_};
}

}  // namespace lfs
