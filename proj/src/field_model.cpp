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

#include "lfs/field_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lfs {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

double pow_ratio(int p, long num, long den) {
  if (den == 1) return std::pow(static_cast<double>(p), static_cast<double>(num));
  return std::pow(static_cast<double>(p), static_cast<double>(num) / static_cast<double>(den));
}

FieldParams FieldParams::make(int p, int e, int f) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
  if (e < 1) throw std::invalid_argument("ramification index e must be >= 1");
  if (f < 1) throw std::invalid_argument("residue degree f must be >= 1");
  double alphabet = std::pow(static_cast<double>(p), f);
  if (alphabet > 65536.0) throw std::invalid_argument("p^f too large for the digit model");
  return FieldParams{p, e, f};
}

std::uint32_t FieldParams::residue_size() const {
  std::uint32_t r = 1;
  for (int i = 0; i < f; ++i) r *= static_cast<std::uint32_t>(p);
  return r;
}

std::string FieldParams::to_string() const {
  std::ostringstream os;
  os << "(p,e,f)=(" << p << "," << e << "," << f << ")";
  return os.str();
}

Center Center::make(const FieldParams& params, int start, std::vector<Digit> digits) {
  const Digit alphabet = params.residue_size();
  for (Digit d : digits) {
    if (d >= alphabet) {
      throw std::invalid_argument("digit " + std::to_string(d) + " outside alphabet of size " +
                                  std::to_string(alphabet));
    }
  }
  return Center(start, std::move(digits));
}

Center Center::zero(int start, int depth) {
  if (depth < start) throw std::invalid_argument("Center::zero: depth < start");
  return Center(start, std::vector<Digit>(static_cast<std::size_t>(depth - start), 0));
}

Center Center::uniformizer_power(int start, int n, int depth) {
  if (n < start || n >= depth) throw std::invalid_argument("uniformizer_power: n outside [start, depth)");
  Center c = zero(start, depth);
  c.digits_[static_cast<std::size_t>(n - start)] = 1;
  return c;
}

bool Center::is_zero() const {
  for (Digit d : digits_) {
    if (d != 0) return false;
  }
  return true;
}

std::optional<long> Center::first_nonzero() const {
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (digits_[i] != 0) return start_ + static_cast<long>(i);
  }
  return std::nullopt;
}

Center Center::truncated(int depth) const {
  if (depth < start_ || depth > this->depth()) throw std::invalid_argument("Center::truncated: bad depth");
  return Center(start_, std::vector<Digit>(digits_.begin(), digits_.begin() + (depth - start_)));
}

Center Center::resized(int depth) const {
  if (depth < start_) throw std::invalid_argument("Center::resized: depth < start");
  std::vector<Digit> d(digits_);
  d.resize(static_cast<std::size_t>(depth - start_), 0);
  return Center(start_, std::move(d));
}

Center Center::appended(Digit d) const {
  std::vector<Digit> digits(digits_);
  digits.push_back(d);
  return Center(start_, std::move(digits));
}

std::string Center::to_string() const {
  std::ostringstream os;
  os << "[" << start_ << ":";
  for (std::size_t i = 0; i < digits_.size(); ++i) os << (i ? "," : "") << digits_[i];
  os << "]";
  return os.str();
}

AbsValue norm_exact(const Center& x) {
  auto l = x.first_nonzero();
  return l ? AbsValue::from_valuation(*l) : AbsValue::zero();
}

double norm(const FieldParams& params, const Center& x) { return norm_exact(x).value(params); }

AbsValue dist_exact(const Center& x, const Center& y) {
  if (x.start() != y.start() || x.depth() != y.depth()) {
    throw std::invalid_argument("dist: centers differ in start or depth: " + x.to_string() + " vs " +
                                y.to_string());
  }
  auto dx = x.digits();
  auto dy = y.digits();
  for (std::size_t i = 0; i < dx.size(); ++i) {
    if (dx[i] != dy[i]) return AbsValue::from_valuation(x.start() + static_cast<long>(i));
  }
  return AbsValue::zero();
}

double dist(const FieldParams& params, const Center& x, const Center& y) {
  return dist_exact(x, y).value(params);
}

LGCoords to_lg(int n, const Center& x) {
  if (x.start() != 0 || x.depth() != n) {
    throw std::invalid_argument("to_lg: expected an R-center of depth " + std::to_string(n));
  }
  auto lead = x.first_nonzero();
  if (!lead) return LGCoords{n, 0, {}};
  const int l = static_cast<int>(*lead);
  auto d = x.digits();
  return LGCoords{l, n - l, std::vector<Digit>(d.begin() + l, d.end())};
}

Center from_lg(const LGCoords& lg) {
  if (lg.m != static_cast<int>(lg.g_tail.size())) throw std::invalid_argument("from_lg: m != |g_tail|");
  if (lg.m > 0 && lg.g_tail.front() == 0) throw std::invalid_argument("from_lg: leading tail digit is zero");
  std::vector<Digit> digits(static_cast<std::size_t>(lg.l), 0);
  digits.insert(digits.end(), lg.g_tail.begin(), lg.g_tail.end());
  return Center(0, std::move(digits));
}

std::uint64_t count_g(const FieldParams& params, int m) {
  if (m < 0) throw std::invalid_argument("count_g: m < 0");
  if (m == 0) return 1;
  const std::uint64_t q = params.residue_size();
  std::uint64_t prev = 1;  // q^(m-1)
  for (int i = 1; i < m; ++i) {
    if (prev > std::numeric_limits<std::uint64_t>::max() / q) throw std::overflow_error("count_g overflow");
    prev *= q;
  }
  if (prev > std::numeric_limits<std::uint64_t>::max() / q) throw std::overflow_error("count_g overflow");
  return prev * q - prev;
}

double count_g_real(const FieldParams& params, int m) {
  if (m < 0) throw std::invalid_argument("count_g: m < 0");
  if (m == 0) return 1.0;
  const double q = params.residue_size();
  return std::pow(q, m) * (1.0 - 1.0 / q);
}

}  // namespace lfs
