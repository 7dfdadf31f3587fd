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

#ifndef LFS_FIELD_MODEL_HPP
#define LFS_FIELD_MODEL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lfs {

using Digit = std::uint32_t;

bool is_prime(int n);

/// p^(num/den) evaluated from the exact exponent pair at the last step.
double pow_ratio(int p, long num, long den);

/// Parameters (p, e, f) of a nonarchimedean local field: residue characteristic,
/// ramification index and residue degree.
///
/// Elements are modelled combinatorially as digit strings over {0, ..., p^f - 1}
/// in powers of a uniformizer; digit 0 is the zero representative and digit 1
/// the element 1.
struct FieldParams {
  int p = 2;
  int e = 1;
  int f = 1;

  /// Validating constructor; throws std::invalid_argument.
  static FieldParams make(int p, int e, int f);

  /// Size of the digit alphabet, p^f.
  std::uint32_t residue_size() const;
  /// p^(1/e), the inverse of |uniformizer|.
  double norm_base() const { return pow_ratio(p, 1, e); }
  /// q = p^(-2/e).
  double q() const { return pow_ratio(p, -2, e); }
  /// p^(k/e).
  double pow_e(long k) const { return pow_ratio(p, k, e); }
  /// Volume of a ball of radius p^(-n/e): p^(-n f).
  double weight(int level) const { return pow_ratio(p, -static_cast<long>(level) * f, 1); }

  std::string to_string() const;

  friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

/// |x| kept as exponent data: |x| = p^(-valuation/e), or 0.
struct AbsValue {
  bool is_zero = true;
  long valuation = 0;

  static AbsValue zero() { return {}; }
  static AbsValue from_valuation(long v) { return {false, v}; }

  double value(const FieldParams& params) const {
    return is_zero ? 0.0 : params.pow_e(-valuation);
  }

  /// Ordered by magnitude: zero is smallest, smaller valuation is larger.
  friend std::strong_ordering operator<=>(const AbsValue& a, const AbsValue& b) {
    if (a.is_zero || b.is_zero) return b.is_zero <=> a.is_zero;
    return b.valuation <=> a.valuation;
  }
  friend bool operator==(const AbsValue& a, const AbsValue& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }
};

/// A truncated expansion x = sum_{k=start}^{depth-1} d_k pi^k, the preferred
/// center of a ball of radius p^(-depth/e).
class Center {
 public:
  Center() = default;
  Center(int start, std::vector<Digit> digits) : start_(start), digits_(std::move(digits)) {}

  /// Checks every digit against the alphabet of `params`.
  static Center make(const FieldParams& params, int start, std::vector<Digit> digits);
  static Center zero(int start, int depth);
  /// pi^n written with digits from `start` up to `depth` (requires start <= n < depth).
  static Center uniformizer_power(int start, int n, int depth);

  int start() const { return start_; }
  int depth() const { return start_ + static_cast<int>(digits_.size()); }
  std::span<const Digit> digits() const { return digits_; }

  /// Digit at absolute index k; zero outside the stored range.
  Digit digit(long k) const {
    if (k < start_ || k >= depth()) return 0;
    return digits_[static_cast<std::size_t>(k - start_)];
  }

  bool is_zero() const;
  std::optional<long> first_nonzero() const;

  Center truncated(int depth) const;
  /// Pads with zero digits (or truncates) to the given depth.
  Center resized(int depth) const;
  Center appended(Digit d) const;

  std::string to_string() const;

  friend bool operator==(const Center&, const Center&) = default;

 private:
  int start_ = 0;
  std::vector<Digit> digits_;
};

AbsValue norm_exact(const Center& x);
double norm(const FieldParams& params, const Center& x);

/// Longest-common-prefix metric; both centers must share start and depth
/// (std::invalid_argument otherwise).
AbsValue dist_exact(const Center& x, const Center& y);
double dist(const FieldParams& params, const Center& x, const Center& y);

/// Tree coordinates (l, g) with |g| = p^(m/e). g_tail holds the digits
/// d_l, ..., d_{l+m-1} of x (leading digit nonzero); empty iff g = 0.
struct LGCoords {
  int l = 0;
  int m = 0;
  std::vector<Digit> g_tail;

  friend bool operator==(const LGCoords&, const LGCoords&) = default;
};

/// (n, x) -> (l, g) for an R-center x of depth n.
LGCoords to_lg(int n, const Center& x);
/// Inverse of to_lg; the result has start 0 and depth l + m.
Center from_lg(const LGCoords& lg);

/// #{g in F/R : |g| = p^(m/e)}: 1 for m = 0, p^(mf) - p^((m-1)f) otherwise.
/// Throws std::overflow_error if the count does not fit.
std::uint64_t count_g(const FieldParams& params, int m);
double count_g_real(const FieldParams& params, int m);

}  // namespace lfs

#endif  // LFS_FIELD_MODEL_HPP
