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

#ifndef LFS_SRC_MP_HPP
#define LFS_SRC_MP_HPP

#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <type_traits>

namespace lfs::mp {

template <unsigned Digits>
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kTiers[] = {50, 100, 200, 400, 800, 1600};

inline int tier_for(int digits) {
  for (unsigned t : kTiers) {
    if (static_cast<int>(t) >= digits) return static_cast<int>(t);
  }
  throw std::range_error("required precision exceeds the largest multiprecision tier");
}

/// Calls f(std::type_identity<Real<T>>{}) for the tier T >= digits.
template <class F>
decltype(auto) with_tier(int digits, F&& f) {
  switch (tier_for(digits)) {
    case 50: return f(std::type_identity<Real<50>>{});
    case 100: return f(std::type_identity<Real<100>>{});
    case 200: return f(std::type_identity<Real<200>>{});
    case 400: return f(std::type_identity<Real<400>>{});
    case 800: return f(std::type_identity<Real<800>>{});
    default: return f(std::type_identity<Real<1600>>{});
  }
}

/// p^(num/den) at the precision of T.
template <class T>
T pow_ratio(int p, long num, long den) {
  return boost::multiprecision::pow(T(p), T(num) / T(den));
}

}  // namespace lfs::mp

#endif  // LFS_SRC_MP_HPP
