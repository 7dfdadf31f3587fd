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

#ifndef LFS_KERNELS_HPP
#define LFS_KERNELS_HPP

#include <span>

#include "lfs/tree.hpp"

namespace lfs {

/// How D is cut off at the deepest level N of a window.
///   open:      D maps levels ..N to ..N-1; the level-N output is dropped.
///   dirichlet: values beyond N are taken as zero, so (D phi)_N = p^(N/e) phi_N.
enum class Truncation { open, dirichlet };

/// Matrix-free vertex kernels in the weighted basis. Arrays are indexed by
/// TreeWindow::index. Each function parallelises over the vertices of one
/// level at a time; no floating point reductions cross threads, so results do
/// not depend on the thread count.
namespace kernels {

void apply_D(const TreeWindow& w, Truncation t, std::span<const double> x, std::span<double> y);
/// Weighted adjoint of apply_D.
void apply_Dstar(const TreeWindow& w, Truncation t, std::span<const double> x, std::span<double> y);
/// Solves D x = y for the Dirichlet truncation (deepest level first).
void solve_D(const TreeWindow& w, std::span<const double> y, std::span<double> x);
/// Solves D* x = y for the Dirichlet truncation (top level first).
void solve_Dstar(const TreeWindow& w, std::span<const double> y, std::span<double> x);
/// [D, rho(a)] x, where a holds the per-vertex values a_n(x).
void apply_commutator(const TreeWindow& w, std::span<const double> a, std::span<const double> x,
                      std::span<double> y);

/// Serial versions written against the Vertex API; used as the testing oracle.
namespace reference {
void apply_D(const TreeWindow& w, Truncation t, std::span<const double> x, std::span<double> y);
void apply_Dstar(const TreeWindow& w, Truncation t, std::span<const double> x, std::span<double> y);
void solve_D(const TreeWindow& w, std::span<const double> y, std::span<double> x);
void solve_Dstar(const TreeWindow& w, std::span<const double> y, std::span<double> x);
void apply_commutator(const TreeWindow& w, std::span<const double> a, std::span<const double> x,
                      std::span<double> y);
}  // namespace reference

}  // namespace kernels
}  // namespace lfs

#endif  // LFS_KERNELS_HPP
