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


#include <benchmark/benchmark.h>
#include <omp.h>

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "lfs/kernels.hpp"
#include "lfs/tree.hpp"

using namespace lfs;

namespace {

// (p,e,f) = (2,1,1) ring window of depth range(0), (3,1,1) for depth 13.
TreeWindow window_for(int depth) {
  return TreeWindow::ring(FieldParams::make(depth == 13 ? 3 : 2, 1, 1), depth);
}

std::vector<double> random_values(std::size_t n) {
  std::mt19937_64 gen(7);
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return v;
}

using Kernel = void (*)(const TreeWindow&, std::span<const double>, std::span<double>);

template <Kernel K>
void run(benchmark::State& st) {
  const TreeWindow w = window_for(static_cast<int>(st.range(0)));
  omp_set_num_threads(static_cast<int>(st.range(1)));
  const auto x = random_values(w.size());
  std::vector<double> y(w.size());
  for (auto _ : st) {
    K(w, x, y);
    benchmark::DoNotOptimize(y.data());
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(w.size()));
}

void D_par(const TreeWindow& w, std::span<const double> x, std::span<double> y) {
  kernels::apply_D(w, Truncation::dirichlet, x, y);
}
void D_ref(const TreeWindow& w, std::span<const double> x, std::span<double> y) {
  kernels::reference::apply_D(w, Truncation::dirichlet, x, y);
}
void Dstar_par(const TreeWindow& w, std::span<const double> x, std::span<double> y) {
  kernels::apply_Dstar(w, Truncation::dirichlet, x, y);
}
void Dstar_ref(const TreeWindow& w, std::span<const double> x, std::span<double> y) {
  kernels::reference::apply_Dstar(w, Truncation::dirichlet, x, y);
}
void solve_par(const TreeWindow& w, std::span<const double> x, std::span<double> y) { kernels::solve_D(w, x, y); }
void solve_ref(const TreeWindow& w, std::span<const double> x, std::span<double> y) {
  kernels::reference::solve_D(w, x, y);
}
void solve_star_par(const TreeWindow& w, std::span<const double> x, std::span<double> y) {
  kernels::solve_Dstar(w, x, y);
}
void solve_star_ref(const TreeWindow& w, std::span<const double> x, std::span<double> y) {
  kernels::reference::solve_Dstar(w, x, y);
}
// the input doubles as the per-vertex values of a
void comm_par(const TreeWindow& w, std::span<const double> x, std::span<double> y) {
  kernels::apply_commutator(w, x, x, y);
}
void comm_ref(const TreeWindow& w, std::span<const double> x, std::span<double> y) {
  kernels::reference::apply_commutator(w, x, x, y);
}

void parallel_args(benchmark::internal::Benchmark* b) {
  for (int depth : {16, 20, 13})
    for (int threads : {1, 2, 4}) b->Args({depth, threads});
  b->ArgNames({"depth", "threads"})->Unit(benchmark::kMillisecond)->UseRealTime();
}

void serial_args(benchmark::internal::Benchmark* b) {
  for (int depth : {16, 20, 13}) b->Args({depth, 1});
  b->ArgNames({"depth", "threads"})->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(run<D_par>)->Name("apply_D/omp")->Apply(parallel_args);
BENCHMARK(run<D_ref>)->Name("apply_D/reference")->Apply(serial_args);
BENCHMARK(run<Dstar_par>)->Name("apply_Dstar/omp")->Apply(parallel_args);
BENCHMARK(run<Dstar_ref>)->Name("apply_Dstar/reference")->Apply(serial_args);
BENCHMARK(run<solve_par>)->Name("solve_D/omp")->Apply(parallel_args);
BENCHMARK(run<solve_ref>)->Name("solve_D/reference")->Apply(serial_args);
BENCHMARK(run<solve_star_par>)->Name("solve_Dstar/omp")->Apply(parallel_args);
BENCHMARK(run<solve_star_ref>)->Name("solve_Dstar/reference")->Apply(serial_args);
BENCHMARK(run<comm_par>)->Name("apply_commutator/omp")->Apply(parallel_args);
BENCHMARK(run<comm_ref>)->Name("apply_commutator/reference")->Apply(serial_args);

BENCHMARK_MAIN();
