// Copyright 2026 The IFE Authors
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


#include <random>

#include <benchmark/benchmark.h>

#include "ife/ife.hpp"

namespace {

using namespace ife;

Operator random_hermitian(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return Operator(Matrix(0.5 * (g + g.adjoint())));
}

BipartiteSystem random_system(Index da, Index db) {
  std::mt19937_64 rng(17);
  return BipartiteSystem(random_hermitian(da, rng), random_hermitian(db, rng),
                         random_hermitian(da * db, rng));
}

SpinStarParams star(int n) {
  SpinStarParams p{n, 1.0, 0.4, {}};
  for (int i = 0; i < n; ++i) p.gammas.push_back(0.5 + 0.25 * i);
  return p;
}

void BM_SectorsGeneric(benchmark::State& state) {
  const Index d = state.range(0);
  const BipartiteSystem sys = random_system(d, d);
  for (auto _ : state) benchmark::DoNotOptimize(ife_sectors(sys));
}
BENCHMARK(BM_SectorsGeneric)->Arg(2)->Arg(4)->Arg(6);

void BM_SectorsOracleGeneric(benchmark::State& state) {
  const Index d = state.range(0);
  const BipartiteSystem sys = random_system(d, d);
  for (auto _ : state) benchmark::DoNotOptimize(ife_sectors_oracle(sys));
}
BENCHMARK(BM_SectorsOracleGeneric)->Arg(2)->Arg(4)->Arg(6);

void BM_SectorsSpinStar(benchmark::State& state) {
  const BipartiteSystem sys = build_spin_star(star(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(ife_sectors(sys));
}
BENCHMARK(BM_SectorsSpinStar)->DenseRange(2, 6, 2);

void BM_SectorsOracleSpinStar(benchmark::State& state) {
  const BipartiteSystem sys = build_spin_star(star(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(ife_sectors_oracle(sys));
}
BENCHMARK(BM_SectorsOracleSpinStar)->DenseRange(2, 4, 2);

void BM_AnalyticBasis(benchmark::State& state) {
  const SpinStarParams p = star(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spin_star_ife_basis(p));
}
BENCHMARK(BM_AnalyticBasis)->DenseRange(2, 8, 2);

// Propagator is diagonalized once; each iteration applies 101 time steps.
void BM_PropagatorTrace(benchmark::State& state) {
  const BipartiteSystem sys = build_spin_star(star(static_cast<int>(state.range(0))));
  const Propagator u(build_total(sys));
  const std::vector<double> grid = uniform_grid(10.0, 101);
  Vector psi = Vector::Zero(sys.dim());
  psi(0) = 1.0;
  for (auto _ : state) {
    for (double t : grid) benchmark::DoNotOptimize(u.apply(t, psi));
  }
}
BENCHMARK(BM_PropagatorTrace)->DenseRange(2, 6, 2);

}  // namespace

BENCHMARK_MAIN();
