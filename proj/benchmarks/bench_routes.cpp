// Copyright 2026 The qpde Authors
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

#include <random>

#include "qpde/advection.hpp"
#include "qpde/grid.hpp"
#include "qpde/heat.hpp"
#include "qpde/lindblad.hpp"
#include "qpde/poisson.hpp"
#include "qpde/wave.hpp"

namespace {

using namespace qpde;

CVec random_field(std::size_t size) {
  std::mt19937 rng(1);
  std::normal_distribution<double> dist;
  CVec v(static_cast<Eigen::Index>(size));
  for (auto& x : v) x = cplx(dist(rng), dist(rng));
  return v / v.norm();
}

void BM_ShiftedQftRun(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Circuit c = build_shifted_qft(n, ShiftSpec::centered(n));
  const StateVector psi = StateVector::from_amplitudes(random_field(std::size_t{1} << n));
  for (auto _ : state) benchmark::DoNotOptimize(run(c, psi));
  state.SetComplexityN(1L << n);
}
BENCHMARK(BM_ShiftedQftRun)->DenseRange(4, 14, 2)->Complexity();

void BM_AdvectionDftBuild(benchmark::State& state) {
  const AdvectionProblem p{{1, static_cast<int>(state.range(0))}, {1.0}, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(build_advection_dft(p));
}
BENCHMARK(BM_AdvectionDftBuild)->DenseRange(2, 6, 2);

void BM_AdvectionJacobiAngerRun(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AdvectionProblem p{{1, n}, {1.0}, 0.25, 1e-6};
  const EvolutionCircuit ev = build_advection_ja(p);
  const CVec f0 = random_field(p.grid.size());
  for (auto _ : state) benchmark::DoNotOptimize(run_on_field(ev.full, f0, p.grid));
}
BENCHMARK(BM_AdvectionJacobiAngerRun)->Arg(4)->Arg(6);

void BM_HeatSmoothPauliRun(benchmark::State& state) {
  const HeatProblem p{{2, static_cast<int>(state.range(0))}, 1.0, 0.002};
  const HeatPauliCircuit c = build_heat_smooth_pauli(p);
  const CVec f0 = random_field(p.grid.size());
  for (auto _ : state) benchmark::DoNotOptimize(run_on_field(c.evolution.full, f0, p.grid));
}
BENCHMARK(BM_HeatSmoothPauliRun)->DenseRange(2, 4, 1);

void BM_PoissonFourierInverseBuild(benchmark::State& state) {
  const PoissonProblem p{{2, 3}, 1.0 / static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(build_poisson_ddim(p));
}
BENCHMARK(BM_PoissonFourierInverseBuild)->Arg(10)->Arg(100);

void BM_WaveBlockEncoding(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_wave_block_encoding(d, 3));
}
BENCHMARK(BM_WaveBlockEncoding)->DenseRange(2, 6, 2);

void BM_LindbladHeat(benchmark::State& state) {
  const GridSpec g{1, static_cast<int>(state.range(0)), GridConvention::UnitInterval};
  std::vector<double> f0(g.size(), 1.0 / static_cast<double>(g.size()));
  f0[0] *= 2.0;
  f0[1] = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(evolve_lindblad_heat(f0, g, 1.0, 1e-3, 8));
}
BENCHMARK(BM_LindbladHeat)->DenseRange(2, 6, 2);

}  // namespace

BENCHMARK_MAIN();
