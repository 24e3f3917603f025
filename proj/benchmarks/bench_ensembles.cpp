// Copyright 2026 The freeconv Authors
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

#include "freeconv/eigensolver.hpp"
#include "freeconv/ensembles.hpp"

namespace {

using namespace freeconv::ensembles;

void BM_HermitianEigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  const CMatrix g = sample_ginibre(n, n, rng);
  const CMatrix h = g * g.adjoint();
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigenvalues(h));
  state.SetComplexityN(n);
}
BENCHMARK(BM_HermitianEigenvalues)->RangeMultiplier(2)->Range(32, 256)->Complexity(benchmark::oNCubed)
    ->Unit(benchmark::kMillisecond);

void BM_HaarUnitary(benchmark::State& state) {
  Rng rng(2);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_haar_unitary(n, rng));
}
BENCHMARK(BM_HaarUnitary)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_BuildSample(benchmark::State& state) {
  EnsembleConfig cfg;
  cfg.N = static_cast<int>(state.range(0));
  cfg.ginibre_shape_ratios = {1, 1};
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(build_sample(cfg, rng));
}
BENCHMARK(BM_BuildSample)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_KsDistance(benchmark::State& state) {
  EnsembleConfig cfg;
  cfg.N = 128;
  cfg.samples = 8;
  const auto spectrum = simulate(cfg);
  const auto cdf = model_cdf(*model_spec(cfg));
  for (auto _ : state) benchmark::DoNotOptimize(ks_distance(spectrum, cdf));
}
BENCHMARK(BM_KsDistance)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
