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

#include "freeconv/closedform.hpp"
#include "freeconv/measure_parser.hpp"
#include "freeconv/resolvent.hpp"

namespace {

using namespace freeconv;

const char* const kSpecs[] = {"mp(1)", "mp(1)^2", "mp(1)^(1/3)", "as*mp(1)^2"};

measures::ResolventPolynomial poly_for(const benchmark::State& state) {
  return measures::build_resolvent(measures::parse_measure(kSpecs[state.range(0)]));
}

void BM_BuildResolvent(benchmark::State& state) {
  const auto spec = measures::parse_measure(kSpecs[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(measures::build_resolvent(spec));
  state.SetLabel(kSpecs[state.range(0)]);
}
BENCHMARK(BM_BuildResolvent)->DenseRange(0, 3);

void BM_RootsAt(benchmark::State& state) {
  const auto poly = poly_for(state);
  const freeconv::cplx z(1.3, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(resolvent::roots_at(poly, z));
  state.SetLabel(kSpecs[state.range(0)]);
}
BENCHMARK(BM_RootsAt)->DenseRange(0, 3);

void BM_DensityPoint(benchmark::State& state) {
  const auto poly = poly_for(state);
  resolvent::BranchTracker tracker(poly);
  for (auto _ : state) benchmark::DoNotOptimize(resolvent::density_eval(tracker, 0.7).rho);
  state.SetLabel(kSpecs[state.range(0)]);
}
BENCHMARK(BM_DensityPoint)->DenseRange(0, 3);

void BM_DensityCurve(benchmark::State& state) {
  const auto poly = measures::build_resolvent(measures::parse_measure("as*mp(1)"));
  resolvent::CurveOptions opts;
  opts.n_points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(resolvent::density_curve(poly, opts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DensityCurve)->RangeMultiplier(2)->Range(64, 1024)->Complexity()->Unit(benchmark::kMillisecond);

void BM_SupportEdges(benchmark::State& state) {
  const auto poly = poly_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(resolvent::support_edges(poly));
  state.SetLabel(kSpecs[state.range(0)]);
}
BENCHMARK(BM_SupportEdges)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_ClosedFormCdf(benchmark::State& state) {
  const auto f = closedform::family(closedform::Tag::FC3);
  for (auto _ : state) benchmark::DoNotOptimize(closedform::cdf(f, 3.0));
}
BENCHMARK(BM_ClosedFormCdf);

}  // namespace

BENCHMARK_MAIN();
