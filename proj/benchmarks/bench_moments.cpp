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

#include "freeconv/measure_parser.hpp"
#include "freeconv/moments.hpp"

namespace {

using namespace freeconv;

void BM_MomentsFromResolvent(benchmark::State& state) {
  const auto poly = measures::build_resolvent(measures::parse_measure("as*mp(1)^2"));
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(moments::moments_from_resolvent(poly, K));
  state.SetComplexityN(K);
}
BENCHMARK(BM_MomentsFromResolvent)->RangeMultiplier(2)->Range(8, 64)->Complexity()->Unit(benchmark::kMicrosecond);

void BM_MomentsFromSTransform(benchmark::State& state) {
  const auto spec = measures::parse_measure("as*mp(1)^2");
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(moments::moments_from_s_transform(spec, K));
  state.SetComplexityN(K);
}
BENCHMARK(BM_MomentsFromSTransform)->RangeMultiplier(2)->Range(8, 64)->Complexity()->Unit(benchmark::kMicrosecond);

void BM_Cumulants(benchmark::State& state) {
  const auto m = moments::moments_from_resolvent(measures::build_resolvent(measures::parse_measure("mp(1)^3")),
                                                 static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(moments::cumulants_from_moments(m));
}
BENCHMARK(BM_Cumulants)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
