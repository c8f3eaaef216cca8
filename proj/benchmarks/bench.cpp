// Copyright 2026 The sphmorph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "sphmorph/generators.hpp"
#include "sphmorph/morph.hpp"
#include "sphmorph/shelling.hpp"
#include "sphmorph/sinking.hpp"

namespace {

using namespace sphmorph;

const SpherePoint kPole{0.1234, -0.4321, 0.8899};

void BM_IsShellable(benchmark::State& state) {
  const auto t = ugly_flip_family(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(is_shellable(t, kPole));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IsShellable)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_IsSinkable(benchmark::State& state) {
  const auto t = ugly_flip_family(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(is_sinkable(t, kPole));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IsSinkable)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_FindShellingDirection(benchmark::State& state) {
  const auto t = ugly_flip_family(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(find_shelling_direction(t));
}
BENCHMARK(BM_FindShellingDirection)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_FullPipeline(benchmark::State& state) {
  const auto t0 = shaddock(kJessenAngle), t1 = shaddock(regular_icosahedron_angle());
  for (auto _ : state) benchmark::DoNotOptimize(full_pipeline(t0, t1));
}
BENCHMARK(BM_FullPipeline)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
