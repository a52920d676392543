//
// Copyright 2026 The dpnb Authors
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
//

#include <algorithm>
#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "dpnb/sensitivity.h"

namespace dpnb {
namespace {

BoundedSample RandomSample(int n) {
  std::mt19937_64 gen(n);
  std::normal_distribution<double> normal(5, 1.5);
  std::vector<double> v(n);
  for (double& x : v) x = std::clamp(normal(gen), 0.0, 10.0);
  return *BoundedSample::Create(std::move(v), 0, 10);
}

void BM_SmoothSensitivityMean(benchmark::State& state) {
  const BoundedSample s = RandomSample(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SmoothSensitivityMean(s, 0.1)->smooth);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SmoothSensitivityMean)->RangeMultiplier(4)->Range(256, 65536)
    ->Complexity();

void BM_SmoothSensitivityVariance(benchmark::State& state) {
  const BoundedSample s = RandomSample(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SmoothSensitivityVariance(s, 0.1)->smooth);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SmoothSensitivityVariance)->RangeMultiplier(4)->Range(256, 16384)
    ->Complexity(benchmark::oNSquared)->Unit(benchmark::kMillisecond);

void BM_SmoothSensitivityVarianceEarlyStop(benchmark::State& state) {
  const BoundedSample s = RandomSample(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        SmoothSensitivityVariance(s, 0.1, {.early_stop = true})->smooth);
  }
}
BENCHMARK(BM_SmoothSensitivityVarianceEarlyStop)
    ->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);

void BM_SmoothSensitivityTrimmedMean(benchmark::State& state) {
  const BoundedSample s = RandomSample(static_cast<int>(state.range(0)));
  const int m = static_cast<int>(state.range(0) / 100) + 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SmoothSensitivityTrimmedMean(s, {m}, 0.1)->smooth);
  }
}
BENCHMARK(BM_SmoothSensitivityTrimmedMean)->RangeMultiplier(4)->Range(256, 16384);

void BM_KMaxVarianceSubset(benchmark::State& state) {
  const BoundedSample s = RandomSample(static_cast<int>(state.range(0)));
  const int k = static_cast<int>(state.range(0) / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(KMaxVarianceSubset(s, k)->variance);
  }
}
BENCHMARK(BM_KMaxVarianceSubset)->RangeMultiplier(4)->Range(256, 65536);

}  // namespace
}  // namespace dpnb
