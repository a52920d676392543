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

#include "benchmark/benchmark.h"
#include "dpnb/experiments.h"
#include "dpnb/naive_bayes.h"

namespace dpnb {
namespace {

// One numeric and one categorical attribute, the runtime template.
Dataset Data(int rows) {
  SyntheticSpec spec;
  spec.rows = rows;
  spec.numeric = 1;
  spec.categorical = 1;
  spec.seed = 1;
  return *GenerateSynthetic(spec);
}

void Fit(benchmark::State& state, FitMode mode) {
  const Dataset d = Data(static_cast<int>(state.range(0)));
  FitConfig config;
  config.mode = mode;
  config.epsilon = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpnb::Fit(d, config)->priors);
  }
  state.SetComplexityN(state.range(0));
}

void BM_FitPlain(benchmark::State& state) { Fit(state, FitMode::kPlain); }
void BM_FitGlobal(benchmark::State& state) { Fit(state, FitMode::kGlobal); }
void BM_FitSmooth(benchmark::State& state) { Fit(state, FitMode::kSmooth); }
void BM_FitBunSteinke(benchmark::State& state) {
  Fit(state, FitMode::kBunSteinke);
}

BENCHMARK(BM_FitPlain)->RangeMultiplier(4)->Range(1250, 20000)->Complexity();
BENCHMARK(BM_FitGlobal)->RangeMultiplier(4)->Range(1250, 20000)->Complexity();
BENCHMARK(BM_FitSmooth)
    ->RangeMultiplier(4)->Range(1250, 20000)
    ->Complexity(benchmark::oNSquared)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FitBunSteinke)
    ->RangeMultiplier(4)->Range(1250, 20000)->Unit(benchmark::kMillisecond);

void BM_Predict(benchmark::State& state) {
  const Dataset d = Data(2000);
  const NaiveBayesModel m = *FitPlain(d);
  int r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Predict(m, d.row(r))->label);
    r = (r + 1) % d.size();
  }
}
BENCHMARK(BM_Predict);

}  // namespace
}  // namespace dpnb

BENCHMARK_MAIN();
