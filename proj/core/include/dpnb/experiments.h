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

#ifndef DPNB_EXPERIMENTS_H_
#define DPNB_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpnb/budget.h"
#include "dpnb/dataset.h"
#include "dpnb/naive_bayes.h"
#include "dpnb/noise.h"

namespace dpnb {

// ---------------------------------------------------------------------------
// Synthetic data

enum class Correlated { kCategorical, kNumeric };

std::string_view CorrelatedName(Correlated kind);
std::optional<Correlated> ParseCorrelated(std::string_view name);

// Binary-label data. Numeric attributes live in [0, 10]; categorical ones
// take four values. Attributes of the correlated kind depend on the label,
// the others do not.
struct SyntheticSpec {
  int rows = 10000;
  int categorical = 5;
  int numeric = 5;
  Correlated correlated = Correlated::kNumeric;
  uint64_t seed = 0;
};

// Correlated numeric attributes are N(3.5, 1.5^2) for class "0" and
// N(6.5, 1.5^2) for class "1", clipped to the bounds; uncorrelated ones are
// N(5, 1.5^2). Correlated categorical attributes put mass 0.7 on the first
// value for class "0" and on the last value for class "1"; uncorrelated ones
// are uniform. Labels are fair coin flips. TooFewRows when rows < 1,
// InvalidArgument for negative counts or no attributes.
absl::StatusOr<Dataset> GenerateSynthetic(const SyntheticSpec& spec);

// ---------------------------------------------------------------------------
// Cross-validated comparison

// "majority" predicts the most frequent training class; the others map to
// FitMode.
struct MethodSpec {
  std::string method = "plain";
  NoiseFamily noise = NoiseFamily::kCauchy;
  BetaMode beta_mode = BetaMode::kStrict;
};

// Noise family and beta mode as reported in results: "none" where the
// method adds no such noise (non-private methods; beta for global and
// Gaussian runs). Global runs report "laplace".
std::string NoiseLabel(const MethodSpec& method);
std::string BetaLabel(const MethodSpec& method);

enum class DeltaPreset { kZero, kInverseN, kInverseNSquared };

std::string_view DeltaPresetName(DeltaPreset preset);
std::optional<DeltaPreset> ParseDeltaPreset(std::string_view name);
double DeltaFor(DeltaPreset preset, int n);

struct ExperimentSpec {
  std::string dataset_name = "dataset";
  std::string data_path;
  std::string schema_path;
  // Used instead of the files when set.
  std::optional<SyntheticSpec> synthetic;
  std::vector<MethodSpec> methods;
  std::vector<double> epsilons;
  // Applied to Gaussian methods; pure-DP methods always run with delta 0.
  std::vector<DeltaPreset> deltas = {DeltaPreset::kInverseN};
  std::vector<Rational> ratios = {Rational(2)};
  int folds = 10;
  int repetitions = 5;
  uint64_t seed = 0;
  double gamma = 2.0;
  std::optional<int> trim;
  // Worker threads; results do not depend on it.
  int threads = 1;
  // Output files written by the CLI; empty to skip.
  std::string csv_path;
  std::string json_path;
};

// Reads the JSON spec format documented in the README. Relative paths are
// resolved against `base_dir`.
absl::StatusOr<ExperimentSpec> ParseExperimentSpec(std::string_view text,
                                                   const std::string& base_dir);

struct FoldScore {
  int repetition = 0;
  int fold = 0;
  double accuracy = 0.0;
  double train_seconds = 0.0;
};

// One (method, epsilon, delta, ratio) combination.
struct CellResult {
  MethodSpec method;
  double epsilon = 0.0;
  double delta = 0.0;
  Rational ratio{2};
  // Mean over repetitions of the per-repetition mean fold accuracy.
  double mean_accuracy = 0.0;
  // Standard deviation (n - 1 denominator) of the repetition means.
  double std_accuracy = 0.0;
  std::vector<double> repetition_means;
  // folds * repetitions entries, ordered by (repetition, fold).
  std::vector<FoldScore> scores;
  double train_seconds = 0.0;
};

struct ExperimentResult {
  std::string dataset;
  int rows = 0;
  int folds = 0;
  int repetitions = 0;
  uint64_t seed = 0;
  std::vector<CellResult> cells;
  std::string environment;

  const CellResult* Find(std::string_view method, double epsilon,
                         NoiseFamily noise) const;
};

// Loads the spec's dataset (files or synthetic) and runs RunOnDataset.
absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentSpec& spec);

// Every repetition reshuffles the folds with DeriveSeed(seed, {rep}); all
// methods see the same folds and the same noise streams, so comparisons
// between methods are paired. Errors carry (method, repetition, fold).
absl::StatusOr<ExperimentResult> RunOnDataset(const Dataset& dataset,
                                              const ExperimentSpec& spec);

// dp_smooth with Cauchy noise for each numeric:categorical ratio.
absl::StatusOr<ExperimentResult> BudgetSweep(const Dataset& dataset,
                                             const std::vector<Rational>& ratios,
                                             const std::vector<double>& epsilons,
                                             ExperimentSpec base);

std::string ResultsToCsv(const ExperimentResult& result);
std::string ResultsToJson(const ExperimentResult& result);

// ---------------------------------------------------------------------------
// Runtime and statistics

struct RuntimePoint {
  int rows = 0;
  double global_seconds = 0.0;
  double smooth_seconds = 0.0;
};

// For each size, generates data from `shape` with that many rows and
// records the median of `runs` training times of dp_global and dp_smooth.
// InvalidArgument unless sizes are ascending and positive.
absl::StatusOr<std::vector<RuntimePoint>> BenchmarkRuntime(
    const std::vector<int>& sizes, const SyntheticSpec& shape,
    double epsilon = 1.0, int runs = 3);

std::string RuntimeToCsv(const std::vector<RuntimePoint>& points);

struct PairedTest {
  int pairs = 0;
  double mean_difference = 0.0;
  double t = 0.0;
  // P(T >= t) under the null of no difference: small when a > b.
  double p_one_sided = 1.0;
};

// Paired t-test of a against b. InvalidArgument for mismatched or fewer
// than two pairs.
absl::StatusOr<PairedTest> PairedTTest(const std::vector<double>& a,
                                       const std::vector<double>& b);

}  // namespace dpnb

#endif  // DPNB_EXPERIMENTS_H_
