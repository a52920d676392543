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

#ifndef DPNB_NAIVE_BAYES_H_
#define DPNB_NAIVE_BAYES_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dpnb/budget.h"
#include "dpnb/dataset.h"
#include "dpnb/noise.h"
#include "dpnb/rng.h"
#include "dpnb/sensitivity.h"

namespace dpnb {

enum class FitMode { kPlain, kSmooth, kGlobal, kBunSteinke };

std::string_view FitModeName(FitMode mode);
// Accepts "plain", "smooth", "global", "bunsteinke" and the "dp_" forms.
std::optional<FitMode> ParseFitMode(std::string_view name);

// Noise settings for the numeric (smooth-sensitivity) accesses.
struct MechanismOptions {
  // kCauchy for pure DP, kGaussian for (eps, delta)-DP.
  NoiseFamily noise = NoiseFamily::kCauchy;
  double gamma = 2.0;
  BetaMode beta_mode = BetaMode::kStrict;
  // Per-access delta; used only with kGaussian.
  double delta = 0.0;
};

// Smoothing parameter the options require for an access with budget
// `epsilon`.
absl::StatusOr<double> BetaFor(double epsilon, const MechanismOptions& options);

// Noise for a statistic whose beta-smooth sensitivity is `smooth`.
absl::StatusOr<NoiseSpec> CalibrateSmooth(double smooth, double epsilon,
                                          double beta,
                                          const MechanismOptions& options);

struct FitConfig {
  FitMode mode = FitMode::kPlain;
  MechanismOptions mechanism;
  // Total budget; ignored by kPlain.
  double epsilon = 1.0;
  Rational numeric_weight{2};
  // Values trimmed from each end of every per-class numeric sample. Unset:
  // 0 for kSmooth and kGlobal, max(1, ceil(0.01 n)) for kBunSteinke.
  std::optional<int> trim;
  // sigma is never below sigma_floor_fraction * (U - L).
  double sigma_floor_fraction = 1e-6;
  uint64_t seed = 0;
};

struct CategoricalParams {
  // Per value: count after noise and truncation at zero (before smoothing).
  std::vector<double> counts;
  // Per value: (count + 1) / (sum of counts + number of values).
  std::vector<double> probabilities;
};

struct GaussianParams {
  double mean = 0.0;
  double sigma = 1.0;
  double lower = 0.0;
  double upper = 1.0;
};

// The noise draw behind one released parameter.
struct NoiseRecord {
  // "<ledger label>|<class label>", or the ledger label for class priors.
  std::string parameter;
  NoiseSpec spec;
  int trim = 0;
};

struct ModelMetadata {
  FitMode mode = FitMode::kPlain;
  MechanismOptions mechanism;
  double epsilon = 0.0;
  Rational numeric_weight{2};
  std::optional<int> trim;
  double sigma_floor_fraction = 1e-6;
  uint64_t seed = 0;
};

struct NaiveBayesModel {
  std::shared_ptr<const DatasetSchema> schema;
  // Per class, after noise and truncation; priors renormalize them.
  std::vector<double> class_counts;
  std::vector<double> priors;
  // [attribute][class]; the inner vector is empty for numeric attributes.
  std::vector<std::vector<CategoricalParams>> categorical;
  // [attribute][class]; the inner vector is empty for categorical attributes.
  std::vector<std::vector<GaussianParams>> numeric;
  // Numeric likelihoods use the normal truncated to [lower, upper]; a plain
  // normal when false.
  bool truncated_likelihood = true;
  ModelMetadata metadata;
  // Present for private fits.
  std::optional<PrivacyBudget> budget;
  std::vector<NoiseRecord> provenance;
};

// Checks the model invariants: priors and categorical probabilities are
// nonnegative and sum to 1, sigma >= floor > 0, counts >= 0, shapes match
// the schema. InvalidArgument naming the first violation.
absl::Status ValidateModel(const NaiveBayesModel& model);

// Frequencies, add-one categorical smoothing, per-class mean and population
// standard deviation. DegenerateClass when a class has fewer than two rows
// and the schema has numeric attributes, or no rows at all.
absl::StatusOr<NaiveBayesModel> FitPlain(const Dataset& dataset,
                                         const FitConfig& config = {});

// Private fit; the budget ledger of the result sums to config.epsilon.
// Categorical counts get Laplace(1/eps') noise and class counts Cauchy noise
// with unit sensitivity. Numeric means and variances are released per
// config.mode; means are clamped into [L, U], variances into
// [0, (U - L)^2 / 4] and sigma to the floor.
absl::StatusOr<NaiveBayesModel> FitDp(const Dataset& dataset,
                                      const FitConfig& config);

// Dispatches on config.mode.
absl::StatusOr<NaiveBayesModel> Fit(const Dataset& dataset,
                                    const FitConfig& config);

struct MeanEstimate {
  double value = 0.0;
  double trimmed_mean = 0.0;
  NoiseSpec noise;
  SensitivityReport report;
};

// Trimmed mean plus noise scaled to the smooth sensitivity of the trimmed
// mean, projected onto [L, U]. TrimTooLarge when n - 2m < 2.
absl::StatusOr<MeanEstimate> EstimateMeanBunSteinke(
    const BoundedSample& sample, TrimSpec trim, double epsilon,
    const MechanismOptions& options, Rng& rng);

struct Prediction {
  int label = 0;
  std::vector<double> log_scores;
};

// argmax_c log prior(c) + sum_i log likelihood(x_i | c); the first class in
// schema order wins ties. `instance` is encoded as in Dataset::row. Fails
// with OutOfBounds for a numeric value outside its bounds and
// UnknownCategory for a bad category index.
absl::StatusOr<Prediction> Predict(const NaiveBayesModel& model,
                                   std::span<const double> instance);

// Fraction of rows whose predicted label matches.
absl::StatusOr<double> Accuracy(const NaiveBayesModel& model,
                                const Dataset& dataset);

// Largest absolute difference between corresponding priors, categorical
// probabilities, means and sigmas of two models over the same schema.
double MaxParameterDeviation(const NaiveBayesModel& a,
                             const NaiveBayesModel& b);

}  // namespace dpnb

#endif  // DPNB_NAIVE_BAYES_H_
