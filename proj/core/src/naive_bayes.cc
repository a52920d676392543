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

#include "dpnb/naive_bayes.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "absl/strings/str_cat.h"
#include "dpnb/errors.h"
#include "dpnb/truncated_normal.h"

namespace dpnb {
namespace {

// Seed-path tags. Streams depend only on what is being perturbed, never on
// the fit mode, so modes that share a code path draw identical noise.
enum SeedTag : uint64_t {
  kPriorStream = 1,
  kCategoricalStream = 2,
  kMeanStream = 3,
  kVarianceStream = 4,
};

struct ClassSlices {
  std::vector<int> counts;
  // values[a][c] for numeric attributes.
  std::vector<std::vector<std::vector<double>>> values;
  // joint[a][c][v] for categorical attributes.
  std::vector<std::vector<std::vector<int>>> joint;
};

ClassSlices Tabulate(const Dataset& dataset) {
  const DatasetSchema& schema = dataset.schema();
  const int classes = schema.class_count();
  ClassSlices s;
  s.counts.assign(classes, 0);
  s.values.resize(schema.attribute_count());
  s.joint.resize(schema.attribute_count());
  for (int a = 0; a < schema.attribute_count(); ++a) {
    const AttributeSpec& attribute = schema.attribute(a);
    if (attribute.is_numeric()) {
      s.values[a].resize(classes);
    } else {
      s.joint[a].assign(classes,
                        std::vector<int>(attribute.values().size(), 0));
    }
  }
  for (int r = 0; r < dataset.size(); ++r) {
    const int c = dataset.label(r);
    ++s.counts[c];
    for (int a = 0; a < schema.attribute_count(); ++a) {
      if (schema.attribute(a).is_numeric()) {
        s.values[a][c].push_back(dataset.cell(r, a));
      } else {
        ++s.joint[a][c][dataset.category(r, a)];
      }
    }
  }
  return s;
}

absl::Status CheckClassSizes(const DatasetSchema& schema,
                             const std::vector<int>& counts) {
  const int needed = schema.numeric_count() > 0 ? 2 : 1;
  for (int c = 0; c < schema.class_count(); ++c) {
    if (counts[c] < needed) {
      const std::string attribute =
          schema.numeric_count() > 0
              ? [&] {
                  for (const AttributeSpec& a : schema.attributes()) {
                    if (a.is_numeric()) return a.name();
                  }
                  return std::string();
                }()
              : std::string("(any)");
      return MakeError(ErrorKind::kDegenerateClass,
                       absl::StrCat("attribute '", attribute, "' class '",
                                    schema.class_spec().labels[c], "' has ",
                                    counts[c], " observations, needs ",
                                    needed));
    }
  }
  return absl::OkStatus();
}

CategoricalParams Smooth(std::vector<double> counts) {
  CategoricalParams p;
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  const double mass = total + static_cast<double>(counts.size());
  p.probabilities.reserve(counts.size());
  for (double count : counts) p.probabilities.push_back((count + 1) / mass);
  p.counts = std::move(counts);
  return p;
}

std::vector<double> Normalize(const std::vector<double>& counts) {
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  std::vector<double> priors(counts.size());
  for (size_t c = 0; c < counts.size(); ++c) {
    priors[c] = total > 0 ? counts[c] / total : 1.0 / counts.size();
  }
  return priors;
}

double SigmaFloor(const FitConfig& config, const AttributeSpec& attribute) {
  return config.sigma_floor_fraction * (attribute.upper() - attribute.lower());
}

double ClampVariance(double variance, const AttributeSpec& attribute) {
  const double width = attribute.upper() - attribute.lower();
  return std::clamp(variance, 0.0, width * width / 4);
}

NaiveBayesModel EmptyModel(const Dataset& dataset, const FitConfig& config) {
  NaiveBayesModel model;
  model.schema = dataset.shared_schema();
  const int attributes = dataset.schema().attribute_count();
  model.categorical.resize(attributes);
  model.numeric.resize(attributes);
  model.metadata = {config.mode,           config.mechanism,
                    config.epsilon,        config.numeric_weight,
                    config.trim,           config.sigma_floor_fraction,
                    config.seed};
  return model;
}

int DefaultTrim(const FitConfig& config, int n) {
  if (config.trim.has_value()) return *config.trim;
  if (config.mode != FitMode::kBunSteinke) return 0;
  const int m = std::max(1, static_cast<int>(std::ceil(0.01 * n)));
  // Keep at least two values after trimming.
  return std::clamp(m, 0, std::max(0, (n - 2) / 2));
}

absl::Status WithContext(const absl::Status& status, std::string_view where) {
  if (status.ok()) return status;
  return absl::Status(status.code(),
                      absl::StrCat(status.message(), " [", std::string(where),
                                   "]"));
}

struct Released {
  double value = 0.0;
  NoiseSpec spec;
};

// One numeric statistic released with smooth-sensitivity noise.
absl::StatusOr<Released> ReleaseSmooth(double statistic, double epsilon,
                                       const MechanismOptions& options,
                                       const BoundedSample& sample,
                                       Statistic kind, int trim, Rng& rng) {
  absl::StatusOr<double> beta = BetaFor(epsilon, options);
  if (!beta.ok()) return beta.status();
  absl::StatusOr<SensitivityReport> report =
      kind == Statistic::kVariance ? SmoothSensitivityVariance(sample, *beta)
      : trim > 0 ? SmoothSensitivityTrimmedMean(sample, TrimSpec{trim}, *beta)
                 : SmoothSensitivityMean(sample, *beta);
  if (!report.ok()) return report.status();
  absl::StatusOr<NoiseSpec> spec =
      CalibrateSmooth(report->smooth, epsilon, *beta, options);
  if (!spec.ok()) return spec.status();
  return Released{statistic + Sample(*spec, rng), *spec};
}

absl::StatusOr<Released> ReleaseGlobal(double statistic, double epsilon,
                                       Statistic kind, const AttributeSpec& a,
                                       int n, int trim, Rng& rng) {
  absl::StatusOr<double> gs =
      GlobalSensitivity(kind, a.lower(), a.upper(), n, TrimSpec{trim});
  if (!gs.ok()) return gs.status();
  absl::StatusOr<NoiseSpec> spec = CalibrateGlobalLaplace(*gs, epsilon);
  if (!spec.ok()) return spec.status();
  return Released{statistic + Sample(*spec, rng), *spec};
}

// Bounds of x^2 for x in [lower, upper].
std::pair<double, double> SquareBounds(double lower, double upper) {
  const double hi = std::max(lower * lower, upper * upper);
  const double lo = (lower <= 0 && upper >= 0)
                        ? 0.0
                        : std::min(lower * lower, upper * upper);
  return {lo, hi};
}

absl::Status FitNumericCell(const FitConfig& config, const PrivacyBudget& budget,
                            const AttributeSpec& attribute, int a, int c,
                            const std::string& class_label,
                            std::vector<double> values,
                            NaiveBayesModel& model) {
  const int n = static_cast<int>(values.size());
  absl::StatusOr<BoundedSample> sample = BoundedSample::Create(
      std::move(values), attribute.lower(), attribute.upper());
  if (!sample.ok()) return sample.status();
  const int m = DefaultTrim(config, n);
  const TrimSpec trim{m};
  const std::string mean_label = NumericMeanLabel(attribute.name());
  const std::string variance_label = NumericVarianceLabel(attribute.name());
  const double floor = SigmaFloor(config, attribute);
  const MechanismOptions& options = config.mechanism;
  const uint64_t ua = static_cast<uint64_t>(a);
  const uint64_t uc = static_cast<uint64_t>(c);
  Rng mean_rng(DeriveSeed(config.seed, {kMeanStream, ua, uc}));
  Rng variance_rng(DeriveSeed(config.seed, {kVarianceStream, ua, uc}));

  double mean = 0.0;
  double variance = 0.0;
  if (config.mode == FitMode::kBunSteinke) {
    const double mean_eps = budget.Find(mean_label)->epsilon;
    absl::StatusOr<MeanEstimate> mu =
        EstimateMeanBunSteinke(*sample, trim, mean_eps, options, mean_rng);
    if (!mu.ok()) return mu.status();
    mean = mu->value;
    model.provenance.push_back(
        {absl::StrCat(mean_label, "|", class_label), mu->noise, m});

    const auto [lo2, hi2] = SquareBounds(attribute.lower(), attribute.upper());
    std::vector<double> squares;
    squares.reserve(n);
    for (double x : sample->values()) squares.push_back(x * x);
    absl::StatusOr<BoundedSample> squared =
        BoundedSample::Create(std::move(squares), lo2, hi2);
    if (!squared.ok()) return squared.status();
    const std::string second_label = absl::StrCat(variance_label, ":second_moment");
    const std::string first_label = absl::StrCat(variance_label, ":first_moment");
    absl::StatusOr<MeanEstimate> ex2 = EstimateMeanBunSteinke(
        *squared, trim, budget.Find(second_label)->epsilon, options,
        variance_rng);
    if (!ex2.ok()) return ex2.status();
    absl::StatusOr<MeanEstimate> ex = EstimateMeanBunSteinke(
        *sample, trim, budget.Find(first_label)->epsilon, options,
        variance_rng);
    if (!ex.ok()) return ex.status();
    variance = ex2->value - ex->value * ex->value;
    model.provenance.push_back(
        {absl::StrCat(second_label, "|", class_label), ex2->noise, m});
    model.provenance.push_back(
        {absl::StrCat(first_label, "|", class_label), ex->noise, m});
  } else {
    absl::StatusOr<BoundedSample> trimmed = TrimSample(*sample, trim);
    if (!trimmed.ok()) return trimmed.status();
    if (trimmed->size() < 2) {
      return MakeError(ErrorKind::kTrimTooLarge,
                       absl::StrCat("trim ", m, " leaves ", trimmed->size(),
                                    " of ", n, " values"));
    }
    const double mean_eps = budget.Find(mean_label)->epsilon;
    const double variance_eps = budget.Find(variance_label)->epsilon;
    const Statistic mean_kind =
        m > 0 ? Statistic::kTrimmedMean : Statistic::kMean;
    absl::StatusOr<Released> mu =
        config.mode == FitMode::kSmooth
            ? ReleaseSmooth(trimmed->Mean(), mean_eps, options, *sample,
                            mean_kind, m, mean_rng)
            : ReleaseGlobal(trimmed->Mean(), mean_eps, mean_kind, attribute, n,
                            m, mean_rng);
    if (!mu.ok()) return mu.status();
    absl::StatusOr<Released> var =
        config.mode == FitMode::kSmooth
            ? ReleaseSmooth(trimmed->Variance(), variance_eps, options,
                            *trimmed, Statistic::kVariance, 0, variance_rng)
            : ReleaseGlobal(trimmed->Variance(), variance_eps,
                            Statistic::kVariance, attribute, trimmed->size(), 0,
                            variance_rng);
    if (!var.ok()) return var.status();
    mean = mu->value;
    variance = var->value;
    model.provenance.push_back(
        {absl::StrCat(mean_label, "|", class_label), mu->spec, m});
    model.provenance.push_back(
        {absl::StrCat(variance_label, "|", class_label), var->spec, m});
  }

  GaussianParams& params = model.numeric[a][c];
  params.lower = attribute.lower();
  params.upper = attribute.upper();
  params.mean = std::clamp(mean, attribute.lower(), attribute.upper());
  params.sigma = std::max(std::sqrt(ClampVariance(variance, attribute)), floor);
  return absl::OkStatus();
}

}  // namespace

std::string_view FitModeName(FitMode mode) {
  switch (mode) {
    case FitMode::kPlain:
      return "plain";
    case FitMode::kSmooth:
      return "dp_smooth";
    case FitMode::kGlobal:
      return "dp_global";
    case FitMode::kBunSteinke:
      return "dp_bunsteinke";
  }
  return "unknown";
}

std::optional<FitMode> ParseFitMode(std::string_view name) {
  if (name.starts_with("dp_")) name.remove_prefix(3);
  if (name == "plain") return FitMode::kPlain;
  if (name == "smooth") return FitMode::kSmooth;
  if (name == "global") return FitMode::kGlobal;
  if (name == "bunsteinke") return FitMode::kBunSteinke;
  return std::nullopt;
}

absl::StatusOr<double> BetaFor(double epsilon,
                               const MechanismOptions& options) {
  switch (options.noise) {
    case NoiseFamily::kCauchy:
      return SmoothingBeta(epsilon, options.gamma, options.beta_mode);
    case NoiseFamily::kGaussian:
      return ApproxBeta(epsilon, options.delta);
    case NoiseFamily::kLaplace:
      break;
  }
  return MakeError(ErrorKind::kInvalidArgument,
                   "smooth-sensitivity noise must be cauchy or gaussian");
}

absl::StatusOr<NoiseSpec> CalibrateSmooth(double smooth, double epsilon,
                                          double beta,
                                          const MechanismOptions& options) {
  if (options.noise == NoiseFamily::kGaussian) {
    return CalibrateApprox(smooth, epsilon, options.delta, beta);
  }
  if (options.noise == NoiseFamily::kCauchy) {
    return CalibratePure(smooth, epsilon, options.gamma, options.beta_mode,
                         beta);
  }
  return MakeError(ErrorKind::kInvalidArgument,
                   "smooth-sensitivity noise must be cauchy or gaussian");
}

absl::Status ValidateModel(const NaiveBayesModel& model) {
  auto fail = [](std::string detail) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("invalid model: ", detail));
  };
  if (model.schema == nullptr) return fail("no schema");
  const DatasetSchema& schema = *model.schema;
  const int classes = schema.class_count();
  constexpr double kTolerance = 1e-9;
  if (static_cast<int>(model.priors.size()) != classes ||
      static_cast<int>(model.class_counts.size()) != classes) {
    return fail("prior count differs from class count");
  }
  double total = 0.0;
  for (int c = 0; c < classes; ++c) {
    if (!(model.priors[c] >= 0) || !(model.class_counts[c] >= 0)) {
      return fail(absl::StrCat("negative prior or count for class ", c));
    }
    total += model.priors[c];
  }
  if (std::abs(total - 1) > kTolerance) return fail("priors do not sum to 1");
  if (static_cast<int>(model.categorical.size()) != schema.attribute_count() ||
      static_cast<int>(model.numeric.size()) != schema.attribute_count()) {
    return fail("attribute tables differ from schema");
  }
  for (int a = 0; a < schema.attribute_count(); ++a) {
    const AttributeSpec& attribute = schema.attribute(a);
    if (attribute.is_categorical()) {
      if (static_cast<int>(model.categorical[a].size()) != classes ||
          !model.numeric[a].empty()) {
        return fail(absl::StrCat("bad tables for '", attribute.name(), "'"));
      }
      for (const CategoricalParams& p : model.categorical[a]) {
        if (p.counts.size() != attribute.values().size() ||
            p.probabilities.size() != attribute.values().size()) {
          return fail(absl::StrCat("bad value count for '", attribute.name(),
                                   "'"));
        }
        double sum = 0.0;
        for (size_t v = 0; v < p.counts.size(); ++v) {
          if (!(p.counts[v] >= 0) || !(p.probabilities[v] >= 0)) {
            return fail(absl::StrCat("negative entry for '", attribute.name(),
                                     "'"));
          }
          sum += p.probabilities[v];
        }
        if (std::abs(sum - 1) > kTolerance) {
          return fail(absl::StrCat("probabilities of '", attribute.name(),
                                   "' do not sum to 1"));
        }
      }
    } else {
      if (static_cast<int>(model.numeric[a].size()) != classes ||
          !model.categorical[a].empty()) {
        return fail(absl::StrCat("bad tables for '", attribute.name(), "'"));
      }
      const double floor = model.metadata.sigma_floor_fraction *
                           (attribute.upper() - attribute.lower());
      for (const GaussianParams& p : model.numeric[a]) {
        if (!std::isfinite(p.mean) || !std::isfinite(p.sigma) ||
            !(p.sigma > 0) || p.sigma < floor * (1 - kTolerance)) {
          return fail(absl::StrCat("bad gaussian for '", attribute.name(),
                                   "'"));
        }
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<NaiveBayesModel> FitPlain(const Dataset& dataset,
                                         const FitConfig& config) {
  const DatasetSchema& schema = dataset.schema();
  ClassSlices slices = Tabulate(dataset);
  if (absl::Status s = CheckClassSizes(schema, slices.counts); !s.ok()) {
    return s;
  }
  FitConfig plain = config;
  plain.mode = FitMode::kPlain;
  NaiveBayesModel model = EmptyModel(dataset, plain);
  model.class_counts.assign(slices.counts.begin(), slices.counts.end());
  model.priors = Normalize(model.class_counts);
  for (int a = 0; a < schema.attribute_count(); ++a) {
    const AttributeSpec& attribute = schema.attribute(a);
    for (int c = 0; c < schema.class_count(); ++c) {
      if (attribute.is_categorical()) {
        const std::vector<int>& joint = slices.joint[a][c];
        model.categorical[a].push_back(
            Smooth(std::vector<double>(joint.begin(), joint.end())));
        continue;
      }
      const std::vector<double>& xs = slices.values[a][c];
      const double n = static_cast<double>(xs.size());
      const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
      double squares = 0.0;
      for (double x : xs) squares += (x - mean) * (x - mean);
      model.numeric[a].push_back(
          {mean, std::max(std::sqrt(squares / n), SigmaFloor(plain, attribute)),
           attribute.lower(), attribute.upper()});
    }
  }
  return model;
}

absl::StatusOr<NaiveBayesModel> FitDp(const Dataset& dataset,
                                      const FitConfig& config) {
  if (config.mode == FitMode::kPlain) return FitPlain(dataset, config);
  const DatasetSchema& schema = dataset.schema();
  const MechanismOptions& options = config.mechanism;
  // Global mode always releases numeric statistics with Laplace noise.
  if (config.mode != FitMode::kGlobal &&
      options.noise != NoiseFamily::kCauchy &&
      options.noise != NoiseFamily::kGaussian) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "noise must be cauchy or gaussian");
  }
  if (!(options.gamma > 1)) {
    return MakeError(ErrorKind::kGammaOutOfRange,
                     absl::StrCat("gamma must exceed 1, got ", options.gamma));
  }
  if (options.noise == NoiseFamily::kGaussian &&
      config.mode != FitMode::kGlobal &&
      !(options.delta > 0 && options.delta < 1)) {
    return MakeError(ErrorKind::kDeltaOutOfRange,
                     absl::StrCat("delta must lie in (0, 1), got ",
                                  options.delta));
  }
  if (config.trim.has_value() && *config.trim < 0) {
    return MakeError(ErrorKind::kInvalidArgument, "trim must be >= 0");
  }
  if (!(config.sigma_floor_fraction > 0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "sigma floor fraction must be positive");
  }
  const bool gaussian_numeric = options.noise == NoiseFamily::kGaussian &&
                                config.mode != FitMode::kGlobal;
  absl::StatusOr<PrivacyBudget> budget =
      AllocateBudget(config.epsilon, schema, config.numeric_weight,
                     gaussian_numeric ? options.delta : 0.0);
  if (!budget.ok()) return budget.status();
  for (const AttributeSpec& attribute : schema.attributes()) {
    if (!attribute.is_numeric()) continue;
    const std::string mean_label = NumericMeanLabel(attribute.name());
    const std::string variance_label = NumericVarianceLabel(attribute.name());
    if (gaussian_numeric) {
      budget->SetDelta(mean_label, options.delta).IgnoreError();
      budget->SetDelta(variance_label, options.delta).IgnoreError();
    }
    if (config.mode == FitMode::kBunSteinke) {
      absl::Status s =
          budget->SplitEntry(variance_label, {"second_moment", "first_moment"});
      if (!s.ok()) return s;
    }
  }

  ClassSlices slices = Tabulate(dataset);
  if (absl::Status s = CheckClassSizes(schema, slices.counts); !s.ok()) {
    return s;
  }
  NaiveBayesModel model = EmptyModel(dataset, config);
  const double unit = budget->per_access_epsilon();
  const std::vector<std::string>& labels = schema.class_spec().labels;

  // Class counts: one access, unit sensitivity.
  {
    absl::StatusOr<NoiseSpec> spec =
        CalibratePure(1.0, unit, options.gamma, options.beta_mode);
    if (!spec.ok()) return spec.status();
    Rng rng(DeriveSeed(config.seed, {kPriorStream}));
    for (int c = 0; c < schema.class_count(); ++c) {
      model.class_counts.push_back(
          std::max(0.0, slices.counts[c] + Sample(*spec, rng)));
    }
    model.priors = Normalize(model.class_counts);
    model.provenance.push_back({std::string(kClassPriorLabel), *spec, 0});
  }

  for (int a = 0; a < schema.attribute_count(); ++a) {
    const AttributeSpec& attribute = schema.attribute(a);
    if (!attribute.is_categorical()) continue;
    absl::StatusOr<NoiseSpec> spec = CalibrateGlobalLaplace(1.0, unit);
    if (!spec.ok()) return spec.status();
    for (int c = 0; c < schema.class_count(); ++c) {
      Rng rng(DeriveSeed(config.seed, {kCategoricalStream,
                                       static_cast<uint64_t>(a),
                                       static_cast<uint64_t>(c)}));
      std::vector<double> counts;
      for (int joint : slices.joint[a][c]) {
        counts.push_back(std::max(0.0, joint + Sample(*spec, rng)));
      }
      model.categorical[a].push_back(Smooth(std::move(counts)));
      model.provenance.push_back(
          {absl::StrCat(CategoricalLabel(attribute.name()), "|", labels[c]),
           *spec, 0});
    }
  }

  for (int a = 0; a < schema.attribute_count(); ++a) {
    const AttributeSpec& attribute = schema.attribute(a);
    if (!attribute.is_numeric()) continue;
    model.numeric[a].resize(schema.class_count());
    for (int c = 0; c < schema.class_count(); ++c) {
      absl::Status s =
          FitNumericCell(config, *budget, attribute, a, c, labels[c],
                         std::move(slices.values[a][c]), model);
      if (!s.ok()) {
        return WithContext(s, absl::StrCat("attribute '", attribute.name(),
                                           "' class '", labels[c], "'"));
      }
    }
  }
  model.budget = *std::move(budget);
  return model;
}

absl::StatusOr<NaiveBayesModel> Fit(const Dataset& dataset,
                                    const FitConfig& config) {
  return config.mode == FitMode::kPlain ? FitPlain(dataset, config)
                                        : FitDp(dataset, config);
}

absl::StatusOr<MeanEstimate> EstimateMeanBunSteinke(
    const BoundedSample& sample, TrimSpec trim, double epsilon,
    const MechanismOptions& options, Rng& rng) {
  absl::StatusOr<double> trimmed_mean = TrimmedMean(sample, trim);
  if (!trimmed_mean.ok()) return trimmed_mean.status();
  absl::StatusOr<double> beta = BetaFor(epsilon, options);
  if (!beta.ok()) return beta.status();
  absl::StatusOr<SensitivityReport> report =
      SmoothSensitivityTrimmedMean(sample, trim, *beta);
  if (!report.ok()) return report.status();
  absl::StatusOr<NoiseSpec> spec =
      CalibrateSmooth(report->smooth, epsilon, *beta, options);
  if (!spec.ok()) return spec.status();
  MeanEstimate estimate;
  estimate.trimmed_mean = *trimmed_mean;
  estimate.value = std::clamp(*trimmed_mean + Sample(*spec, rng),
                              sample.lower(), sample.upper());
  estimate.noise = *spec;
  estimate.report = *std::move(report);
  return estimate;
}

absl::StatusOr<Prediction> Predict(const NaiveBayesModel& model,
                                   std::span<const double> instance) {
  const DatasetSchema& schema = *model.schema;
  if (static_cast<int>(instance.size()) != schema.attribute_count()) {
    return MakeError(ErrorKind::kColumnMismatch,
                     absl::StrCat("instance has ", instance.size(),
                                  " values, schema declares ",
                                  schema.attribute_count()));
  }
  Prediction prediction;
  prediction.log_scores.resize(schema.class_count());
  for (int c = 0; c < schema.class_count(); ++c) {
    prediction.log_scores[c] = std::log(model.priors[c]);
  }
  for (int a = 0; a < schema.attribute_count(); ++a) {
    const AttributeSpec& attribute = schema.attribute(a);
    const double x = instance[a];
    if (attribute.is_numeric()) {
      if (!(x >= attribute.lower() && x <= attribute.upper())) {
        return MakeError(ErrorKind::kOutOfBounds,
                         absl::StrCat("attribute '", attribute.name(),
                                      "' value ", x, " outside [",
                                      attribute.lower(), ", ",
                                      attribute.upper(), "]"));
      }
      for (int c = 0; c < schema.class_count(); ++c) {
        const GaussianParams& p = model.numeric[a][c];
        prediction.log_scores[c] +=
            model.truncated_likelihood
                ? TruncatedNormalLogPdf(x, p.mean, p.sigma, p.lower, p.upper)
                : NormalLogPdf(x, p.mean, p.sigma);
      }
    } else {
      const int count = static_cast<int>(attribute.values().size());
      if (!(x >= 0 && x < count) || x != std::floor(x)) {
        return MakeError(ErrorKind::kUnknownCategory,
                         absl::StrCat("attribute '", attribute.name(),
                                      "' category index ", x));
      }
      for (int c = 0; c < schema.class_count(); ++c) {
        prediction.log_scores[c] +=
            std::log(model.categorical[a][c].probabilities[static_cast<int>(x)]);
      }
    }
  }
  int best = 0;
  for (int c = 1; c < schema.class_count(); ++c) {
    if (prediction.log_scores[c] > prediction.log_scores[best]) best = c;
  }
  prediction.label = best;
  return prediction;
}

absl::StatusOr<double> Accuracy(const NaiveBayesModel& model,
                                const Dataset& dataset) {
  if (dataset.size() == 0) {
    return MakeError(ErrorKind::kTooFewRows, "empty evaluation set");
  }
  int correct = 0;
  for (int r = 0; r < dataset.size(); ++r) {
    absl::StatusOr<Prediction> p = Predict(model, dataset.row(r));
    if (!p.ok()) return p.status();
    if (p->label == dataset.label(r)) ++correct;
  }
  return static_cast<double>(correct) / dataset.size();
}

double MaxParameterDeviation(const NaiveBayesModel& a,
                             const NaiveBayesModel& b) {
  double worst = 0.0;
  auto track = [&worst](double x, double y) {
    worst = std::max(worst, std::abs(x - y));
  };
  for (size_t c = 0; c < a.priors.size() && c < b.priors.size(); ++c) {
    track(a.priors[c], b.priors[c]);
  }
  for (size_t i = 0; i < a.categorical.size() && i < b.categorical.size();
       ++i) {
    for (size_t c = 0; c < a.categorical[i].size(); ++c) {
      const auto& pa = a.categorical[i][c].probabilities;
      const auto& pb = b.categorical[i][c].probabilities;
      for (size_t v = 0; v < pa.size() && v < pb.size(); ++v) {
        track(pa[v], pb[v]);
      }
    }
  }
  for (size_t i = 0; i < a.numeric.size() && i < b.numeric.size(); ++i) {
    for (size_t c = 0; c < a.numeric[i].size(); ++c) {
      track(a.numeric[i][c].mean, b.numeric[i][c].mean);
      track(a.numeric[i][c].sigma, b.numeric[i][c].sigma);
    }
  }
  return worst;
}

}  // namespace dpnb
