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

#include "dpnb/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <memory>
#include <numeric>
#include <thread>
#include <utility>

#include "absl/strings/str_cat.h"
#include "boost/math/distributions/students_t.hpp"
#include "dpnb/csv.h"
#include "dpnb/errors.h"
#include "dpnb/rng.h"
#include "dpnb/schema_io.h"
#include "nlohmann/json.hpp"

namespace dpnb {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

enum SeedTag : uint64_t { kSplitStream = 0, kNoiseStream = 1, kBenchStream = 2 };

bool IsMajority(const MethodSpec& m) { return m.method == "majority"; }

absl::Status CheckMethod(const MethodSpec& m) {
  if (IsMajority(m) || ParseFitMode(m.method).has_value()) {
    return absl::OkStatus();
  }
  return MakeError(ErrorKind::kInvalidArgument,
                   absl::StrCat("unknown method '", m.method, "'"));
}

bool IsPrivate(const MethodSpec& m) {
  if (IsMajority(m)) return false;
  return ParseFitMode(m.method).value_or(FitMode::kPlain) != FitMode::kPlain;
}

struct CellPlan {
  CellResult result;
  int epsilon_index = 0;
  int ratio_index = 0;
};

std::vector<CellPlan> PlanCells(const ExperimentSpec& spec, int rows) {
  std::vector<CellPlan> plan;
  for (const MethodSpec& method : spec.methods) {
    if (!IsPrivate(method)) {
      CellPlan cell;
      cell.result.method = method;
      cell.result.epsilon = 0.0;
      plan.push_back(cell);
      continue;
    }
    std::vector<DeltaPreset> deltas = {DeltaPreset::kZero};
    const bool gaussian = method.noise == NoiseFamily::kGaussian &&
                          ParseFitMode(method.method) != FitMode::kGlobal;
    if (gaussian) deltas = spec.deltas;
    // Global mode releases numeric statistics with Laplace noise whatever
    // family the spec names.
    MethodSpec recorded = method;
    if (ParseFitMode(method.method) == FitMode::kGlobal) {
      recorded.noise = NoiseFamily::kLaplace;
    }
    for (size_t e = 0; e < spec.epsilons.size(); ++e) {
      for (DeltaPreset delta : deltas) {
        for (size_t r = 0; r < spec.ratios.size(); ++r) {
          CellPlan cell;
          cell.result.method = recorded;
          cell.result.epsilon = spec.epsilons[e];
          cell.result.delta = DeltaFor(delta, rows);
          cell.result.ratio = spec.ratios[r];
          cell.epsilon_index = static_cast<int>(e);
          cell.ratio_index = static_cast<int>(r);
          plan.push_back(cell);
        }
      }
    }
  }
  return plan;
}

int MajorityLabel(const Dataset& train) {
  std::vector<int> counts(train.schema().class_count(), 0);
  for (int label : train.labels()) ++counts[label];
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) -
                          counts.begin());
}

absl::StatusOr<FoldScore> RunCell(const CellPlan& cell, const Fold& fold,
                                  const ExperimentSpec& spec, int rep, int f) {
  FoldScore score{rep, f, 0.0, 0.0};
  const MethodSpec& method = cell.result.method;
  if (IsMajority(method)) {
    const auto start = Clock::now();
    const int label = MajorityLabel(fold.train);
    score.train_seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    const auto& labels = fold.test.labels();
    score.accuracy =
        static_cast<double>(std::count(labels.begin(), labels.end(), label)) /
        labels.size();
    return score;
  }
  FitConfig config;
  config.mode = *ParseFitMode(method.method);
  config.mechanism.noise = method.noise;
  config.mechanism.beta_mode = method.beta_mode;
  config.mechanism.gamma = spec.gamma;
  config.mechanism.delta = cell.result.delta;
  config.epsilon = cell.result.epsilon;
  config.numeric_weight = cell.result.ratio;
  config.trim = spec.trim;
  config.seed = DeriveSeed(
      spec.seed, {kNoiseStream, static_cast<uint64_t>(rep),
                  static_cast<uint64_t>(f),
                  static_cast<uint64_t>(cell.epsilon_index),
                  static_cast<uint64_t>(cell.ratio_index)});
  const auto start = Clock::now();
  absl::StatusOr<NaiveBayesModel> model = Fit(fold.train, config);
  score.train_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  if (!model.ok()) return model.status();
  absl::StatusOr<double> accuracy = Accuracy(*model, fold.test);
  if (!accuracy.ok()) return accuracy.status();
  score.accuracy = *accuracy;
  return score;
}

absl::Status RunRepetition(const Dataset& dataset, const ExperimentSpec& spec,
                           int rep, std::vector<CellPlan>& plan) {
  absl::StatusOr<std::vector<Fold>> folds = SplitFolds(
      dataset, spec.folds,
      DeriveSeed(spec.seed, {kSplitStream, static_cast<uint64_t>(rep)}));
  if (!folds.ok()) return folds.status();
  for (int f = 0; f < spec.folds; ++f) {
    for (CellPlan& cell : plan) {
      absl::StatusOr<FoldScore> score = RunCell(cell, (*folds)[f], spec, rep, f);
      if (!score.ok()) {
        return absl::Status(
            score.status().code(),
            absl::StrCat(score.status().message(), " [method ",
                         cell.result.method.method, ", repetition ", rep,
                         ", fold ", f, "]"));
      }
      cell.result.scores[static_cast<size_t>(rep) * spec.folds + f] = *score;
    }
  }
  return absl::OkStatus();
}

void Summarize(CellResult& cell, int folds, int repetitions) {
  cell.repetition_means.assign(repetitions, 0.0);
  cell.train_seconds = 0.0;
  for (const FoldScore& s : cell.scores) {
    cell.repetition_means[s.repetition] += s.accuracy / folds;
    cell.train_seconds += s.train_seconds;
  }
  const double mean = std::accumulate(cell.repetition_means.begin(),
                                      cell.repetition_means.end(), 0.0) /
                      repetitions;
  double squares = 0.0;
  for (double m : cell.repetition_means) squares += (m - mean) * (m - mean);
  cell.mean_accuracy = mean;
  cell.std_accuracy =
      repetitions > 1 ? std::sqrt(squares / (repetitions - 1)) : 0.0;
}

std::string Environment() {
  return absl::StrCat("compiler=", __VERSION__,
                      " threads=", std::thread::hardware_concurrency());
}

template <typename T>
double Median(std::vector<T> xs) {
  std::sort(xs.begin(), xs.end());
  const size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

std::string ResolvePath(const std::string& path, const std::string& base) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute() || base.empty()) return path;
  return (std::filesystem::path(base) / p).string();
}

}  // namespace

std::string NoiseLabel(const MethodSpec& method) {
  if (!IsPrivate(method)) return "none";
  if (ParseFitMode(method.method) == FitMode::kGlobal) return "laplace";
  return std::string(NoiseFamilyName(method.noise));
}

std::string BetaLabel(const MethodSpec& method) {
  if (!IsPrivate(method) || method.noise != NoiseFamily::kCauchy ||
      ParseFitMode(method.method) == FitMode::kGlobal) {
    return "none";
  }
  return std::string(BetaModeName(method.beta_mode));
}

std::string_view DeltaPresetName(DeltaPreset preset) {
  switch (preset) {
    case DeltaPreset::kZero:
      return "0";
    case DeltaPreset::kInverseN:
      return "1/n";
    case DeltaPreset::kInverseNSquared:
      return "1/n^2";
  }
  return "0";
}

std::optional<DeltaPreset> ParseDeltaPreset(std::string_view name) {
  if (name == "0") return DeltaPreset::kZero;
  if (name == "1/n") return DeltaPreset::kInverseN;
  if (name == "1/n^2" || name == "1/n2") return DeltaPreset::kInverseNSquared;
  return std::nullopt;
}

double DeltaFor(DeltaPreset preset, int n) {
  switch (preset) {
    case DeltaPreset::kZero:
      return 0.0;
    case DeltaPreset::kInverseN:
      return 1.0 / n;
    case DeltaPreset::kInverseNSquared:
      return 1.0 / (static_cast<double>(n) * n);
  }
  return 0.0;
}

const CellResult* ExperimentResult::Find(std::string_view method,
                                         double epsilon,
                                         NoiseFamily noise) const {
  for (const CellResult& cell : cells) {
    if (cell.method.method == method && cell.epsilon == epsilon &&
        cell.method.noise == noise) {
      return &cell;
    }
  }
  return nullptr;
}

absl::StatusOr<ExperimentResult> RunOnDataset(const Dataset& dataset,
                                              const ExperimentSpec& spec) {
  if (spec.folds < 2) {
    return MakeError(ErrorKind::kInvalidArgument, "folds must be >= 2");
  }
  if (spec.repetitions < 1) {
    return MakeError(ErrorKind::kInvalidArgument, "repetitions must be >= 1");
  }
  if (spec.methods.empty()) {
    return MakeError(ErrorKind::kInvalidArgument, "no methods requested");
  }
  bool any_private = false;
  for (const MethodSpec& m : spec.methods) {
    if (absl::Status s = CheckMethod(m); !s.ok()) return s;
    any_private = any_private || IsPrivate(m);
  }
  if (any_private && spec.epsilons.empty()) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "private methods need at least one epsilon");
  }
  if (spec.ratios.empty()) {
    return MakeError(ErrorKind::kInvalidArgument, "no budget ratios");
  }

  std::vector<CellPlan> base = PlanCells(spec, dataset.size());
  for (CellPlan& cell : base) {
    cell.result.scores.resize(static_cast<size_t>(spec.folds) *
                              spec.repetitions);
  }
  // Each worker fills disjoint score slots of its own copy of the plan, and
  // the copies are merged by repetition index afterwards.
  const int workers = std::clamp(spec.threads, 1, spec.repetitions);
  std::vector<std::vector<CellPlan>> plans(workers, base);
  std::vector<absl::Status> errors(spec.repetitions);
  auto work = [&](int w) {
    for (int rep = w; rep < spec.repetitions; rep += workers) {
      errors[rep] = RunRepetition(dataset, spec, rep, plans[w]);
      if (!errors[rep].ok()) return;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const absl::Status& s : errors) {
    if (!s.ok()) return s;
  }

  ExperimentResult result;
  result.dataset = spec.dataset_name;
  result.rows = dataset.size();
  result.folds = spec.folds;
  result.repetitions = spec.repetitions;
  result.seed = spec.seed;
  result.environment = Environment();
  for (size_t c = 0; c < base.size(); ++c) {
    CellResult cell = base[c].result;
    for (int rep = 0; rep < spec.repetitions; ++rep) {
      const std::vector<CellPlan>& source = plans[rep % workers];
      for (int f = 0; f < spec.folds; ++f) {
        const size_t slot = static_cast<size_t>(rep) * spec.folds + f;
        cell.scores[slot] = source[c].result.scores[slot];
      }
    }
    Summarize(cell, spec.folds, spec.repetitions);
    result.cells.push_back(std::move(cell));
  }
  return result;
}

absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentSpec& spec) {
  if (spec.synthetic.has_value()) {
    absl::StatusOr<Dataset> data = GenerateSynthetic(*spec.synthetic);
    if (!data.ok()) return data.status();
    return RunOnDataset(*data, spec);
  }
  absl::StatusOr<DatasetSchema> schema = LoadSchema(spec.schema_path);
  if (!schema.ok()) return schema.status();
  absl::StatusOr<Dataset> data = LoadCsvDataset(
      spec.data_path, std::make_shared<const DatasetSchema>(*std::move(schema)));
  if (!data.ok()) return data.status();
  return RunOnDataset(*data, spec);
}

absl::StatusOr<ExperimentResult> BudgetSweep(
    const Dataset& dataset, const std::vector<Rational>& ratios,
    const std::vector<double>& epsilons, ExperimentSpec base) {
  for (const Rational& r : ratios) {
    if (r <= 0) {
      return MakeError(ErrorKind::kInvalidArgument, "ratios must be positive");
    }
  }
  base.ratios = ratios;
  base.epsilons = epsilons;
  base.methods = {MethodSpec{"dp_smooth", NoiseFamily::kCauchy,
                             base.methods.empty()
                                 ? BetaMode::kStrict
                                 : base.methods.front().beta_mode}};
  return RunOnDataset(dataset, base);
}

std::string ResultsToCsv(const ExperimentResult& result) {
  std::string out = FormatCsvRow(
      {"dataset", "method", "noise", "epsilon", "delta", "ratio", "fold",
       "repetition", "accuracy", "train_seconds", "beta_mode"});
  for (const CellResult& cell : result.cells) {
    for (const FoldScore& s : cell.scores) {
      out += FormatCsvRow(
          {result.dataset, cell.method.method, NoiseLabel(cell.method),
           FormatDouble(cell.epsilon), FormatDouble(cell.delta),
           RatioToString(cell.ratio), absl::StrCat(s.fold),
           absl::StrCat(s.repetition), FormatDouble(s.accuracy),
           FormatDouble(s.train_seconds),
           BetaLabel(cell.method)});
    }
  }
  return out;
}

std::string ResultsToJson(const ExperimentResult& result) {
  json cells = json::array();
  for (const CellResult& cell : result.cells) {
    cells.push_back({{"method", cell.method.method},
                     {"noise", NoiseLabel(cell.method)},
                     {"beta_mode", BetaLabel(cell.method)},
                     {"epsilon", cell.epsilon},
                     {"delta", cell.delta},
                     {"ratio", RatioToString(cell.ratio)},
                     {"mean_accuracy", cell.mean_accuracy},
                     {"std_accuracy", cell.std_accuracy},
                     {"repetition_means", cell.repetition_means},
                     {"train_seconds", cell.train_seconds}});
  }
  json doc = {{"dataset", result.dataset},
              {"rows", result.rows},
              {"folds", result.folds},
              {"repetitions", result.repetitions},
              {"seed", result.seed},
              {"environment", result.environment},
              {"cells", cells}};
  return doc.dump(2) + "\n";
}

absl::StatusOr<ExperimentSpec> ParseExperimentSpec(std::string_view text,
                                                   const std::string& base_dir) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    return MakeError(ErrorKind::kParseError, "spec is not a JSON object");
  }
  ExperimentSpec spec;
  try {
    if (doc.contains("synthetic")) {
      const json& s = doc["synthetic"];
      SyntheticSpec syn;
      syn.rows = s.value("rows", syn.rows);
      syn.categorical = s.value("categorical", syn.categorical);
      syn.numeric = s.value("numeric", syn.numeric);
      syn.seed = s.value("seed", syn.seed);
      const std::optional<Correlated> kind =
          ParseCorrelated(s.value("correlated", std::string("numeric")));
      if (!kind) {
        return MakeError(ErrorKind::kParseError, "bad 'correlated' value");
      }
      syn.correlated = *kind;
      spec.synthetic = syn;
      spec.dataset_name = doc.value("name", std::string("synthetic"));
    } else {
      const json& d = doc.at("dataset");
      spec.dataset_name = d.value("name", std::string("dataset"));
      spec.data_path = ResolvePath(d.at("data").get<std::string>(), base_dir);
      spec.schema_path =
          ResolvePath(d.at("schema").get<std::string>(), base_dir);
    }
    for (const json& m : doc.at("methods")) {
      MethodSpec method;
      if (m.is_string()) {
        method.method = m.get<std::string>();
      } else {
        method.method = m.at("method").get<std::string>();
        const std::optional<NoiseFamily> noise =
            ParseNoiseFamily(m.value("noise", std::string("cauchy")));
        const std::optional<BetaMode> beta =
            ParseBetaMode(m.value("beta_mode", std::string("strict")));
        if (!noise || !beta) {
          return MakeError(ErrorKind::kParseError,
                           absl::StrCat("bad noise or beta_mode for method '",
                                        method.method, "'"));
        }
        method.noise = *noise;
        method.beta_mode = *beta;
      }
      if (absl::Status s = CheckMethod(method); !s.ok()) return s;
      spec.methods.push_back(method);
    }
    spec.epsilons = doc.value("epsilons", std::vector<double>{});
    if (doc.contains("deltas")) {
      spec.deltas.clear();
      for (const json& d : doc["deltas"]) {
        const std::optional<DeltaPreset> preset =
            ParseDeltaPreset(d.get<std::string>());
        if (!preset) {
          return MakeError(ErrorKind::kParseError,
                           absl::StrCat("bad delta preset ", d.dump()));
        }
        spec.deltas.push_back(*preset);
      }
    }
    if (doc.contains("ratios")) {
      spec.ratios.clear();
      for (const json& r : doc["ratios"]) {
        absl::StatusOr<Rational> ratio = ParseRatio(
            r.is_string() ? r.get<std::string>() : r.dump());
        if (!ratio.ok()) return ratio.status();
        spec.ratios.push_back(*ratio);
      }
    }
    spec.folds = doc.value("folds", spec.folds);
    spec.repetitions = doc.value("repetitions", spec.repetitions);
    if (!doc.contains("seed")) {
      return MakeError(ErrorKind::kInvalidArgument,
                       "evaluation specs need an explicit 'seed'");
    }
    spec.seed = doc.at("seed").get<uint64_t>();
    spec.gamma = doc.value("gamma", spec.gamma);
    if (doc.contains("trim") && !doc["trim"].is_null()) {
      spec.trim = doc["trim"].get<int>();
    }
    spec.threads = doc.value("threads", spec.threads);
    if (doc.contains("output")) {
      const json& o = doc["output"];
      spec.csv_path = ResolvePath(o.value("csv", std::string()), base_dir);
      spec.json_path = ResolvePath(o.value("json", std::string()), base_dir);
    }
  } catch (const json::exception& e) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrCat("malformed spec: ", e.what()));
  }
  return spec;
}

absl::StatusOr<std::vector<RuntimePoint>> BenchmarkRuntime(
    const std::vector<int>& sizes, const SyntheticSpec& shape, double epsilon,
    int runs) {
  if (sizes.empty() || runs < 1) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "need at least one size and one run");
  }
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1 || (i > 0 && sizes[i] <= sizes[i - 1])) {
      return MakeError(ErrorKind::kInvalidArgument,
                       "sizes must be positive and ascending");
    }
  }
  std::vector<RuntimePoint> points;
  for (int n : sizes) {
    SyntheticSpec spec = shape;
    spec.rows = n;
    spec.seed = DeriveSeed(shape.seed, {kBenchStream, static_cast<uint64_t>(n)});
    absl::StatusOr<Dataset> data = GenerateSynthetic(spec);
    if (!data.ok()) return data.status();
    std::vector<double> global_times;
    std::vector<double> smooth_times;
    for (int run = 0; run < runs; ++run) {
      for (FitMode mode : {FitMode::kGlobal, FitMode::kSmooth}) {
        FitConfig config;
        config.mode = mode;
        config.epsilon = epsilon;
        config.seed = DeriveSeed(spec.seed, {static_cast<uint64_t>(run)});
        const auto start = Clock::now();
        absl::StatusOr<NaiveBayesModel> model = FitDp(*data, config);
        const double seconds =
            std::chrono::duration<double>(Clock::now() - start).count();
        if (!model.ok()) return model.status();
        (mode == FitMode::kGlobal ? global_times : smooth_times)
            .push_back(seconds);
      }
    }
    points.push_back({n, Median(global_times), Median(smooth_times)});
  }
  return points;
}

std::string RuntimeToCsv(const std::vector<RuntimePoint>& points) {
  std::string out = FormatCsvRow({"n", "global_seconds", "smooth_seconds"});
  for (const RuntimePoint& p : points) {
    out += FormatCsvRow({absl::StrCat(p.rows), FormatDouble(p.global_seconds),
                         FormatDouble(p.smooth_seconds)});
  }
  return out;
}

absl::StatusOr<PairedTest> PairedTTest(const std::vector<double>& a,
                                       const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "paired test needs two equal-length samples of size >= 2");
  }
  const int n = static_cast<int>(a.size());
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = a[i] - b[i];
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
  double squares = 0.0;
  for (double x : d) squares += (x - mean) * (x - mean);
  const double sd = std::sqrt(squares / (n - 1));
  PairedTest test;
  test.pairs = n;
  test.mean_difference = mean;
  if (sd == 0.0) {
    test.t = mean > 0   ? std::numeric_limits<double>::infinity()
             : mean < 0 ? -std::numeric_limits<double>::infinity()
                        : 0.0;
    test.p_one_sided = mean > 0 ? 0.0 : (mean < 0 ? 1.0 : 0.5);
    return test;
  }
  test.t = mean / (sd / std::sqrt(static_cast<double>(n)));
  const boost::math::students_t dist(n - 1);
  test.p_one_sided = boost::math::cdf(boost::math::complement(dist, test.t));
  return test;
}

}  // namespace dpnb
