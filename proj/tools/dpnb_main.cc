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

// Command-line front end: train, predict, evaluate, sensitivity, synth and
// bench. Exit status 0 on success, 1 when the library reports an error, 2 on
// a usage error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpnb/budget.h"
#include "dpnb/csv.h"
#include "dpnb/dataset.h"
#include "dpnb/errors.h"
#include "dpnb/experiments.h"
#include "dpnb/model_io.h"
#include "dpnb/naive_bayes.h"
#include "dpnb/noise.h"
#include "dpnb/schema_io.h"
#include "dpnb/sensitivity.h"

namespace {

using dpnb::MakeError;
using dpnb::ErrorKind;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

int Report(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  std::cerr << "dpnb: " << status.message() << "\n";
  return kExitError;
}

absl::Status WriteOutput(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return absl::OkStatus();
  }
  return dpnb::WriteFileAtomic(path, data);
}

absl::StatusOr<dpnb::Dataset> LoadData(const std::string& data,
                                       const std::string& schema_path) {
  absl::StatusOr<dpnb::DatasetSchema> schema = dpnb::LoadSchema(schema_path);
  if (!schema.ok()) return schema.status();
  return dpnb::LoadCsvDataset(
      data, std::make_shared<const dpnb::DatasetSchema>(*std::move(schema)));
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string data;
  std::string schema;
  std::string mode = "smooth";
  double epsilon = 1.0;
  double delta = 0.0;
  std::string noise = "cauchy";
  std::string ratio = "2:1";
  std::optional<int> trim;
  std::string beta_mode = "strict";
  double gamma = 2.0;
  std::optional<uint64_t> seed;
  std::string out;
  bool explain = false;
};

// One line per noisy parameter: where its scale came from.
void PrintProvenance(const dpnb::NaiveBayesModel& model) {
  std::cout << absl::StrFormat("%-32s %-8s %-11s %12s %10s %10s %10s %12s\n",
                               "parameter", "noise", "calibration", "scale",
                               "epsilon", "delta", "beta", "sensitivity");
  for (const dpnb::NoiseRecord& record : model.provenance) {
    const dpnb::NoiseProvenance& p = record.spec.provenance;
    std::cout << absl::StrFormat(
        "%-32s %-8s %-11s %12.6g %10.4g %10.4g %10.4g %12.6g\n",
        record.parameter,
        std::string(dpnb::NoiseFamilyName(record.spec.family)),
        std::string(dpnb::CalibrationModeName(p.mode)), record.spec.scale,
        p.epsilon, p.delta, p.beta, p.sensitivity);
  }
}

absl::Status RunTrain(const TrainArgs& args) {
  dpnb::FitConfig config;
  config.mode = *dpnb::ParseFitMode(args.mode);
  config.epsilon = args.epsilon;
  config.mechanism.noise = *dpnb::ParseNoiseFamily(args.noise);
  config.mechanism.delta = args.delta;
  config.mechanism.gamma = args.gamma;
  config.mechanism.beta_mode = *dpnb::ParseBetaMode(args.beta_mode);
  config.trim = args.trim;
  absl::StatusOr<dpnb::Rational> ratio = dpnb::ParseRatio(args.ratio);
  if (!ratio.ok()) return ratio.status();
  config.numeric_weight = *ratio;
  if (args.seed.has_value()) {
    config.seed = *args.seed;
  } else {
    std::random_device entropy;
    config.seed = (static_cast<uint64_t>(entropy()) << 32) | entropy();
    std::cerr << "dpnb: seed " << config.seed << "\n";
  }
  absl::StatusOr<dpnb::Dataset> data = LoadData(args.data, args.schema);
  if (!data.ok()) return data.status();
  absl::StatusOr<dpnb::NaiveBayesModel> model = dpnb::Fit(*data, config);
  if (!model.ok()) return model.status();
  if (model->budget.has_value()) {
    std::cerr << absl::StrFormat(
        "dpnb: epsilon %g, per-access epsilon %g, %d ledger entries\n",
        model->budget->epsilon(), model->budget->per_access_epsilon(),
        model->budget->entries().size());
  }
  if (args.explain) PrintProvenance(*model);
  return dpnb::SaveModel(*model, args.out);
}

// ---------------------------------------------------------------------------

struct PredictArgs {
  std::string model;
  std::string data;
  bool scores = false;
  std::string out;
};

absl::Status RunPredict(const PredictArgs& args) {
  absl::StatusOr<dpnb::NaiveBayesModel> model = dpnb::LoadModel(args.model);
  if (!model.ok()) return model.status();
  absl::StatusOr<std::string> text = dpnb::ReadFile(args.data);
  if (!text.ok()) return text.status();
  absl::StatusOr<dpnb::CsvTable> table = dpnb::ParseCsv(*text);
  if (!table.ok()) return table.status();
  if (table->empty()) return MakeError(ErrorKind::kColumnMismatch, "no header");
  const dpnb::DatasetSchema& schema = *model->schema;
  const std::vector<std::string>& header = table->front();
  std::vector<int> source;
  for (const dpnb::AttributeSpec& attribute : schema.attributes()) {
    auto it = std::find(header.begin(), header.end(), attribute.name());
    if (it == header.end()) {
      return MakeError(ErrorKind::kColumnMismatch,
                       absl::StrCat("header lacks column '", attribute.name(),
                                    "'"));
    }
    source.push_back(static_cast<int>(it - header.begin()));
  }
  std::vector<std::string> out_header = {"row", "predicted"};
  if (args.scores) {
    for (const std::string& label : schema.class_spec().labels) {
      out_header.push_back(absl::StrCat("log_score:", label));
    }
  }
  std::string out = dpnb::FormatCsvRow(out_header);
  for (size_t r = 1; r < table->size(); ++r) {
    const std::vector<std::string>& raw = (*table)[r];
    if (raw.size() != header.size()) {
      return MakeError(ErrorKind::kColumnMismatch,
                       absl::StrCat("row ", r, " has ", raw.size(),
                                    " columns, header has ", header.size()));
    }
    std::vector<std::string> cells;
    for (int s : source) cells.push_back(raw[s]);
    absl::StatusOr<std::vector<double>> instance =
        dpnb::EncodeInstance(schema, cells, static_cast<int>(r));
    if (!instance.ok()) return instance.status();
    absl::StatusOr<dpnb::Prediction> p = dpnb::Predict(*model, *instance);
    if (!p.ok()) return p.status();
    std::vector<std::string> fields = {
        absl::StrCat(r), schema.class_spec().labels[p->label]};
    if (args.scores) {
      for (double score : p->log_scores) {
        fields.push_back(dpnb::FormatDouble(score));
      }
    }
    out += dpnb::FormatCsvRow(fields);
  }
  return WriteOutput(args.out, out);
}

// ---------------------------------------------------------------------------

struct EvaluateArgs {
  std::string spec;
  std::string csv;
  std::string json;
  int threads = 0;
};

absl::Status RunEvaluate(const EvaluateArgs& args) {
  absl::StatusOr<std::string> text = dpnb::ReadFile(args.spec);
  if (!text.ok()) return text.status();
  const std::string base =
      std::filesystem::path(args.spec).parent_path().string();
  absl::StatusOr<dpnb::ExperimentSpec> spec =
      dpnb::ParseExperimentSpec(*text, base);
  if (!spec.ok()) return spec.status();
  if (!args.csv.empty()) spec->csv_path = args.csv;
  if (!args.json.empty()) spec->json_path = args.json;
  if (args.threads > 0) spec->threads = args.threads;
  absl::StatusOr<dpnb::ExperimentResult> result = dpnb::RunExperiment(*spec);
  if (!result.ok()) return result.status();
  if (!spec->csv_path.empty()) {
    absl::Status s =
        dpnb::WriteFileAtomic(spec->csv_path, dpnb::ResultsToCsv(*result));
    if (!s.ok()) return s;
  }
  const std::string summary = dpnb::ResultsToJson(*result);
  if (spec->json_path.empty()) {
    std::cout << summary;
    return absl::OkStatus();
  }
  absl::Status s = dpnb::WriteFileAtomic(spec->json_path, summary);
  if (!s.ok()) return s;
  // With the JSON in a file, print a readable table instead.
  std::cout << absl::StrFormat("%-14s %-9s %-7s %8s %10s %6s %8s %8s\n",
                               "method", "noise", "beta", "epsilon", "delta",
                               "ratio", "mean", "std");
  for (const dpnb::CellResult& cell : result->cells) {
    std::cout << absl::StrFormat(
        "%-14s %-9s %-7s %8g %10.3g %6s %8.4f %8.4f\n", cell.method.method,
        dpnb::NoiseLabel(cell.method), dpnb::BetaLabel(cell.method),
        cell.epsilon,
        cell.delta, dpnb::RatioToString(cell.ratio), cell.mean_accuracy,
        cell.std_accuracy);
  }
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------

struct SensitivityArgs {
  std::string data;
  std::string schema;
  std::string attribute;
  std::string class_label;
  std::string statistic = "mean";
  double beta = 0.1;
  int trim = 1;
  bool json = false;
};

absl::Status RunSensitivity(const SensitivityArgs& args) {
  absl::StatusOr<dpnb::Dataset> data = LoadData(args.data, args.schema);
  if (!data.ok()) return data.status();
  const dpnb::DatasetSchema& schema = data->schema();
  const std::optional<int> a = schema.AttributeIndex(args.attribute);
  if (!a.has_value() || !schema.attribute(*a).is_numeric()) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("no numeric attribute '", args.attribute,
                                  "'"));
  }
  const std::optional<int> c = schema.ClassIndex(args.class_label);
  if (!c.has_value()) {
    return MakeError(ErrorKind::kUnknownCategory,
                     absl::StrCat("no class '", args.class_label, "'"));
  }
  const dpnb::AttributeSpec& attribute = schema.attribute(*a);
  absl::StatusOr<dpnb::BoundedSample> sample = dpnb::BoundedSample::Create(
      data->NumericColumn(*a, *c), attribute.lower(), attribute.upper());
  if (!sample.ok()) return sample.status();
  absl::StatusOr<dpnb::SensitivityReport> report;
  if (args.statistic == "mean") {
    report = dpnb::SmoothSensitivityMean(*sample, args.beta);
  } else if (args.statistic == "variance") {
    report = dpnb::SmoothSensitivityVariance(*sample, args.beta);
  } else {
    report = dpnb::SmoothSensitivityTrimmedMean(*sample, {args.trim},
                                                args.beta);
  }
  if (!report.ok()) return report.status();
  if (args.json) {
    std::cout << dpnb::SensitivityReportToJson(*report) << "\n";
    return absl::OkStatus();
  }
  std::cout << absl::StrFormat("statistic  %s\n",
                               std::string(dpnb::StatisticName(
                                   report->statistic)));
  std::cout << absl::StrFormat("n          %d\n", sample->size());
  std::cout << absl::StrFormat("bounds     [%g, %g]\n", attribute.lower(),
                               attribute.upper());
  std::cout << absl::StrFormat("beta       %.10g\n", report->beta);
  std::cout << absl::StrFormat("local      %.10g\n", report->local);
  std::cout << "k  A(k)  exp(-beta k) A(k)\n";
  for (size_t k = 0; k < report->at_distance.size(); ++k) {
    std::cout << absl::StrFormat(
        "%d  %.10g  %.10g\n", k, report->at_distance[k],
        std::exp(-report->beta * k) * report->at_distance[k]);
  }
  std::cout << absl::StrFormat("smooth     %.10g (k = %d)\n", report->smooth,
                               report->argmax_k);
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  dpnb::SyntheticSpec spec;
  std::string correlated = "numeric";
  std::string out;
  std::string schema_out;
};

absl::Status RunSynth(SynthArgs args) {
  args.spec.correlated = *dpnb::ParseCorrelated(args.correlated);
  absl::StatusOr<dpnb::Dataset> data = dpnb::GenerateSynthetic(args.spec);
  if (!data.ok()) return data.status();
  if (!args.schema_out.empty()) {
    absl::Status s = dpnb::WriteFileAtomic(
        args.schema_out, dpnb::SchemaToJson(data->schema()));
    if (!s.ok()) return s;
  }
  return WriteOutput(args.out, dpnb::DatasetToCsv(*data));
}

struct BenchArgs {
  std::vector<int> sizes = {5000, 20000, 80000};
  int runs = 3;
  int numeric = 1;
  int categorical = 1;
  double epsilon = 1.0;
  uint64_t seed = 0;
  std::string out;
};

absl::Status RunBench(const BenchArgs& args) {
  dpnb::SyntheticSpec shape;
  shape.numeric = args.numeric;
  shape.categorical = args.categorical;
  shape.seed = args.seed;
  absl::StatusOr<std::vector<dpnb::RuntimePoint>> points =
      dpnb::BenchmarkRuntime(args.sizes, shape, args.epsilon, args.runs);
  if (!points.ok()) return points.status();
  return WriteOutput(args.out, dpnb::RuntimeToCsv(*points));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private naive Bayes with smooth sensitivity"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  const std::vector<std::string> modes = {"plain", "smooth", "global",
                                          "bunsteinke"};
  const std::vector<std::string> noises = {"cauchy", "gaussian"};
  const std::vector<std::string> beta_modes = {"paper", "strict"};

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "Fit and save a model");
  train_cmd->add_option("--data", train.data, "CSV file")->required();
  train_cmd->add_option("--schema", train.schema, "Schema JSON")->required();
  train_cmd->add_option("--mode", train.mode)
      ->check(CLI::IsMember(modes))
      ->capture_default_str();
  train_cmd->add_option("--epsilon", train.epsilon, "Total privacy budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--delta", train.delta, "Per-access delta (gaussian)");
  train_cmd->add_option("--noise", train.noise)
      ->check(CLI::IsMember(noises))
      ->capture_default_str();
  train_cmd->add_option("--ratio", train.ratio,
                        "numeric:categorical budget weight")
      ->capture_default_str();
  train_cmd->add_option("--trim", train.trim, "Values trimmed per side")
      ->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--beta-mode", train.beta_mode)
      ->check(CLI::IsMember(beta_modes))
      ->capture_default_str();
  train_cmd->add_option("--gamma", train.gamma)->capture_default_str();
  train_cmd->add_option("--seed", train.seed,
                        "Noise seed (random and printed when omitted)");
  train_cmd->add_option("--out", train.out, "Model file")->required();
  train_cmd->add_flag("--explain", train.explain,
                      "Print the noise calibration of every parameter");

  PredictArgs predict;
  CLI::App* predict_cmd =
      app.add_subcommand("predict", "Label rows with a saved model");
  predict_cmd->add_option("--model", predict.model)->required();
  predict_cmd->add_option("--data", predict.data)->required();
  predict_cmd->add_flag("--scores", predict.scores, "Add per-class log scores");
  predict_cmd->add_option("--out", predict.out, "Output CSV (stdout if unset)");

  EvaluateArgs evaluate;
  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "Run a cross-validation experiment");
  evaluate_cmd->add_option("--spec", evaluate.spec, "Experiment JSON")
      ->required();
  evaluate_cmd->add_option("--csv", evaluate.csv, "Per-fold results CSV");
  evaluate_cmd->add_option("--json", evaluate.json, "Summary JSON");
  evaluate_cmd->add_option("--threads", evaluate.threads, "Worker threads")
      ->check(CLI::NonNegativeNumber);

  SensitivityArgs sens;
  CLI::App* sens_cmd = app.add_subcommand(
      "sensitivity", "Explain the sensitivity of one per-class statistic");
  sens_cmd->add_option("--data", sens.data)->required();
  sens_cmd->add_option("--schema", sens.schema)->required();
  sens_cmd->add_option("--attribute", sens.attribute)->required();
  sens_cmd->add_option("--class", sens.class_label)->required();
  sens_cmd->add_option("--statistic", sens.statistic)
      ->check(CLI::IsMember({"mean", "variance", "trimmed_mean"}))
      ->capture_default_str();
  sens_cmd->add_option("--beta", sens.beta)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sens_cmd->add_option("--trim", sens.trim, "Trim for trimmed_mean")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sens_cmd->add_flag("--json,--explain", sens.json,
                     "Print the report as JSON");

  SynthArgs synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Write synthetic data");
  synth_cmd->add_option("--rows", synth.spec.rows)->capture_default_str();
  synth_cmd->add_option("--categorical", synth.spec.categorical)
      ->capture_default_str();
  synth_cmd->add_option("--numeric", synth.spec.numeric)
      ->capture_default_str();
  synth_cmd->add_option("--correlated", synth.correlated)
      ->check(CLI::IsMember({"numeric", "categorical"}))
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.spec.seed)->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "CSV (stdout if unset)");
  synth_cmd->add_option("--schema-out", synth.schema_out, "Schema JSON");

  BenchArgs bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Time dp_global and dp_smooth training");
  bench_cmd->add_option("--sizes", bench.sizes)
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--runs", bench.runs)->capture_default_str();
  bench_cmd->add_option("--numeric", bench.numeric)->capture_default_str();
  bench_cmd->add_option("--categorical", bench.categorical)
      ->capture_default_str();
  bench_cmd->add_option("--epsilon", bench.epsilon)->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed)->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "CSV (stdout if unset)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  if (train_cmd->parsed()) return Report(RunTrain(train));
  if (predict_cmd->parsed()) return Report(RunPredict(predict));
  if (evaluate_cmd->parsed()) return Report(RunEvaluate(evaluate));
  if (sens_cmd->parsed()) return Report(RunSensitivity(sens));
  if (synth_cmd->parsed()) return Report(RunSynth(synth));
  if (bench_cmd->parsed()) return Report(RunBench(bench));
  return kExitUsage;
}
