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

#include "dpnb/model_io.h"

#include <memory>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpnb/csv.h"
#include "dpnb/errors.h"
#include "dpnb/schema_io.h"
#include "nlohmann/json.hpp"

namespace dpnb {
namespace {

using nlohmann::json;

json NoiseJson(const NoiseSpec& spec) {
  const NoiseProvenance& p = spec.provenance;
  return {{"family", NoiseFamilyName(spec.family)},
          {"location", spec.location},
          {"scale", spec.scale},
          {"provenance",
           {{"epsilon", p.epsilon},
            {"delta", p.delta},
            {"gamma", p.gamma},
            {"beta", p.beta},
            {"sensitivity", p.sensitivity},
            {"mode", CalibrationModeName(p.mode)}}}};
}

NoiseSpec NoiseFromJson(const json& node) {
  NoiseSpec spec;
  spec.family = ParseNoiseFamily(node.at("family").get<std::string>())
                    .value_or(NoiseFamily::kLaplace);
  spec.location = node.at("location").get<double>();
  spec.scale = node.at("scale").get<double>();
  const json& p = node.at("provenance");
  spec.provenance.epsilon = p.at("epsilon").get<double>();
  spec.provenance.delta = p.at("delta").get<double>();
  spec.provenance.gamma = p.at("gamma").get<double>();
  spec.provenance.beta = p.at("beta").get<double>();
  spec.provenance.sensitivity = p.at("sensitivity").get<double>();
  spec.provenance.mode =
      ParseCalibrationMode(p.at("mode").get<std::string>())
          .value_or(CalibrationMode::kGlobal);
  return spec;
}

std::string HashHex(uint64_t hash) { return absl::StrFormat("%016x", hash); }

}  // namespace

std::string NoiseSpecToJson(const NoiseSpec& spec) {
  return NoiseJson(spec).dump(2);
}

std::string SensitivityReportToJson(const SensitivityReport& report) {
  json doc = {{"statistic", StatisticName(report.statistic)},
              {"local", report.local},
              {"smooth", report.smooth},
              {"beta", report.beta},
              {"k_max", report.k_max},
              {"argmax_k", report.argmax_k},
              {"at_distance", report.at_distance}};
  return doc.dump(2);
}

std::string ModelToJson(const NaiveBayesModel& model) {
  const DatasetSchema& schema = *model.schema;
  const ModelMetadata& meta = model.metadata;
  json metadata = {
      {"mode", FitModeName(meta.mode)},
      {"noise", NoiseFamilyName(meta.mechanism.noise)},
      {"gamma", meta.mechanism.gamma},
      {"beta_mode", BetaModeName(meta.mechanism.beta_mode)},
      {"delta", meta.mechanism.delta},
      {"epsilon", meta.epsilon},
      {"numeric_weight", RatioToString(meta.numeric_weight)},
      {"sigma_floor_fraction", meta.sigma_floor_fraction},
      {"seed", meta.seed},
      {"truncated_likelihood", model.truncated_likelihood}};
  if (meta.trim.has_value()) metadata["trim"] = *meta.trim;

  json attributes = json::array();
  for (int a = 0; a < schema.attribute_count(); ++a) {
    json classes = json::array();
    if (schema.attribute(a).is_categorical()) {
      for (const CategoricalParams& p : model.categorical[a]) {
        classes.push_back(
            {{"counts", p.counts}, {"probabilities", p.probabilities}});
      }
    } else {
      for (const GaussianParams& p : model.numeric[a]) {
        classes.push_back({{"mean", p.mean},
                           {"sigma", p.sigma},
                           {"lower", p.lower},
                           {"upper", p.upper}});
      }
    }
    attributes.push_back(
        {{"name", schema.attribute(a).name()}, {"classes", classes}});
  }

  json doc = {{"format", "dpnb-model"},
              {"version", kModelFormatVersion},
              {"schema_hash", HashHex(SchemaHash(schema))},
              {"schema", json::parse(SchemaToJson(schema))},
              {"metadata", metadata},
              {"class_counts", model.class_counts},
              {"priors", model.priors},
              {"attributes", attributes}};

  if (model.budget.has_value()) {
    const PrivacyBudget& b = *model.budget;
    json entries = json::array();
    for (const BudgetEntry& e : b.entries()) {
      entries.push_back({{"label", e.label},
                         {"share", RatioToString(e.share)},
                         {"epsilon", e.epsilon},
                         {"delta", e.delta}});
    }
    doc["budget"] = {{"epsilon", b.epsilon()},
                     {"per_access_epsilon", b.per_access_epsilon()},
                     {"unit_share", RatioToString(b.unit_share())},
                     {"entries", entries}};
  }
  json provenance = json::array();
  for (const NoiseRecord& r : model.provenance) {
    provenance.push_back(
        {{"parameter", r.parameter}, {"trim", r.trim}, {"noise", NoiseJson(r.spec)}});
  }
  doc["provenance"] = provenance;
  return doc.dump(2) + "\n";
}

absl::StatusOr<NaiveBayesModel> ParseModel(std::string_view text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    return MakeError(ErrorKind::kParseError, "model is not valid JSON");
  }
  if (doc.value("format", "") != "dpnb-model") {
    return MakeError(ErrorKind::kParseError, "not a dpnb model file");
  }
  if (doc.value("version", 0) != kModelFormatVersion) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrCat("unsupported model version ",
                                  doc.value("version", 0)));
  }
  if (!doc.contains("schema")) {
    return MakeError(ErrorKind::kParseError, "model lacks a schema");
  }
  absl::StatusOr<DatasetSchema> schema = ParseSchema(doc["schema"].dump());
  if (!schema.ok()) return schema.status();
  if (doc.value("schema_hash", "") != HashHex(SchemaHash(*schema))) {
    return MakeError(ErrorKind::kParseError, "schema hash mismatch");
  }

  NaiveBayesModel model;
  model.schema = std::make_shared<const DatasetSchema>(*std::move(schema));
  try {
    const json& meta = doc.at("metadata");
    ModelMetadata& m = model.metadata;
    const std::optional<FitMode> mode =
        ParseFitMode(meta.at("mode").get<std::string>());
    const std::optional<NoiseFamily> noise =
        ParseNoiseFamily(meta.at("noise").get<std::string>());
    const std::optional<BetaMode> beta_mode =
        ParseBetaMode(meta.at("beta_mode").get<std::string>());
    absl::StatusOr<Rational> weight =
        ParseRatio(meta.at("numeric_weight").get<std::string>());
    if (!mode || !noise || !beta_mode || !weight.ok()) {
      return MakeError(ErrorKind::kParseError, "bad model metadata");
    }
    m.mode = *mode;
    m.mechanism.noise = *noise;
    m.mechanism.beta_mode = *beta_mode;
    m.mechanism.gamma = meta.at("gamma").get<double>();
    m.mechanism.delta = meta.at("delta").get<double>();
    m.epsilon = meta.at("epsilon").get<double>();
    m.numeric_weight = *weight;
    m.sigma_floor_fraction = meta.at("sigma_floor_fraction").get<double>();
    m.seed = meta.at("seed").get<uint64_t>();
    if (meta.contains("trim")) m.trim = meta["trim"].get<int>();
    model.truncated_likelihood = meta.at("truncated_likelihood").get<bool>();

    model.class_counts = doc.at("class_counts").get<std::vector<double>>();
    model.priors = doc.at("priors").get<std::vector<double>>();
    const json& attributes = doc.at("attributes");
    const DatasetSchema& s = *model.schema;
    if (static_cast<int>(attributes.size()) != s.attribute_count()) {
      return MakeError(ErrorKind::kParseError,
                       "attribute table differs from schema");
    }
    model.categorical.resize(s.attribute_count());
    model.numeric.resize(s.attribute_count());
    for (int a = 0; a < s.attribute_count(); ++a) {
      const json& node = attributes[a];
      if (node.at("name").get<std::string>() != s.attribute(a).name()) {
        return MakeError(ErrorKind::kParseError,
                         absl::StrCat("attribute ", a, " name mismatch"));
      }
      for (const json& cls : node.at("classes")) {
        if (s.attribute(a).is_categorical()) {
          model.categorical[a].push_back(
              {cls.at("counts").get<std::vector<double>>(),
               cls.at("probabilities").get<std::vector<double>>()});
        } else {
          model.numeric[a].push_back(
              {cls.at("mean").get<double>(), cls.at("sigma").get<double>(),
               cls.at("lower").get<double>(), cls.at("upper").get<double>()});
        }
      }
    }
    if (doc.contains("budget")) {
      const json& b = doc["budget"];
      absl::StatusOr<PrivacyBudget> budget =
          AllocateBudget(b.at("epsilon").get<double>(), s, m.numeric_weight,
                         m.mechanism.noise == NoiseFamily::kGaussian &&
                                 m.mode != FitMode::kGlobal
                             ? m.mechanism.delta
                             : 0.0);
      if (!budget.ok()) return budget.status();
      // Rebuild the ledger layout by replaying the fit's adjustments, then
      // check it against the stored entries.
      for (const AttributeSpec& attribute : s.attributes()) {
        if (!attribute.is_numeric()) continue;
        const std::string mean_label = NumericMeanLabel(attribute.name());
        const std::string variance_label =
            NumericVarianceLabel(attribute.name());
        if (budget->delta() > 0) {
          budget->SetDelta(mean_label, budget->delta()).IgnoreError();
          budget->SetDelta(variance_label, budget->delta()).IgnoreError();
        }
        if (m.mode == FitMode::kBunSteinke) {
          budget->SplitEntry(variance_label, {"second_moment", "first_moment"})
              .IgnoreError();
        }
      }
      const json& entries = b.at("entries");
      bool same = entries.size() == budget->entries().size();
      for (size_t i = 0; same && i < entries.size(); ++i) {
        const BudgetEntry& e = budget->entries()[i];
        same = entries[i].at("label").get<std::string>() == e.label &&
               entries[i].at("share").get<std::string>() ==
                   RatioToString(e.share);
      }
      if (!same) {
        return MakeError(ErrorKind::kParseError,
                         "budget ledger does not match the fit metadata");
      }
      model.budget = *std::move(budget);
    }
    for (const json& r : doc.at("provenance")) {
      model.provenance.push_back({r.at("parameter").get<std::string>(),
                                  NoiseFromJson(r.at("noise")),
                                  r.at("trim").get<int>()});
    }
  } catch (const json::exception& e) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrCat("malformed model: ", e.what()));
  }
  if (absl::Status s = ValidateModel(model); !s.ok()) {
    return MakeError(ErrorKind::kParseError, s.message());
  }
  return model;
}

absl::Status SaveModel(const NaiveBayesModel& model, const std::string& path) {
  return WriteFileAtomic(path, ModelToJson(model));
}

absl::StatusOr<NaiveBayesModel> LoadModel(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseModel(*text);
}

}  // namespace dpnb
