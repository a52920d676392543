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
#include <memory>
#include <utility>

#include "absl/strings/str_cat.h"
#include "boost/math/distributions/normal.hpp"
#include "dpnb/errors.h"
#include "dpnb/experiments.h"
#include "dpnb/rng.h"

namespace dpnb {
namespace {

constexpr double kLower = 0.0;
constexpr double kUpper = 10.0;
constexpr double kSpread = 1.5;
constexpr int kCategories = 4;
constexpr double kSkew = 0.7;

double Gaussian(Rng& rng, double mean, double sd) {
  static const boost::math::normal standard;
  return mean + sd * boost::math::quantile(standard, rng.UniformOpen());
}

int Categorical(Rng& rng, const double (&weights)[kCategories]) {
  double u = rng.UniformOpen();
  for (int v = 0; v < kCategories - 1; ++v) {
    if (u < weights[v]) return v;
    u -= weights[v];
  }
  return kCategories - 1;
}

}  // namespace

std::string_view CorrelatedName(Correlated kind) {
  return kind == Correlated::kNumeric ? "numeric" : "categorical";
}

std::optional<Correlated> ParseCorrelated(std::string_view name) {
  if (name == "numeric") return Correlated::kNumeric;
  if (name == "categorical") return Correlated::kCategorical;
  return std::nullopt;
}

absl::StatusOr<Dataset> GenerateSynthetic(const SyntheticSpec& spec) {
  if (spec.rows < 1) {
    return MakeError(ErrorKind::kTooFewRows,
                     absl::StrCat("synthetic data needs rows >= 1, got ",
                                  spec.rows));
  }
  if (spec.categorical < 0 || spec.numeric < 0 ||
      spec.categorical + spec.numeric == 0) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "synthetic data needs a nonnegative number of "
                     "attributes, at least one in total");
  }
  std::vector<AttributeSpec> attributes;
  std::vector<std::string> values;
  for (int v = 0; v < kCategories; ++v) values.push_back(absl::StrCat("v", v));
  for (int i = 0; i < spec.categorical; ++i) {
    absl::StatusOr<AttributeSpec> a =
        AttributeSpec::Categorical(absl::StrCat("cat", i), values);
    if (!a.ok()) return a.status();
    attributes.push_back(*std::move(a));
  }
  for (int i = 0; i < spec.numeric; ++i) {
    absl::StatusOr<AttributeSpec> a =
        AttributeSpec::Numeric(absl::StrCat("num", i), kLower, kUpper);
    if (!a.ok()) return a.status();
    attributes.push_back(*std::move(a));
  }
  absl::StatusOr<DatasetSchema> schema =
      DatasetSchema::Create(std::move(attributes), ClassSpec{"label", {"0", "1"}});
  if (!schema.ok()) return schema.status();

  const bool numeric_signal = spec.correlated == Correlated::kNumeric;
  const double rest = (1 - kSkew) / (kCategories - 1);
  const double uniform[kCategories] = {0.25, 0.25, 0.25, 0.25};
  const double skew_first[kCategories] = {kSkew, rest, rest, rest};
  const double skew_last[kCategories] = {rest, rest, rest, kSkew};

  Rng rng(spec.seed);
  const int width = spec.categorical + spec.numeric;
  std::vector<double> cells;
  std::vector<int> labels;
  cells.reserve(static_cast<size_t>(spec.rows) * width);
  labels.reserve(spec.rows);
  for (int r = 0; r < spec.rows; ++r) {
    const int label = rng.UniformOpen() < 0.5 ? 0 : 1;
    labels.push_back(label);
    for (int i = 0; i < spec.categorical; ++i) {
      const auto& weights = numeric_signal ? uniform
                            : label == 0   ? skew_first
                                           : skew_last;
      cells.push_back(Categorical(rng, weights));
    }
    for (int i = 0; i < spec.numeric; ++i) {
      const double mean = numeric_signal ? (label == 0 ? 3.5 : 6.5) : 5.0;
      cells.push_back(std::clamp(Gaussian(rng, mean, kSpread), kLower, kUpper));
    }
  }
  return Dataset::FromEncoded(
      std::make_shared<const DatasetSchema>(*std::move(schema)),
      std::move(cells), std::move(labels));
}

}  // namespace dpnb
