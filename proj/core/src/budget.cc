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

#include "dpnb/budget.h"

#include <cmath>
#include <utility>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "dpnb/errors.h"

namespace dpnb {

std::string CategoricalLabel(std::string_view attribute) {
  return absl::StrCat("categorical:", std::string(attribute));
}

std::string NumericMeanLabel(std::string_view attribute) {
  return absl::StrCat("numeric:", std::string(attribute), ":mean");
}

std::string NumericVarianceLabel(std::string_view attribute) {
  return absl::StrCat("numeric:", std::string(attribute), ":variance");
}

const BudgetEntry* PrivacyBudget::Find(std::string_view label) const {
  for (const BudgetEntry& entry : entries_) {
    if (entry.label == label) return &entry;
  }
  return nullptr;
}

Rational PrivacyBudget::TotalShare() const {
  Rational total(0);
  for (const BudgetEntry& entry : entries_) total += entry.share;
  return total;
}

double PrivacyBudget::SpentEpsilon() const {
  double total = 0.0;
  for (const BudgetEntry& entry : entries_) total += entry.epsilon;
  return total;
}

double PrivacyBudget::SpentDelta() const {
  double total = 0.0;
  for (const BudgetEntry& entry : entries_) total += entry.delta;
  return total;
}

double PrivacyBudget::ToEpsilon(Rational share) const {
  return epsilon_ * static_cast<double>(share.numerator()) /
         static_cast<double>(share.denominator());
}

absl::Status PrivacyBudget::SplitEntry(
    std::string_view label, const std::vector<std::string>& suffixes) {
  if (suffixes.empty()) {
    return MakeError(ErrorKind::kInvalidArgument, "no parts to split into");
  }
  for (auto it = entries_.begin(); it != entries_.end(); ++it) {
    if (it->label != label) continue;
    const Rational part =
        it->share / static_cast<int64_t>(suffixes.size());
    const double delta = it->delta;
    std::vector<BudgetEntry> parts;
    for (const std::string& suffix : suffixes) {
      parts.push_back({absl::StrCat(std::string(label), ":", suffix), part,
                       ToEpsilon(part), delta});
    }
    it = entries_.erase(it);
    entries_.insert(it, parts.begin(), parts.end());
    return absl::OkStatus();
  }
  return MakeError(ErrorKind::kInvalidArgument,
                   absl::StrCat("no ledger entry '", std::string(label), "'"));
}

absl::Status PrivacyBudget::SetDelta(std::string_view label, double delta) {
  for (BudgetEntry& entry : entries_) {
    if (entry.label == label) {
      entry.delta = delta;
      return absl::OkStatus();
    }
  }
  return MakeError(ErrorKind::kInvalidArgument,
                   absl::StrCat("no ledger entry '", std::string(label), "'"));
}

absl::StatusOr<PrivacyBudget> AllocateBudget(double epsilon,
                                             const DatasetSchema& schema,
                                             Rational numeric_weight,
                                             double delta) {
  if (!std::isfinite(epsilon) || !(epsilon > 0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  if (numeric_weight <= 0) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "numeric weight must be positive");
  }
  if (!(delta >= 0) || !(delta < 1)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("delta must lie in [0, 1), got ", delta));
  }
  PrivacyBudget budget;
  budget.epsilon_ = epsilon;
  budget.delta_ = delta;
  budget.numeric_weight_ = numeric_weight;
  const Rational units = numeric_weight * schema.numeric_count() +
                         schema.categorical_count() + 1;
  budget.unit_share_ = Rational(1) / units;
  const Rational half_numeric = numeric_weight * budget.unit_share_ / 2;
  for (const AttributeSpec& attribute : schema.attributes()) {
    if (attribute.is_categorical()) {
      budget.entries_.push_back({CategoricalLabel(attribute.name()),
                                 budget.unit_share_,
                                 budget.ToEpsilon(budget.unit_share_), 0.0});
    } else {
      const double half = budget.ToEpsilon(half_numeric);
      budget.entries_.push_back(
          {NumericMeanLabel(attribute.name()), half_numeric, half, 0.0});
      budget.entries_.push_back(
          {NumericVarianceLabel(attribute.name()), half_numeric, half, 0.0});
    }
  }
  budget.entries_.push_back({std::string(kClassPriorLabel), budget.unit_share_,
                             budget.ToEpsilon(budget.unit_share_), 0.0});
  return budget;
}

absl::StatusOr<Rational> ParseRatio(std::string_view text) {
  std::vector<std::string> parts = absl::StrSplit(absl::string_view(text.data(), text.size()), ':');
  int64_t numerator = 0;
  int64_t denominator = 1;
  const bool ok =
      (parts.size() == 1 || parts.size() == 2) &&
      absl::SimpleAtoi(parts[0], &numerator) &&
      (parts.size() == 1 || absl::SimpleAtoi(parts[1], &denominator));
  if (!ok || numerator <= 0 || denominator <= 0) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("bad ratio '", std::string(text),
                                  "', expected positive N:M"));
  }
  return Rational(numerator, denominator);
}

std::string RatioToString(Rational ratio) {
  return absl::StrCat(ratio.numerator(), ":", ratio.denominator());
}

}  // namespace dpnb
