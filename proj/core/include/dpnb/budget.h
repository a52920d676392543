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

#ifndef DPNB_BUDGET_H_
#define DPNB_BUDGET_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "boost/rational.hpp"
#include "dpnb/dataset.h"

namespace dpnb {

using Rational = boost::rational<int64_t>;

// One data access. `share` is the exact fraction of the total epsilon spent
// by the access; `epsilon` is that fraction applied to the total.
struct BudgetEntry {
  std::string label;
  Rational share;
  double epsilon = 0.0;
  // Per-access delta (nonzero only for Gaussian accesses).
  double delta = 0.0;
};

// Sequential-composition ledger for one training run.
//
// With w the numeric weight, the per-access unit is
//   eps' = eps / (w * numeric_count + categorical_count + 1)
// and the ledger holds, in schema order,
//   "categorical:<name>"       eps'
//   "numeric:<name>:mean"      w * eps' / 2
//   "numeric:<name>:variance"  w * eps' / 2
// followed by "class_prior" with eps'. The shares sum to exactly 1.
class PrivacyBudget {
 public:
  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  Rational numeric_weight() const { return numeric_weight_; }
  // eps' as an exact fraction of epsilon, and as a value.
  Rational unit_share() const { return unit_share_; }
  double per_access_epsilon() const { return ToEpsilon(unit_share_); }

  const std::vector<BudgetEntry>& entries() const { return entries_; }
  const BudgetEntry* Find(std::string_view label) const;

  // Exact sum of all shares; 1 for every ledger built by AllocateBudget.
  Rational TotalShare() const;
  // Sum of entry epsilons in floating point.
  double SpentEpsilon() const;
  // Sum of per-access deltas (basic composition).
  double SpentDelta() const;

  // Replaces the entry `label` by one entry per suffix, each with an equal
  // part of its share, labelled "<label>:<suffix>". InvalidArgument when
  // `label` is absent or `suffixes` is empty.
  absl::Status SplitEntry(std::string_view label,
                          const std::vector<std::string>& suffixes);

  // Sets the per-access delta of one entry.
  absl::Status SetDelta(std::string_view label, double delta);

  double ToEpsilon(Rational share) const;

 private:
  friend absl::StatusOr<PrivacyBudget> AllocateBudget(double,
                                                      const DatasetSchema&,
                                                      Rational, double);

  double epsilon_ = 0.0;
  double delta_ = 0.0;
  Rational numeric_weight_{2};
  Rational unit_share_{0};
  std::vector<BudgetEntry> entries_;
};

std::string CategoricalLabel(std::string_view attribute);
std::string NumericMeanLabel(std::string_view attribute);
std::string NumericVarianceLabel(std::string_view attribute);
inline constexpr std::string_view kClassPriorLabel = "class_prior";

// InvalidArgument unless epsilon is finite and positive, numeric_weight is
// positive and 0 <= delta < 1.
absl::StatusOr<PrivacyBudget> AllocateBudget(double epsilon,
                                             const DatasetSchema& schema,
                                             Rational numeric_weight = 2,
                                             double delta = 0.0);

// Parses a numeric:categorical ratio such as "2:1", "1:4" or a bare "3".
absl::StatusOr<Rational> ParseRatio(std::string_view text);

std::string RatioToString(Rational ratio);

}  // namespace dpnb

#endif  // DPNB_BUDGET_H_
