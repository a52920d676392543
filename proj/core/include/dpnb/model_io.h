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

#ifndef DPNB_MODEL_IO_H_
#define DPNB_MODEL_IO_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpnb/naive_bayes.h"
#include "dpnb/noise.h"
#include "dpnb/sensitivity.h"

namespace dpnb {

inline constexpr int kModelFormatVersion = 1;

// JSON document with "format": "dpnb-model", "version", the embedded schema
// and its hash, fit metadata, every parameter, the budget ledger and the
// noise provenance of each released parameter. Doubles are written in
// shortest round-trip form, so ParseModel(ModelToJson(m)) predicts exactly
// like m.
std::string ModelToJson(const NaiveBayesModel& model);

// ParseError for malformed documents, an unknown version or a schema hash
// that does not match the embedded schema; the result passes ValidateModel.
absl::StatusOr<NaiveBayesModel> ParseModel(std::string_view text);

absl::Status SaveModel(const NaiveBayesModel& model, const std::string& path);
absl::StatusOr<NaiveBayesModel> LoadModel(const std::string& path);

std::string SensitivityReportToJson(const SensitivityReport& report);
std::string NoiseSpecToJson(const NoiseSpec& spec);

}  // namespace dpnb

#endif  // DPNB_MODEL_IO_H_
