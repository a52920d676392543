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

#include "dpnb/dataset.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "dpnb/errors.h"
#include "dpnb/rng.h"

namespace dpnb {

absl::StatusOr<AttributeSpec> AttributeSpec::Categorical(
    std::string name, std::vector<std::string> values) {
  if (name.empty()) {
    return MakeError(ErrorKind::kInvalidSchema, "attribute with empty name");
  }
  if (values.empty()) {
    return MakeError(ErrorKind::kInvalidSchema,
                     absl::StrCat("categorical attribute '", name,
                                  "' declares no values"));
  }
  std::set<std::string> seen;
  for (const std::string& value : values) {
    if (!seen.insert(value).second) {
      return MakeError(ErrorKind::kInvalidSchema,
                       absl::StrCat("categorical attribute '", name,
                                    "' repeats value '", value, "'"));
    }
  }
  AttributeSpec spec;
  spec.name_ = std::move(name);
  spec.kind_ = Kind::kCategorical;
  spec.values_ = std::move(values);
  return spec;
}

absl::StatusOr<AttributeSpec> AttributeSpec::Numeric(std::string name,
                                                     double lower,
                                                     double upper) {
  if (name.empty()) {
    return MakeError(ErrorKind::kInvalidSchema, "attribute with empty name");
  }
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
    return MakeError(ErrorKind::kInvalidSchema,
                     absl::StrCat("numeric attribute '", name,
                                  "' needs finite bounds with lower < upper"));
  }
  AttributeSpec spec;
  spec.name_ = std::move(name);
  spec.kind_ = Kind::kNumeric;
  spec.lower_ = lower;
  spec.upper_ = upper;
  return spec;
}

std::optional<int> AttributeSpec::CategoryIndex(std::string_view label) const {
  for (size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == label) return static_cast<int>(i);
  }
  return std::nullopt;
}

DatasetSchema::DatasetSchema(std::vector<AttributeSpec> attributes,
                             ClassSpec class_spec)
    : attributes_(std::move(attributes)), class_spec_(std::move(class_spec)) {
  numeric_count_ = static_cast<int>(
      std::count_if(attributes_.begin(), attributes_.end(),
                    [](const AttributeSpec& a) { return a.is_numeric(); }));
}

absl::StatusOr<DatasetSchema> DatasetSchema::Create(
    std::vector<AttributeSpec> attributes, ClassSpec class_spec) {
  if (attributes.empty()) {
    return MakeError(ErrorKind::kInvalidSchema, "schema has no attributes");
  }
  if (class_spec.name.empty()) {
    return MakeError(ErrorKind::kInvalidSchema, "class column has no name");
  }
  std::set<std::string> names;
  for (const AttributeSpec& attribute : attributes) {
    if (!names.insert(attribute.name()).second) {
      return MakeError(ErrorKind::kInvalidSchema,
                       absl::StrCat("duplicate attribute '", attribute.name(),
                                    "'"));
    }
  }
  if (names.count(class_spec.name) > 0) {
    return MakeError(ErrorKind::kInvalidSchema,
                     absl::StrCat("class column '", class_spec.name,
                                  "' is also an attribute"));
  }
  std::set<std::string> labels(class_spec.labels.begin(),
                               class_spec.labels.end());
  if (labels.size() != class_spec.labels.size()) {
    return MakeError(ErrorKind::kInvalidSchema, "class labels repeat");
  }
  if (labels.size() < 2) {
    return MakeError(ErrorKind::kInvalidSchema,
                     "class column needs at least two labels");
  }
  return DatasetSchema(std::move(attributes), std::move(class_spec));
}

std::optional<int> DatasetSchema::AttributeIndex(std::string_view name) const {
  for (size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name() == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> DatasetSchema::ClassIndex(std::string_view label) const {
  const auto& labels = class_spec_.labels;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::vector<std::string> DatasetSchema::ColumnNames() const {
  std::vector<std::string> names;
  names.reserve(attributes_.size() + 1);
  for (const AttributeSpec& attribute : attributes_) {
    names.push_back(attribute.name());
  }
  names.push_back(class_spec_.name);
  return names;
}

namespace {

// Row numbers in messages are 1-based data rows (the header is not counted).
absl::Status CheckEncodedCell(const AttributeSpec& attribute, int row,
                              double value) {
  if (attribute.is_numeric()) {
    if (std::isnan(value) || value < attribute.lower() ||
        value > attribute.upper()) {
      return MakeError(ErrorKind::kOutOfBounds,
                       absl::StrCat("attribute '", attribute.name(), "' row ",
                                    row, " value ", value, " outside [",
                                    attribute.lower(), ", ",
                                    attribute.upper(), "]"));
    }
    return absl::OkStatus();
  }
  const int count = static_cast<int>(attribute.values().size());
  if (!(value >= 0) || value >= count || value != std::floor(value)) {
    return MakeError(ErrorKind::kUnknownCategory,
                     absl::StrCat("attribute '", attribute.name(), "' row ",
                                  row, " category index ", value));
  }
  return absl::OkStatus();
}

bool IsMissing(std::string_view cell) {
  const auto first = cell.find_first_not_of(" \t");
  if (first == std::string_view::npos) return true;
  const auto last = cell.find_last_not_of(" \t");
  return cell.substr(first, last - first + 1) == "?";
}

absl::StatusOr<double> ParseNumber(const AttributeSpec& attribute, int row,
                                   const std::string& cell) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(begin, &end);
  while (end != nullptr && (*end == ' ' || *end == '\t')) ++end;
  if (end == begin || *end != '\0' || errno == ERANGE ||
      !std::isfinite(value)) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrCat("attribute '", attribute.name(), "' row ",
                                  row, " value '", cell,
                                  "' is not a finite number"));
  }
  return value;
}

absl::StatusOr<double> EncodeCell(const AttributeSpec& attribute, int row,
                                  const std::string& cell) {
  if (IsMissing(cell)) {
    return MakeError(ErrorKind::kMissingValue,
                     absl::StrCat("row ", row, " attribute '",
                                  attribute.name(), "'"));
  }
  if (attribute.is_numeric()) {
    absl::StatusOr<double> value = ParseNumber(attribute, row, cell);
    if (!value.ok()) return value.status();
    if (absl::Status s = CheckEncodedCell(attribute, row, *value); !s.ok()) {
      return s;
    }
    return *value;
  }
  const std::optional<int> index = attribute.CategoryIndex(cell);
  if (!index.has_value()) {
    return MakeError(ErrorKind::kUnknownCategory,
                     absl::StrCat("attribute '", attribute.name(), "' row ",
                                  row, " value '", cell, "'"));
  }
  return static_cast<double>(*index);
}

}  // namespace

absl::StatusOr<Dataset> Dataset::FromEncoded(
    std::shared_ptr<const DatasetSchema> schema, std::vector<double> cells,
    std::vector<int> labels) {
  if (schema == nullptr) {
    return MakeError(ErrorKind::kInvalidArgument, "null schema");
  }
  const size_t width = schema->attribute_count();
  if (cells.size() != labels.size() * width) {
    return MakeError(ErrorKind::kColumnMismatch,
                     absl::StrCat(cells.size(), " cells for ", labels.size(),
                                  " rows of width ", width));
  }
  for (size_t r = 0; r < labels.size(); ++r) {
    for (size_t a = 0; a < width; ++a) {
      absl::Status status = CheckEncodedCell(
          schema->attribute(a), static_cast<int>(r) + 1, cells[r * width + a]);
      if (!status.ok()) return status;
    }
    if (labels[r] < 0 || labels[r] >= schema->class_count()) {
      return MakeError(ErrorKind::kUnknownCategory,
                       absl::StrCat("class '", schema->class_spec().name,
                                    "' row ", r + 1, " label index ",
                                    labels[r]));
    }
  }
  return Dataset(std::move(schema), std::move(cells), std::move(labels));
}

std::vector<double> Dataset::NumericColumn(int attribute,
                                           int class_index) const {
  std::vector<double> column;
  for (int r = 0; r < size(); ++r) {
    if (labels_[r] == class_index) column.push_back(cell(r, attribute));
  }
  return column;
}

Dataset Dataset::Subset(std::span<const int> indices) const {
  std::vector<double> cells;
  std::vector<int> labels;
  cells.reserve(indices.size() * width());
  labels.reserve(indices.size());
  for (int index : indices) {
    const std::span<const double> source = row(index);
    cells.insert(cells.end(), source.begin(), source.end());
    labels.push_back(labels_[index]);
  }
  return Dataset(schema_, std::move(cells), std::move(labels));
}

absl::StatusOr<Dataset> Dataset::DropAttributes(
    std::span<const int> indices) const {
  std::vector<bool> drop(width(), false);
  for (int index : indices) {
    if (index < 0 || index >= width()) {
      return MakeError(ErrorKind::kInvalidArgument,
                       absl::StrCat("no attribute ", index));
    }
    drop[index] = true;
  }
  std::vector<AttributeSpec> kept;
  std::vector<int> kept_index;
  for (int a = 0; a < width(); ++a) {
    if (!drop[a]) {
      kept.push_back(schema_->attribute(a));
      kept_index.push_back(a);
    }
  }
  absl::StatusOr<DatasetSchema> schema =
      DatasetSchema::Create(std::move(kept), schema_->class_spec());
  if (!schema.ok()) return schema.status();
  std::vector<double> cells;
  cells.reserve(kept_index.size() * size());
  for (int r = 0; r < size(); ++r) {
    for (int a : kept_index) cells.push_back(cell(r, a));
  }
  return Dataset(std::make_shared<const DatasetSchema>(*std::move(schema)),
                 std::move(cells), labels_);
}

absl::StatusOr<std::vector<double>> EncodeInstance(
    const DatasetSchema& schema, const std::vector<std::string>& cells,
    int row_number) {
  if (static_cast<int>(cells.size()) != schema.attribute_count()) {
    return MakeError(ErrorKind::kColumnMismatch,
                     absl::StrCat("row ", row_number, " has ", cells.size(),
                                  " feature columns, schema declares ",
                                  schema.attribute_count()));
  }
  std::vector<double> encoded(cells.size());
  for (int a = 0; a < schema.attribute_count(); ++a) {
    absl::StatusOr<double> value =
        EncodeCell(schema.attribute(a), row_number, cells[a]);
    if (!value.ok()) return value.status();
    encoded[a] = *value;
  }
  return encoded;
}

absl::StatusOr<Dataset> ValidateDataset(
    const std::vector<std::vector<std::string>>& raw_rows,
    std::shared_ptr<const DatasetSchema> schema) {
  if (schema == nullptr) {
    return MakeError(ErrorKind::kInvalidArgument, "null schema");
  }
  const int width = schema->attribute_count();
  const AttributeSpec* const attributes = schema->attributes().data();
  std::vector<double> cells;
  std::vector<int> labels;
  cells.reserve(raw_rows.size() * width);
  labels.reserve(raw_rows.size());
  int row_number = 0;
  for (const std::vector<std::string>& raw : raw_rows) {
    ++row_number;
    if (static_cast<int>(raw.size()) != width + 1) {
      return MakeError(ErrorKind::kColumnMismatch,
                       absl::StrCat("row ", row_number, " has ", raw.size(),
                                    " columns, schema declares ", width + 1));
    }
    for (int a = 0; a < width; ++a) {
      absl::StatusOr<double> value =
          EncodeCell(attributes[a], row_number, raw[a]);
      if (!value.ok()) return value.status();
      cells.push_back(*value);
    }
    const std::string& label = raw[width];
    if (IsMissing(label)) {
      return MakeError(ErrorKind::kMissingValue,
                       absl::StrCat("row ", row_number, " class '",
                                    schema->class_spec().name, "'"));
    }
    const std::optional<int> index = schema->ClassIndex(label);
    if (!index.has_value()) {
      return MakeError(ErrorKind::kUnknownCategory,
                       absl::StrCat("class '", schema->class_spec().name,
                                    "' row ", row_number, " value '", label,
                                    "'"));
    }
    labels.push_back(*index);
  }
  return Dataset::FromEncoded(std::move(schema), std::move(cells),
                              std::move(labels));
}

absl::StatusOr<std::vector<Fold>> SplitFolds(const Dataset& dataset, int folds,
                                             uint64_t seed) {
  if (folds < 2) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("need at least 2 folds, got ", folds));
  }
  const int n = dataset.size();
  if (folds > n) {
    return MakeError(ErrorKind::kTooFewRows,
                     absl::StrCat(folds, " folds requested for ", n, " rows"));
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.UniformIndex(i + 1));
    std::swap(order[i], order[j]);
  }

  std::vector<Fold> result;
  result.reserve(folds);
  const int base = n / folds;
  const int extra = n % folds;
  int start = 0;
  for (int f = 0; f < folds; ++f) {
    const int length = base + (f < extra ? 1 : 0);
    std::vector<int> test(order.begin() + start,
                          order.begin() + start + length);
    std::vector<int> train;
    train.reserve(n - length);
    train.insert(train.end(), order.begin(), order.begin() + start);
    train.insert(train.end(), order.begin() + start + length, order.end());
    // Restore file order inside each part so downstream results do not
    // depend on the shuffle beyond the partition itself.
    std::sort(test.begin(), test.end());
    std::sort(train.begin(), train.end());
    result.push_back({dataset.Subset(train), dataset.Subset(test)});
    start += length;
  }
  return result;
}

}  // namespace dpnb
