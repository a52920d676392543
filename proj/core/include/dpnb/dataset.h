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

#ifndef DPNB_DATASET_H_
#define DPNB_DATASET_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace dpnb {

// One feature column: categorical with an ordered list of distinct labels,
// or numeric with hard bounds [lower, upper].
class AttributeSpec {
 public:
  enum class Kind { kCategorical, kNumeric };

  static absl::StatusOr<AttributeSpec> Categorical(
      std::string name, std::vector<std::string> values);
  static absl::StatusOr<AttributeSpec> Numeric(std::string name, double lower,
                                               double upper);

  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  bool is_numeric() const { return kind_ == Kind::kNumeric; }
  bool is_categorical() const { return kind_ == Kind::kCategorical; }

  // Categorical only.
  const std::vector<std::string>& values() const { return values_; }
  std::optional<int> CategoryIndex(std::string_view label) const;

  // Numeric only.
  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  AttributeSpec() = default;

  std::string name_;
  Kind kind_ = Kind::kCategorical;
  std::vector<std::string> values_;
  double lower_ = 0.0;
  double upper_ = 0.0;
};

struct ClassSpec {
  std::string name;
  std::vector<std::string> labels;
};

class DatasetSchema {
 public:
  // InvalidSchema when attribute names repeat, the class column shares a
  // name with an attribute, there are fewer than two distinct labels, or
  // there are no attributes.
  static absl::StatusOr<DatasetSchema> Create(
      std::vector<AttributeSpec> attributes, ClassSpec class_spec);

  const std::vector<AttributeSpec>& attributes() const { return attributes_; }
  const AttributeSpec& attribute(int index) const {
    return attributes_[index];
  }
  int attribute_count() const { return static_cast<int>(attributes_.size()); }
  const ClassSpec& class_spec() const { return class_spec_; }
  int class_count() const {
    return static_cast<int>(class_spec_.labels.size());
  }
  int numeric_count() const { return numeric_count_; }
  int categorical_count() const { return attribute_count() - numeric_count_; }

  std::optional<int> AttributeIndex(std::string_view name) const;
  std::optional<int> ClassIndex(std::string_view label) const;

  // Schema followed by the class column, in file order.
  std::vector<std::string> ColumnNames() const;

 private:
  DatasetSchema(std::vector<AttributeSpec> attributes, ClassSpec class_spec);

  std::vector<AttributeSpec> attributes_;
  ClassSpec class_spec_;
  int numeric_count_ = 0;
};

// Validated rows. Numeric cells hold the value; categorical cells hold the
// index of the label in the attribute's value list. Immutable.
class Dataset {
 public:
  // Builds from already-encoded cells (row-major, attribute_count per row).
  // Applies the same cell checks as ValidateDataset.
  static absl::StatusOr<Dataset> FromEncoded(
      std::shared_ptr<const DatasetSchema> schema, std::vector<double> cells,
      std::vector<int> labels);

  const DatasetSchema& schema() const { return *schema_; }
  const std::shared_ptr<const DatasetSchema>& shared_schema() const {
    return schema_;
  }
  int size() const { return static_cast<int>(labels_.size()); }

  std::span<const double> row(int index) const {
    return {cells_.data() + static_cast<size_t>(index) * width(),
            static_cast<size_t>(width())};
  }
  double cell(int row_index, int attribute) const {
    return cells_[static_cast<size_t>(row_index) * width() + attribute];
  }
  int category(int row_index, int attribute) const {
    return static_cast<int>(cell(row_index, attribute));
  }
  int label(int row_index) const { return labels_[row_index]; }
  const std::vector<int>& labels() const { return labels_; }

  // Values of one numeric attribute restricted to rows of one class.
  std::vector<double> NumericColumn(int attribute, int class_index) const;

  // Rows at the given positions, in that order.
  Dataset Subset(std::span<const int> indices) const;

  // Drops the given attributes (by index); the class column is kept.
  absl::StatusOr<Dataset> DropAttributes(std::span<const int> indices) const;

 private:
  Dataset(std::shared_ptr<const DatasetSchema> schema,
          std::vector<double> cells, std::vector<int> labels)
      : schema_(std::move(schema)),
        cells_(std::move(cells)),
        labels_(std::move(labels)) {}

  int width() const { return schema_->attribute_count(); }

  std::shared_ptr<const DatasetSchema> schema_;
  std::vector<double> cells_;
  std::vector<int> labels_;
};

// Raw text rows, columns in DatasetSchema::ColumnNames() order. Fails on the
// first offending cell: ColumnMismatch for a wrong column count,
// MissingValue for an empty or "?" cell, ParseError for a non-numeric or
// non-finite numeric cell, OutOfBounds for a numeric cell outside its
// bounds, UnknownCategory for an undeclared label.
absl::StatusOr<Dataset> ValidateDataset(
    const std::vector<std::vector<std::string>>& raw_rows,
    std::shared_ptr<const DatasetSchema> schema);

// Encodes one feature vector (attributes only, schema order) for prediction.
absl::StatusOr<std::vector<double>> EncodeInstance(
    const DatasetSchema& schema, const std::vector<std::string>& cells,
    int row_number = 0);

struct Fold {
  Dataset train;
  Dataset test;
};

// Shuffles row positions with `seed` and deals them into `folds` test sets
// whose sizes differ by at most one (the first n % folds folds get the extra
// row). Each train set is the complement of its test set. TooFewRows when
// folds > n; InvalidArgument when folds < 2.
absl::StatusOr<std::vector<Fold>> SplitFolds(const Dataset& dataset, int folds,
                                             uint64_t seed);

}  // namespace dpnb

#endif  // DPNB_DATASET_H_
