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

#ifndef DPNB_CSV_H_
#define DPNB_CSV_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpnb/dataset.h"

namespace dpnb {

using CsvTable = std::vector<std::vector<std::string>>;

// RFC 4180 reader: comma separated, double-quoted fields may contain commas,
// line breaks and doubled quotes. Accepts LF or CRLF line ends and ignores a
// trailing empty line. ParseError on an unterminated quote or a stray quote
// inside an unquoted field.
absl::StatusOr<CsvTable> ParseCsv(std::string_view text);

// One record, quoting only the fields that need it, terminated by "\n".
std::string FormatCsvRow(const std::vector<std::string>& fields);

absl::StatusOr<std::string> ReadFile(const std::string& path);

// Writes to a sibling temporary file and renames it over `path`.
absl::Status WriteFileAtomic(const std::string& path, std::string_view data);

// Header row first; its column set must equal the schema's column names
// (any order), otherwise ColumnMismatch. Rows go through ValidateDataset.
absl::StatusOr<Dataset> DatasetFromCsv(
    const CsvTable& table, std::shared_ptr<const DatasetSchema> schema);

absl::StatusOr<Dataset> LoadCsvDataset(
    const std::string& path, std::shared_ptr<const DatasetSchema> schema);

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double value);

// Header plus rows, numeric cells printed with round-trip precision.
std::string DatasetToCsv(const Dataset& dataset);

}  // namespace dpnb

#endif  // DPNB_CSV_H_
