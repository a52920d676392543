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

#include "dpnb/csv.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "absl/strings/str_cat.h"
#include "dpnb/errors.h"

namespace dpnb {

absl::StatusOr<CsvTable> ParseCsv(std::string_view text) {
  CsvTable table;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool record_open = false;
  int line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    table.push_back(std::move(record));
    record.clear();
    record_open = false;
  };

  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          return MakeError(ErrorKind::kParseError,
                           absl::StrCat("stray quote on line ", line));
        }
        in_quotes = true;
        field_was_quoted = true;
        record_open = true;
        break;
      case ',':
        end_field();
        record_open = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        end_record();
        ++line;
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        if (field_was_quoted) {
          return MakeError(ErrorKind::kParseError,
                           absl::StrCat("text after closing quote on line ",
                                        line));
        }
        field.push_back(c);
        record_open = true;
    }
  }
  if (in_quotes) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrCat("unterminated quote starting before line ",
                                  line));
  }
  if (record_open || !field.empty()) end_record();
  return table;
}

std::string FormatCsvRow(const std::vector<std::string>& fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out += f;
      continue;
    }
    out.push_back('"');
    for (char c : f) {
      if (c == '"') out.push_back('"');
      out.push_back(c);
    }
    out.push_back('"');
  }
  out.push_back('\n');
  return out;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot open '", path, "'"));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFileAtomic(const std::string& path, std::string_view data) {
  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      return MakeError(ErrorKind::kIoError,
                       absl::StrCat("cannot write '", temp, "'"));
    }
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) {
      return MakeError(ErrorKind::kIoError,
                       absl::StrCat("short write to '", temp, "'"));
    }
  }
  if (std::rename(temp.c_str(), path.c_str()) != 0) {
    std::remove(temp.c_str());
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot rename onto '", path, "'"));
  }
  return absl::OkStatus();
}

absl::StatusOr<Dataset> DatasetFromCsv(
    const CsvTable& table, std::shared_ptr<const DatasetSchema> schema) {
  if (table.empty()) {
    return MakeError(ErrorKind::kColumnMismatch, "missing header row");
  }
  const std::vector<std::string> names = schema->ColumnNames();
  const std::vector<std::string>& header = table.front();
  if (header.size() != names.size()) {
    return MakeError(ErrorKind::kColumnMismatch,
                     absl::StrCat("header has ", header.size(),
                                  " columns, schema declares ", names.size()));
  }
  std::unordered_map<std::string, size_t> position;
  for (size_t i = 0; i < header.size(); ++i) {
    if (!position.emplace(header[i], i).second) {
      return MakeError(ErrorKind::kColumnMismatch,
                       absl::StrCat("header repeats '", header[i], "'"));
    }
  }
  std::vector<size_t> source(names.size());
  for (size_t i = 0; i < names.size(); ++i) {
    auto it = position.find(names[i]);
    if (it == position.end()) {
      return MakeError(ErrorKind::kColumnMismatch,
                       absl::StrCat("header lacks column '", names[i], "'"));
    }
    source[i] = it->second;
  }
  CsvTable rows;
  rows.reserve(table.size() - 1);
  for (size_t r = 1; r < table.size(); ++r) {
    const std::vector<std::string>& raw = table[r];
    if (raw.size() != header.size()) {
      return MakeError(ErrorKind::kColumnMismatch,
                       absl::StrCat("row ", r, " has ", raw.size(),
                                    " columns, header has ", header.size()));
    }
    std::vector<std::string> ordered(names.size());
    for (size_t i = 0; i < names.size(); ++i) ordered[i] = raw[source[i]];
    rows.push_back(std::move(ordered));
  }
  return ValidateDataset(rows, std::move(schema));
}

absl::StatusOr<Dataset> LoadCsvDataset(
    const std::string& path, std::shared_ptr<const DatasetSchema> schema) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<CsvTable> table = ParseCsv(*text);
  if (!table.ok()) return table.status();
  return DatasetFromCsv(*table, std::move(schema));
}

std::string FormatDouble(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string DatasetToCsv(const Dataset& dataset) {
  const DatasetSchema& schema = dataset.schema();
  std::string out = FormatCsvRow(schema.ColumnNames());
  std::vector<std::string> fields(schema.attribute_count() + 1);
  for (int r = 0; r < dataset.size(); ++r) {
    for (int a = 0; a < schema.attribute_count(); ++a) {
      const AttributeSpec& attribute = schema.attribute(a);
      fields[a] = attribute.is_numeric()
                      ? FormatDouble(dataset.cell(r, a))
                      : attribute.values()[dataset.category(r, a)];
    }
    fields.back() = schema.class_spec().labels[dataset.label(r)];
    out += FormatCsvRow(fields);
  }
  return out;
}

}  // namespace dpnb
