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

#include "dpnb/schema_io.h"

#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpnb/csv.h"
#include "dpnb/errors.h"
#include "dpnb/rng.h"
#include "nlohmann/json.hpp"

namespace dpnb {
namespace {

using nlohmann::json;

absl::StatusOr<std::vector<std::string>> StringList(const json& node,
                                                    std::string_view where) {
  if (!node.is_array()) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrCat(std::string(where), ": 'values' must be an array"));
  }
  std::vector<std::string> out;
  for (const json& item : node) {
    if (item.is_string()) {
      out.push_back(item.get<std::string>());
    } else if (item.is_number_integer()) {
      // Numeric class codes such as 1, 2, 3 are accepted as labels.
      out.push_back(item.dump());
    } else {
      return MakeError(ErrorKind::kParseError,
                       absl::StrCat(std::string(where),
                                    ": values must be strings"));
    }
  }
  return out;
}

absl::StatusOr<AttributeSpec> ParseAttribute(const json& node, size_t index) {
  const std::string where = absl::StrCat("attribute #", index);
  if (!node.is_object() || !node.contains("name") ||
      !node["name"].is_string() || !node.contains("kind") ||
      !node["kind"].is_string()) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrCat(where, ": needs string 'name' and 'kind'"));
  }
  std::string name = node["name"].get<std::string>();
  const std::string kind = node["kind"].get<std::string>();
  if (kind == "numeric") {
    if (!node.contains("lower") || !node["lower"].is_number() ||
        !node.contains("upper") || !node["upper"].is_number()) {
      return MakeError(ErrorKind::kParseError,
                       absl::StrCat(where, " '", name,
                                    "': numeric needs 'lower' and 'upper'"));
    }
    return AttributeSpec::Numeric(std::move(name), node["lower"].get<double>(),
                                  node["upper"].get<double>());
  }
  if (kind == "categorical") {
    if (!node.contains("values")) {
      return MakeError(ErrorKind::kParseError,
                       absl::StrCat(where, " '", name,
                                    "': categorical needs 'values'"));
    }
    absl::StatusOr<std::vector<std::string>> values =
        StringList(node["values"], where);
    if (!values.ok()) return values.status();
    return AttributeSpec::Categorical(std::move(name), *std::move(values));
  }
  return MakeError(ErrorKind::kParseError,
                   absl::StrCat(where, ": unknown kind '", kind, "'"));
}

json ToJson(const DatasetSchema& schema) {
  json attributes = json::array();
  for (const AttributeSpec& a : schema.attributes()) {
    json node = {{"name", a.name()}};
    if (a.is_numeric()) {
      node["kind"] = "numeric";
      node["lower"] = a.lower();
      node["upper"] = a.upper();
    } else {
      node["kind"] = "categorical";
      node["values"] = a.values();
    }
    attributes.push_back(std::move(node));
  }
  return {{"attributes", std::move(attributes)},
          {"class",
           {{"name", schema.class_spec().name},
            {"values", schema.class_spec().labels}}}};
}

}  // namespace

absl::StatusOr<DatasetSchema> ParseSchema(std::string_view text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    return MakeError(ErrorKind::kParseError, "schema is not valid JSON");
  }
  if (!doc.is_object() || !doc.contains("attributes") ||
      !doc["attributes"].is_array() || !doc.contains("class") ||
      !doc["class"].is_object()) {
    return MakeError(ErrorKind::kParseError,
                     "schema needs an 'attributes' array and a 'class' object");
  }
  std::vector<AttributeSpec> attributes;
  size_t index = 0;
  for (const json& node : doc["attributes"]) {
    absl::StatusOr<AttributeSpec> attribute = ParseAttribute(node, index++);
    if (!attribute.ok()) return attribute.status();
    attributes.push_back(*std::move(attribute));
  }
  const json& cls = doc["class"];
  if (!cls.contains("name") || !cls["name"].is_string() ||
      !cls.contains("values")) {
    return MakeError(ErrorKind::kParseError,
                     "class needs a string 'name' and 'values'");
  }
  absl::StatusOr<std::vector<std::string>> labels =
      StringList(cls["values"], "class");
  if (!labels.ok()) return labels.status();
  return DatasetSchema::Create(
      std::move(attributes),
      ClassSpec{cls["name"].get<std::string>(), *std::move(labels)});
}

std::string SchemaToJson(const DatasetSchema& schema) {
  return ToJson(schema).dump(2) + "\n";
}

absl::StatusOr<DatasetSchema> LoadSchema(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseSchema(*text);
}

uint64_t SchemaHash(const DatasetSchema& schema) {
  return HashString(ToJson(schema).dump());
}

bool operator==(const AttributeSpec& a, const AttributeSpec& b) {
  if (a.name() != b.name() || a.kind() != b.kind()) return false;
  if (a.is_numeric()) {
    return a.lower() == b.lower() && a.upper() == b.upper();
  }
  return a.values() == b.values();
}

bool operator==(const DatasetSchema& a, const DatasetSchema& b) {
  return a.attributes() == b.attributes() &&
         a.class_spec().name == b.class_spec().name &&
         a.class_spec().labels == b.class_spec().labels;
}

}  // namespace dpnb
