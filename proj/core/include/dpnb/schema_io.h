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

#ifndef DPNB_SCHEMA_IO_H_
#define DPNB_SCHEMA_IO_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "dpnb/dataset.h"

namespace dpnb {

// Schema documents are JSON:
//
//   {
//     "attributes": [
//       {"name": "area", "kind": "numeric", "lower": 10.0, "upper": 22.0},
//       {"name": "colour", "kind": "categorical", "values": ["red", "blue"]}
//     ],
//     "class": {"name": "variety", "values": ["1", "2", "3"]}
//   }
//
// ParseError for malformed JSON or missing/mistyped fields, InvalidSchema
// when the content violates a schema invariant.
absl::StatusOr<DatasetSchema> ParseSchema(std::string_view text);

// Canonical form of the document above; ParseSchema(SchemaToJson(s)) == s.
std::string SchemaToJson(const DatasetSchema& schema);

absl::StatusOr<DatasetSchema> LoadSchema(const std::string& path);

// Hash of the canonical JSON, stored in model files to catch mismatches.
uint64_t SchemaHash(const DatasetSchema& schema);

bool operator==(const AttributeSpec& a, const AttributeSpec& b);
bool operator==(const DatasetSchema& a, const DatasetSchema& b);

}  // namespace dpnb

#endif  // DPNB_SCHEMA_IO_H_
