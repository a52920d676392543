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

#include "dpnb/errors.h"

#include <string>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"

namespace dpnb {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kOutOfBounds:
      return "OutOfBounds";
    case ErrorKind::kUnknownCategory:
      return "UnknownCategory";
    case ErrorKind::kMissingValue:
      return "MissingValue";
    case ErrorKind::kColumnMismatch:
      return "ColumnMismatch";
    case ErrorKind::kTooFewRows:
      return "TooFewRows";
    case ErrorKind::kTrimTooLarge:
      return "TrimTooLarge";
    case ErrorKind::kBadK:
      return "BadK";
    case ErrorKind::kSampleTooSmall:
      return "SampleTooSmall";
    case ErrorKind::kGammaOutOfRange:
      return "GammaOutOfRange";
    case ErrorKind::kDeltaOutOfRange:
      return "DeltaOutOfRange";
    case ErrorKind::kDegenerateClass:
      return "DegenerateClass";
    case ErrorKind::kInvalidSchema:
      return "InvalidSchema";
    case ErrorKind::kInvalidArgument:
      return "InvalidArgument";
    case ErrorKind::kParseError:
      return "ParseError";
    case ErrorKind::kIoError:
      return "IoError";
  }
  return "Unknown";
}

absl::Status MakeError(ErrorKind kind, absl::string_view detail) {
  std::string message = absl::StrCat(std::string(ErrorKindName(kind)), ": ", detail);
  switch (kind) {
    case ErrorKind::kOutOfBounds:
    case ErrorKind::kTooFewRows:
    case ErrorKind::kTrimTooLarge:
    case ErrorKind::kBadK:
    case ErrorKind::kSampleTooSmall:
    case ErrorKind::kGammaOutOfRange:
    case ErrorKind::kDeltaOutOfRange:
      return absl::OutOfRangeError(message);
    case ErrorKind::kDegenerateClass:
      return absl::FailedPreconditionError(message);
    case ErrorKind::kIoError:
      return absl::NotFoundError(message);
    case ErrorKind::kParseError:
      return absl::DataLossError(message);
    default:
      return absl::InvalidArgumentError(message);
  }
}

bool IsErrorKind(const absl::Status& status, ErrorKind kind) {
  return !status.ok() &&
         absl::StartsWith(status.message(),
                          absl::StrCat(std::string(ErrorKindName(kind)), ":"));
}

}  // namespace dpnb
