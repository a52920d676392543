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

#ifndef DPNB_ERRORS_H_
#define DPNB_ERRORS_H_

#include <string_view>

#include "absl/status/status.h"
#include "absl/strings/string_view.h"

namespace dpnb {

// Every error produced by the library carries one of these names as the
// prefix of its message ("OutOfBounds: ..."), so callers and the CLI can
// report the failure class without parsing free text.
enum class ErrorKind {
  kOutOfBounds,
  kUnknownCategory,
  kMissingValue,
  kColumnMismatch,
  kTooFewRows,
  kTrimTooLarge,
  kBadK,
  kSampleTooSmall,
  kGammaOutOfRange,
  kDeltaOutOfRange,
  kDegenerateClass,
  kInvalidSchema,
  kInvalidArgument,
  kParseError,
  kIoError,
};

std::string_view ErrorKindName(ErrorKind kind);

// Builds a status whose message is "<Name>: <detail>". Argument errors map to
// kInvalidArgument, bound errors to kOutOfRange, I/O to kNotFound/kDataLoss.
absl::Status MakeError(ErrorKind kind, absl::string_view detail);

// True when `status` was produced by MakeError(kind, ...).
bool IsErrorKind(const absl::Status& status, ErrorKind kind);

}  // namespace dpnb

#endif  // DPNB_ERRORS_H_
