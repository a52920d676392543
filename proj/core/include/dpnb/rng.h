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

#ifndef DPNB_RNG_H_
#define DPNB_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace dpnb {

// Seeded generator with platform-independent derived quantities. The
// standard distributions are implementation-defined, so uniforms and indices
// are computed here from raw 64-bit engine output.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextBits() { return engine_(); }

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double UniformOpen();

  // Uniform integer in [0, bound); bound must be positive.
  uint64_t UniformIndex(uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// Child seed for a labelled sub-stream, e.g. DeriveSeed(run_seed, {rep, fold}).
// Streams for distinct paths are independent of evaluation order.
uint64_t DeriveSeed(uint64_t parent, std::initializer_list<uint64_t> path);

// Stable 64-bit hash of a string (FNV-1a), for use in seed paths and digests.
uint64_t HashString(std::string_view text);

}  // namespace dpnb

#endif  // DPNB_RNG_H_
