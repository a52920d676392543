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

#ifndef DPNB_NOISE_H_
#define DPNB_NOISE_H_

#include <optional>
#include <string_view>

#include "absl/status/statusor.h"
#include "dpnb/rng.h"

namespace dpnb {

enum class NoiseFamily { kLaplace, kCauchy, kGaussian };

// How the smoothing parameter and Cauchy scale are tied to eps'.
//   kPaper:  beta = eps',             scale = sqrt(2) S / eps'
//   kStrict: beta = eps'/(2(g + 1)),  scale = 2(g + 1) S / eps'
enum class BetaMode { kPaper, kStrict };

enum class CalibrationMode { kPaper, kStrict, kApprox, kGlobal };

std::string_view NoiseFamilyName(NoiseFamily family);
std::string_view BetaModeName(BetaMode mode);
std::string_view CalibrationModeName(CalibrationMode mode);
std::optional<NoiseFamily> ParseNoiseFamily(std::string_view name);
std::optional<BetaMode> ParseBetaMode(std::string_view name);
std::optional<CalibrationMode> ParseCalibrationMode(std::string_view name);

// Inputs that produced a NoiseSpec's scale.
struct NoiseProvenance {
  double epsilon = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  // Smoothing parameter the sensitivity must have been computed with
  // (0 for global-sensitivity calibration).
  double beta = 0.0;
  double sensitivity = 0.0;
  CalibrationMode mode = CalibrationMode::kGlobal;
};

// A zero scale is a pass-through: every draw equals `location`.
struct NoiseSpec {
  NoiseFamily family = NoiseFamily::kLaplace;
  double location = 0.0;
  double scale = 0.0;
  NoiseProvenance provenance;
};

// Inverse CDF of the spec's distribution at u in (0, 1).
double SampleFromUniform(const NoiseSpec& spec, double u);

// One draw, consuming exactly one uniform from `rng`.
double Sample(const NoiseSpec& spec, Rng& rng);

// Smoothing parameter paired with pure-DP Cauchy calibration.
// GammaOutOfRange when gamma <= 1; InvalidArgument when epsilon <= 0.
absl::StatusOr<double> SmoothingBeta(double epsilon, double gamma,
                                     BetaMode mode);

// Cauchy noise for a beta-smooth sensitivity. When `beta_used` is given it
// must not exceed SmoothingBeta(epsilon, gamma, mode); a larger value means
// the sensitivity was not smoothed enough for this calibration.
// GammaOutOfRange when gamma <= 1; InvalidArgument for a negative or
// non-finite sensitivity, a non-positive epsilon or a beta mismatch.
absl::StatusOr<NoiseSpec> CalibratePure(
    double sensitivity, double epsilon, double gamma = 2.0,
    BetaMode mode = BetaMode::kStrict,
    std::optional<double> beta_used = std::nullopt);

// Smoothing parameter for the Gaussian variant: eps' / (2 ln(2/delta)).
// DeltaOutOfRange unless 0 < delta < 1.
absl::StatusOr<double> ApproxBeta(double epsilon, double delta);

// Gaussian noise with standard deviation sqrt(2 ln(2/delta)) S / eps'.
// DeltaOutOfRange unless 0 < delta < 1.
absl::StatusOr<NoiseSpec> CalibrateApprox(
    double sensitivity, double epsilon, double delta,
    std::optional<double> beta_used = std::nullopt);

// Laplace noise with scale GS / eps'.
absl::StatusOr<NoiseSpec> CalibrateGlobalLaplace(double sensitivity,
                                                 double epsilon);

}  // namespace dpnb

#endif  // DPNB_NOISE_H_
