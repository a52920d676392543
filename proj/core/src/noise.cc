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

#include "dpnb/noise.h"

#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"
#include "boost/math/distributions/normal.hpp"
#include "dpnb/errors.h"

namespace dpnb {
namespace {

// Relative slack when comparing a caller's beta with the required one, so
// that a beta recomputed through a different expression still matches.
constexpr double kBetaSlack = 1e-12;

absl::Status CheckCommon(double sensitivity, double epsilon) {
  if (!std::isfinite(sensitivity) || sensitivity < 0) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("sensitivity must be finite and >= 0, got ",
                                  sensitivity));
  }
  if (!std::isfinite(epsilon) || !(epsilon > 0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  return absl::OkStatus();
}

absl::Status CheckBeta(std::optional<double> used, double required) {
  if (used.has_value() && *used > required * (1 + kBetaSlack)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("sensitivity smoothed with beta ", *used,
                                  ", calibration requires beta <= ",
                                  required));
  }
  return absl::OkStatus();
}

double LogTwoOverDelta(double delta) { return std::log(2.0 / delta); }

}  // namespace

std::string_view NoiseFamilyName(NoiseFamily family) {
  switch (family) {
    case NoiseFamily::kLaplace:
      return "laplace";
    case NoiseFamily::kCauchy:
      return "cauchy";
    case NoiseFamily::kGaussian:
      return "gaussian";
  }
  return "unknown";
}

std::string_view BetaModeName(BetaMode mode) {
  return mode == BetaMode::kPaper ? "paper" : "strict";
}

std::string_view CalibrationModeName(CalibrationMode mode) {
  switch (mode) {
    case CalibrationMode::kPaper:
      return "paper";
    case CalibrationMode::kStrict:
      return "strict";
    case CalibrationMode::kApprox:
      return "approx";
    case CalibrationMode::kGlobal:
      return "global";
  }
  return "unknown";
}

std::optional<NoiseFamily> ParseNoiseFamily(std::string_view name) {
  for (NoiseFamily f :
       {NoiseFamily::kLaplace, NoiseFamily::kCauchy, NoiseFamily::kGaussian}) {
    if (NoiseFamilyName(f) == name) return f;
  }
  return std::nullopt;
}

std::optional<BetaMode> ParseBetaMode(std::string_view name) {
  for (BetaMode m : {BetaMode::kPaper, BetaMode::kStrict}) {
    if (BetaModeName(m) == name) return m;
  }
  return std::nullopt;
}

std::optional<CalibrationMode> ParseCalibrationMode(std::string_view name) {
  for (CalibrationMode m : {CalibrationMode::kPaper, CalibrationMode::kStrict,
                            CalibrationMode::kApprox,
                            CalibrationMode::kGlobal}) {
    if (CalibrationModeName(m) == name) return m;
  }
  return std::nullopt;
}

double SampleFromUniform(const NoiseSpec& spec, double u) {
  if (spec.scale == 0.0) return spec.location;
  const double centered = u - 0.5;
  switch (spec.family) {
    case NoiseFamily::kLaplace:
      // Work from the nearer tail so tiny u keeps its precision.
      return centered < 0 ? spec.location + spec.scale * std::log(2.0 * u)
                          : spec.location -
                                spec.scale * std::log(2.0 * (1.0 - u));
    case NoiseFamily::kCauchy:
      return spec.location +
             spec.scale * std::tan(std::numbers::pi * centered);
    case NoiseFamily::kGaussian: {
      static const boost::math::normal standard;
      return spec.location +
             spec.scale * boost::math::quantile(standard, u);
    }
  }
  return spec.location;
}

double Sample(const NoiseSpec& spec, Rng& rng) {
  return SampleFromUniform(spec, rng.UniformOpen());
}

absl::StatusOr<double> SmoothingBeta(double epsilon, double gamma,
                                     BetaMode mode) {
  if (!(gamma > 1) || !std::isfinite(gamma)) {
    return MakeError(ErrorKind::kGammaOutOfRange,
                     absl::StrCat("gamma must exceed 1, got ", gamma));
  }
  if (!std::isfinite(epsilon) || !(epsilon > 0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  return mode == BetaMode::kPaper ? epsilon : epsilon / (2 * (gamma + 1));
}

absl::StatusOr<NoiseSpec> CalibratePure(double sensitivity, double epsilon,
                                        double gamma, BetaMode mode,
                                        std::optional<double> beta_used) {
  absl::StatusOr<double> beta = SmoothingBeta(epsilon, gamma, mode);
  if (!beta.ok()) return beta.status();
  if (absl::Status s = CheckCommon(sensitivity, epsilon); !s.ok()) return s;
  if (absl::Status s = CheckBeta(beta_used, *beta); !s.ok()) return s;
  NoiseSpec spec;
  spec.family = NoiseFamily::kCauchy;
  spec.scale = mode == BetaMode::kPaper
                   ? std::numbers::sqrt2 * sensitivity / epsilon
                   : 2 * (gamma + 1) * sensitivity / epsilon;
  spec.provenance = {epsilon, 0.0, gamma, beta_used.value_or(*beta),
                     sensitivity,
                     mode == BetaMode::kPaper ? CalibrationMode::kPaper
                                              : CalibrationMode::kStrict};
  return spec;
}

absl::StatusOr<double> ApproxBeta(double epsilon, double delta) {
  if (!(delta > 0) || !(delta < 1)) {
    return MakeError(ErrorKind::kDeltaOutOfRange,
                     absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  if (!std::isfinite(epsilon) || !(epsilon > 0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  return epsilon / (2 * LogTwoOverDelta(delta));
}

absl::StatusOr<NoiseSpec> CalibrateApprox(double sensitivity, double epsilon,
                                          double delta,
                                          std::optional<double> beta_used) {
  absl::StatusOr<double> beta = ApproxBeta(epsilon, delta);
  if (!beta.ok()) return beta.status();
  if (absl::Status s = CheckCommon(sensitivity, epsilon); !s.ok()) return s;
  if (absl::Status s = CheckBeta(beta_used, *beta); !s.ok()) return s;
  NoiseSpec spec;
  spec.family = NoiseFamily::kGaussian;
  spec.scale = std::sqrt(2 * LogTwoOverDelta(delta)) * sensitivity / epsilon;
  spec.provenance = {epsilon,     delta,
                     0.0,         beta_used.value_or(*beta),
                     sensitivity, CalibrationMode::kApprox};
  return spec;
}

absl::StatusOr<NoiseSpec> CalibrateGlobalLaplace(double sensitivity,
                                                 double epsilon) {
  if (absl::Status s = CheckCommon(sensitivity, epsilon); !s.ok()) return s;
  NoiseSpec spec;
  spec.family = NoiseFamily::kLaplace;
  spec.scale = sensitivity / epsilon;
  spec.provenance = {epsilon, 0.0, 0.0, 0.0, sensitivity,
                     CalibrationMode::kGlobal};
  return spec;
}

}  // namespace dpnb
