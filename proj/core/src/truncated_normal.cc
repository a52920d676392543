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

#include "dpnb/truncated_normal.h"

#include <cmath>
#include <limits>
#include <numbers>

namespace dpnb {
namespace {

constexpr double kLogSqrtTwoPi = 0.91893853320467274178;

// log(exp(p) - exp(q)) for p >= q.
double LogDiffExp(double p, double q) {
  if (q == -std::numeric_limits<double>::infinity()) return p;
  return p + std::log1p(-std::exp(q - p));
}

}  // namespace

double NormalLogPdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return -0.5 * z * z - std::log(sigma) - kLogSqrtTwoPi;
}

double LogNormalTail(double z) {
  if (z < 30.0) {
    return std::log(0.5 * std::erfc(z / std::numbers::sqrt2));
  }
  // Asymptotic expansion of the Mills ratio.
  const double inv2 = 1.0 / (z * z);
  const double series =
      1.0 - inv2 * (1.0 - 3.0 * inv2 * (1.0 - 5.0 * inv2 * (1.0 - 7.0 * inv2)));
  return -0.5 * z * z - std::log(z) - kLogSqrtTwoPi + std::log(series);
}

double TruncatedNormalLogPdf(double x, double mu, double sigma, double a,
                             double b) {
  if (x < a || x > b) return -std::numeric_limits<double>::infinity();
  const double alpha = (a - mu) / sigma;
  const double beta = (b - mu) / sigma;
  double log_mass;
  if (alpha >= 0) {
    // Both ends in the upper tail: Q(alpha) - Q(beta).
    log_mass = LogDiffExp(LogNormalTail(alpha), LogNormalTail(beta));
  } else if (beta <= 0) {
    // Mirror image: Q(-beta) - Q(-alpha).
    log_mass = LogDiffExp(LogNormalTail(-beta), LogNormalTail(-alpha));
  } else {
    const double outside = 0.5 * std::erfc(-alpha / std::numbers::sqrt2) +
                           0.5 * std::erfc(beta / std::numbers::sqrt2);
    log_mass = std::log1p(-outside);
  }
  return NormalLogPdf(x, mu, sigma) - log_mass;
}

}  // namespace dpnb
