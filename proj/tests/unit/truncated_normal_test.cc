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
#include <numbers>

#include "gtest/gtest.h"

namespace dpnb {
namespace {

TEST(TruncatedNormalTest, FlatLimitIsUniform) {
  EXPECT_NEAR(std::exp(TruncatedNormalLogPdf(1.3, 2.0, 1e6, 0, 4)), 0.25,
              1e-9);
}

TEST(TruncatedNormalTest, WideBoundsMatchNormal) {
  for (double x : {-2.0, 0.0, 0.7, 3.1}) {
    EXPECT_NEAR(std::exp(TruncatedNormalLogPdf(x, 0.5, 1.2, -1e6, 1e6)),
                std::exp(NormalLogPdf(x, 0.5, 1.2)), 1e-9);
  }
  EXPECT_NEAR(NormalLogPdf(0, 0, 1), -0.5 * std::log(2 * std::numbers::pi),
              1e-15);
}

TEST(TruncatedNormalTest, IntegratesToOne) {
  const double a = 1, b = 3;
  for (auto [mu, sigma] : {std::pair{2.0, 0.5}, std::pair{-4.0, 1.0},
                           std::pair{3.5, 0.2}, std::pair{0.0, 10.0}}) {
    const int steps = 20000;
    const double h = (b - a) / steps;
    double total = 0;
    for (int i = 0; i <= steps; ++i) {
      const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
      total += w * std::exp(TruncatedNormalLogPdf(a + i * h, mu, sigma, a, b));
    }
    EXPECT_NEAR(total * h, 1.0, 1e-6) << mu << " " << sigma;
  }
}

TEST(TruncatedNormalTest, FarTailStaysFinite) {
  const double lp = TruncatedNormalLogPdf(0.5, 100.0, 1.0, 0, 1);
  EXPECT_TRUE(std::isfinite(lp));
  // Deep in the tail the density approaches an exponential with rate
  // (mu - x)/sigma^2, so the upper edge dominates.
  EXPECT_GT(TruncatedNormalLogPdf(1.0, 100.0, 1.0, 0, 1), lp);
  EXPECT_TRUE(std::isfinite(TruncatedNormalLogPdf(0.5, -100.0, 1.0, 0, 1)));
}

TEST(TruncatedNormalTest, OutsideSupport) {
  EXPECT_EQ(TruncatedNormalLogPdf(-0.1, 0, 1, 0, 1),
            -std::numeric_limits<double>::infinity());
  EXPECT_EQ(TruncatedNormalLogPdf(1.1, 0, 1, 0, 1),
            -std::numeric_limits<double>::infinity());
}

TEST(TruncatedNormalTest, LogTailMatchesErfcAndAsymptotics) {
  EXPECT_NEAR(LogNormalTail(0), std::log(0.5), 1e-15);
  EXPECT_NEAR(LogNormalTail(3), std::log(0.5 * std::erfc(3 / std::sqrt(2.0))),
              1e-12);
  // Continuity across the switch to the asymptotic series.
  EXPECT_NEAR(LogNormalTail(29.999), LogNormalTail(30.001),
              0.1);
  EXPECT_TRUE(std::isfinite(LogNormalTail(1e4)));
}

}  // namespace
}  // namespace dpnb
