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

// Library results against the brute-force references in tests/oracle.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dpnb/sensitivity.h"
#include "gtest/gtest.h"
#include "tests/oracle/brute_force.h"

namespace dpnb {
namespace {

BoundedSample MakeSample(std::vector<double> values, double lower,
                         double upper) {
  return *BoundedSample::Create(std::move(values), lower, upper);
}

double FineGridLocalMean(const std::vector<double>& y) {
  double best = 0.0;
  const double base = oracle::Mean(y);
  for (size_t i = 0; i < y.size(); ++i) {
    for (int g = 0; g <= 1000; ++g) {
      std::vector<double> z = y;
      z[i] = g / 1000.0;
      best = std::max(best, std::abs(oracle::Mean(z) - base));
    }
  }
  return best;
}

TEST(OracleTest, LocalMeanMatchesFineGridReplacement) {
  EXPECT_NEAR(LocalSensitivityMean(MakeSample({0.4, 0.5, 0.6}, 0, 1)),
              FineGridLocalMean({0.4, 0.5, 0.6}), 1e-12);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> y(2 + t % 6);
    for (double& x : y) x = u(gen);
    EXPECT_NEAR(LocalSensitivityMean(MakeSample(y, 0, 1)),
                FineGridLocalMean(y), 1e-12);
  }
}

TEST(OracleTest, LocalVarianceMatchesReplacementSearch) {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(-2, 5);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> y(2 + t % 9);
    for (double& x : y) x = u(gen);
    EXPECT_NEAR(*LocalSensitivityVariance(MakeSample(y, -2, 5)),
                oracle::LocalSensitivityVariance(y, -2, 5), 1e-12);
  }
}

void ExpectMatchesUniverse(int n, Statistic statistic, double beta) {
  const std::vector<double> grid = oracle::ElevenPointGrid();
  oracle::GridUniverse universe(
      n, grid, [statistic](const std::vector<double>& v) {
        switch (statistic) {
          case Statistic::kMean:
            return oracle::LocalSensitivityMean(v, 0, 1);
          case Statistic::kVariance:
            return oracle::LocalSensitivityVariance(v, 0, 1);
          case Statistic::kTrimmedMean:
            return oracle::LocalSensitivityTrimmedMean(v, 0, 1, 1);
        }
        return 0.0;
      });
  for (size_t i = 0; i < universe.sets().size(); ++i) {
    const std::vector<double> expected = universe.AtDistance(i);
    BoundedSample s = MakeSample(universe.Values(i), 0, 1);
    absl::StatusOr<SensitivityReport> r =
        statistic == Statistic::kMean ? SmoothSensitivityMean(s, beta)
        : statistic == Statistic::kVariance
            ? SmoothSensitivityVariance(s, beta)
            : SmoothSensitivityTrimmedMean(s, {1}, beta);
    ASSERT_TRUE(r.ok()) << r.status();
    ASSERT_EQ(r->at_distance.size(), expected.size());
    for (size_t k = 0; k < expected.size(); ++k) {
      ASSERT_NEAR(r->at_distance[k], expected[k], 1e-9)
          << "sample " << i << " k " << k;
    }
    ASSERT_NEAR(r->smooth, oracle::GridUniverse::Smooth(expected, beta), 1e-9);
  }
}

TEST(OracleTest, MeanOnGridUpToFour) {
  for (int n = 1; n <= 4; ++n) ExpectMatchesUniverse(n, Statistic::kMean, 0.1);
}

TEST(OracleTest, MeanExampleMatchesUniverse) {
  oracle::GridUniverse universe(3, oracle::ElevenPointGrid(),
                                [](const std::vector<double>& v) {
                                  return oracle::LocalSensitivityMean(v, 0, 1);
                                });
  for (size_t i = 0; i < universe.sets().size(); ++i) {
    std::vector<double> v = universe.Values(i);
    if (std::abs(v[0] - 0.4) < 1e-12 && std::abs(v[1] - 0.5) < 1e-12 &&
        std::abs(v[2] - 0.6) < 1e-12) {
      const double expected =
          oracle::GridUniverse::Smooth(universe.AtDistance(i), 0.1);
      EXPECT_NEAR(expected, 0.30161, 1e-5);
      EXPECT_NEAR(SmoothSensitivityMean(MakeSample(v, 0, 1), 0.1)->smooth,
                  expected, 1e-12);
    }
  }
}

TEST(OracleTest, VarianceOnGridUpToFour) {
  for (int n = 2; n <= 4; ++n) {
    ExpectMatchesUniverse(n, Statistic::kVariance, 0.25);
  }
}

TEST(OracleTest, TrimmedMeanOnGridFour) {
  ExpectMatchesUniverse(4, Statistic::kTrimmedMean, 0.25);
}

TEST(OracleTest, TrimmedMeanExampleOnHalfStepGrid) {
  std::vector<double> grid;
  for (int i = 0; i <= 8; ++i) grid.push_back(0.5 * i);
  oracle::GridUniverse universe(5, grid, [](const std::vector<double>& v) {
    return oracle::LocalSensitivityTrimmedMean(v, 0, 4, 1);
  });
  for (size_t i = 0; i < universe.sets().size(); ++i) {
    std::vector<double> v = universe.Values(i);
    if (v != std::vector<double>{0, 1, 2, 3, 4}) continue;
    const double expected =
        oracle::GridUniverse::Smooth(universe.AtDistance(i), 0.2);
    EXPECT_NEAR(
        SmoothSensitivityTrimmedMean(MakeSample(v, 0, 4), {1}, 0.2)->smooth,
        expected, 1e-9);
    return;
  }
  FAIL() << "sample not in the grid universe";
}

TEST(OracleTest, GlobalVarianceIsExhaustiveMaximum) {
  for (int n = 2; n <= 4; ++n) {
    double best = 0.0;
    for (const auto& counts :
         oracle::GridMultisets(n, static_cast<int>(oracle::ElevenPointGrid().size()))) {
      best = std::max(best, oracle::LocalSensitivityVariance(
                                oracle::Expand(counts, oracle::ElevenPointGrid()),
                                0, 1));
    }
    EXPECT_NEAR(*GlobalSensitivity(Statistic::kVariance, 0, 1, n), best,
                1e-12);
  }
}

// Exhaustive size-k subset search; returns the extreme variance.
double ExhaustiveSubsetVariance(const std::vector<double>& v, int k,
                                bool maximize) {
  const int n = static_cast<int>(v.size());
  double best = maximize ? -1.0 : 1e300;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<double> pick;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) pick.push_back(v[i]);
    }
    const double var = oracle::PopulationVariance(pick);
    best = maximize ? std::max(best, var) : std::min(best, var);
  }
  return best;
}

TEST(OracleTest, SubsetsMatchExhaustiveSearch) {
  const std::vector<double> example = {0, 1, 3, 10};
  EXPECT_NEAR(ExhaustiveSubsetVariance(example, 2, true), 25, 1e-12);
  EXPECT_NEAR(ExhaustiveSubsetVariance(example, 2, false), 0.25, 1e-12);

  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 10; ++t) {
    for (int n = 2; n <= 9; ++n) {
      std::vector<double> v(n);
      for (double& x : v) x = std::round(u(gen) * 20) / 20;
      BoundedSample s = MakeSample(v, 0, 1);
      const std::vector<double> sorted(s.values().begin(), s.values().end());
      for (int k = 1; k < n; ++k) {
        absl::StatusOr<VarianceSubset> hi = KMaxVarianceSubset(s, k);
        absl::StatusOr<VarianceSubset> lo = KMinVarianceSubset(s, k);
        ASSERT_TRUE(hi.ok() && lo.ok());
        EXPECT_NEAR(hi->variance, ExhaustiveSubsetVariance(sorted, k, true),
                    1e-12);
        EXPECT_NEAR(lo->variance, ExhaustiveSubsetVariance(sorted, k, false),
                    1e-12);
        // The reported indices realize the reported variance.
        std::vector<double> pick;
        for (int i : hi->indices) pick.push_back(sorted[i]);
        EXPECT_NEAR(oracle::PopulationVariance(pick), hi->variance, 1e-12);
        ASSERT_EQ(static_cast<int>(lo->indices.size()), k);
        for (int i = 1; i < k; ++i) {
          EXPECT_EQ(lo->indices[i], lo->indices[i - 1] + 1);
        }
      }
    }
  }
}

}  // namespace
}  // namespace dpnb
