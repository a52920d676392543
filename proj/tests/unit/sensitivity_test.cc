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

#include "dpnb/sensitivity.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "dpnb/errors.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpnb {
namespace {

std::vector<double> Vec(const BoundedSample& s) {
  return {s.values().begin(), s.values().end()};
}

using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::Pointwise;

BoundedSample MakeSample(std::vector<double> values, double lower,
                         double upper) {
  absl::StatusOr<BoundedSample> s =
      BoundedSample::Create(std::move(values), lower, upper);
  EXPECT_TRUE(s.ok()) << s.status();
  return *std::move(s);
}

TEST(BoundedSampleTest, SortsAndChecksBounds) {
  BoundedSample s = MakeSample({3, 1, 2}, 0, 5);
  EXPECT_THAT(Vec(s), ElementsAre(1, 2, 3));
  EXPECT_DOUBLE_EQ(s.Mean(), 2.0);
  EXPECT_DOUBLE_EQ(s.Variance(), 2.0 / 3);

  EXPECT_TRUE(IsErrorKind(BoundedSample::Create({6}, 0, 5).status(),
                          ErrorKind::kOutOfBounds));
  EXPECT_TRUE(IsErrorKind(BoundedSample::Create({}, 0, 5).status(),
                          ErrorKind::kSampleTooSmall));
  EXPECT_FALSE(BoundedSample::Create({1}, 5, 5).ok());
  EXPECT_FALSE(
      BoundedSample::Create({std::numeric_limits<double>::quiet_NaN()}, 0, 1)
          .ok());
}

TEST(TrimSampleTest, KeepsTheMiddle) {
  BoundedSample s = MakeSample({1, 2, 3, 4, 5, 6, 7}, 0, 10);
  absl::StatusOr<BoundedSample> t = TrimSample(s, {2});
  ASSERT_TRUE(t.ok());
  EXPECT_THAT(Vec(*t), ElementsAre(3, 4, 5));
  EXPECT_EQ(t->lower(), 0);
  EXPECT_EQ(t->upper(), 10);

  absl::StatusOr<BoundedSample> same = TrimSample(s, {0});
  ASSERT_TRUE(same.ok());
  EXPECT_THAT(Vec(*same), Pointwise(testing::Eq(), Vec(s)));

  absl::StatusOr<BoundedSample> one = TrimSample(MakeSample({5, 5, 5}, 0, 9), {1});
  ASSERT_TRUE(one.ok());
  EXPECT_THAT(Vec(*one), ElementsAre(5));

  EXPECT_TRUE(IsErrorKind(TrimSample(s, {4}).status(),
                          ErrorKind::kTrimTooLarge));
  EXPECT_TRUE(IsErrorKind(TrimmedMean(s, {4}).status(),
                          ErrorKind::kTrimTooLarge));
}

TEST(MeanSensitivityTest, LocalExamples) {
  EXPECT_NEAR(LocalSensitivityMean(MakeSample({0.4, 0.5, 0.6}, 0, 1)), 0.2,
              1e-15);
  EXPECT_NEAR(LocalSensitivityMean(MakeSample({0, 0, 1}, 0, 1)), 1.0 / 3,
              1e-15);
  EXPECT_NEAR(LocalSensitivityMean(MakeSample({5, 5, 5, 5}, 4, 6)), 0.25,
              1e-15);
}

TEST(MeanSensitivityTest, SmoothExample) {
  absl::StatusOr<SensitivityReport> r =
      SmoothSensitivityMean(MakeSample({0.4, 0.5, 0.6}, 0, 1), 0.1);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->local, 0.2, 1e-15);
  ASSERT_EQ(r->at_distance.size(), 4u);
  EXPECT_NEAR(r->at_distance[0], 0.2, 1e-15);
  for (int k = 1; k <= 3; ++k) EXPECT_NEAR(r->at_distance[k], 1.0 / 3, 1e-15);
  EXPECT_NEAR(r->smooth, std::exp(-0.1) / 3, 1e-12);
  EXPECT_NEAR(r->smooth, 0.30161, 1e-5);
  EXPECT_EQ(r->argmax_k, 1);
  EXPECT_EQ(r->k_max, 3);
}

TEST(MeanSensitivityTest, LargeBetaGivesLocal) {
  BoundedSample s = MakeSample({0.2, 0.3, 0.35, 0.5}, 0, 1);
  absl::StatusOr<SensitivityReport> r = SmoothSensitivityMean(s, 1e6);
  ASSERT_TRUE(r.ok());
  EXPECT_DOUBLE_EQ(r->smooth, LocalSensitivityMean(s));
  EXPECT_EQ(r->argmax_k, 0);
}

TEST(MeanSensitivityTest, AllExtremeSampleIsAlreadyGlobal) {
  for (double beta : {0.01, 0.5, 1.0}) {
    absl::StatusOr<SensitivityReport> r =
        SmoothSensitivityMean(MakeSample({0, 0, 0}, 0, 1), beta);
    ASSERT_TRUE(r.ok());
    EXPECT_NEAR(r->smooth, 1.0 / 3, 1e-15);
  }
}

TEST(MeanSensitivityTest, RejectsBadBeta) {
  BoundedSample s = MakeSample({0.5}, 0, 1);
  EXPECT_FALSE(SmoothSensitivityMean(s, 0).ok());
  EXPECT_FALSE(SmoothSensitivityMean(s, -1).ok());
  EXPECT_FALSE(
      SmoothSensitivityMean(s, std::numeric_limits<double>::quiet_NaN()).ok());
}

TEST(VarianceSubsetTest, Examples) {
  BoundedSample s = MakeSample({0, 1, 3, 10}, 0, 10);
  absl::StatusOr<VarianceSubset> max2 = KMaxVarianceSubset(s, 2);
  ASSERT_TRUE(max2.ok());
  EXPECT_THAT(max2->indices, ElementsAre(0, 3));
  EXPECT_NEAR(max2->variance, 25, 1e-12);

  absl::StatusOr<VarianceSubset> min2 = KMinVarianceSubset(s, 2);
  ASSERT_TRUE(min2.ok());
  EXPECT_THAT(min2->indices, ElementsAre(0, 1));
  EXPECT_NEAR(min2->variance, 0.25, 1e-12);

  absl::StatusOr<VarianceSubset> flat =
      KMaxVarianceSubset(MakeSample({5, 5, 5, 5}, 0, 10), 2);
  ASSERT_TRUE(flat.ok());
  EXPECT_EQ(flat->variance, 0);

  absl::StatusOr<VarianceSubset> single =
      KMaxVarianceSubset(MakeSample({0, 10}, 0, 10), 1);
  ASSERT_TRUE(single.ok());
  EXPECT_EQ(single->indices.size(), 1u);
  EXPECT_EQ(single->variance, 0);

  absl::StatusOr<VarianceSubset> window =
      KMinVarianceSubset(MakeSample({5, 5, 5, 9}, 0, 10), 3);
  ASSERT_TRUE(window.ok());
  EXPECT_THAT(window->indices, ElementsAre(0, 1, 2));
  EXPECT_EQ(window->variance, 0);
}

TEST(VarianceSubsetTest, RejectsBadK) {
  BoundedSample s = MakeSample({0, 1, 2}, 0, 2);
  for (int k : {0, 3, -1}) {
    EXPECT_TRUE(IsErrorKind(KMaxVarianceSubset(s, k).status(),
                            ErrorKind::kBadK));
    EXPECT_TRUE(IsErrorKind(KMinVarianceSubset(s, k).status(),
                            ErrorKind::kBadK));
  }
}

TEST(VarianceSensitivityTest, AllAtLowerBoundReachesGlobal) {
  absl::StatusOr<SensitivityReport> r =
      SmoothSensitivityVariance(MakeSample({0, 0, 0}, 0, 1), 0.1);
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r->at_distance.size(), 4u);
  // Moving one point of (0,0,0) to U already gives the largest possible
  // change, (n-1)(U-L)^2/n^2.
  EXPECT_NEAR(r->at_distance[3], 2.0 / 9, 1e-15);
  EXPECT_NEAR(r->local, 2.0 / 9, 1e-15);
  EXPECT_NEAR(*GlobalSensitivity(Statistic::kVariance, 0, 1, 3), 2.0 / 9,
              1e-15);
}

TEST(VarianceSensitivityTest, LargeBetaGivesLocal) {
  BoundedSample s = MakeSample({0.3, 0.4, 0.45, 0.6, 0.61}, 0, 1);
  absl::StatusOr<SensitivityReport> r = SmoothSensitivityVariance(s, 1e6);
  ASSERT_TRUE(r.ok());
  EXPECT_DOUBLE_EQ(r->smooth, *LocalSensitivityVariance(s));
}

TEST(VarianceSensitivityTest, RejectsSingleton) {
  BoundedSample s = MakeSample({0.5}, 0, 1);
  EXPECT_TRUE(IsErrorKind(SmoothSensitivityVariance(s, 1).status(),
                          ErrorKind::kSampleTooSmall));
  EXPECT_TRUE(IsErrorKind(LocalSensitivityVariance(s).status(),
                          ErrorKind::kSampleTooSmall));
}

TEST(GlobalSensitivityTest, Examples) {
  EXPECT_NEAR(*GlobalSensitivity(Statistic::kMean, 0, 1, 4), 0.25, 1e-15);
  EXPECT_NEAR(*GlobalSensitivity(Statistic::kMean, 5, 15, 10), 1.0, 1e-15);
  EXPECT_NEAR(*GlobalSensitivity(Statistic::kTrimmedMean, 0, 1, 10, {2}),
              1.0 / 6, 1e-15);
  EXPECT_FALSE(GlobalSensitivity(Statistic::kVariance, 0, 1, 1).ok());
}

TEST(TrimmedMeanSensitivityTest, ZeroTrimMatchesMean) {
  BoundedSample s = MakeSample({0.1, 0.2, 0.25, 0.7, 0.9}, 0, 1);
  for (double beta : {0.05, 0.3, 2.0}) {
    absl::StatusOr<SensitivityReport> trimmed =
        SmoothSensitivityTrimmedMean(s, {0}, beta);
    absl::StatusOr<SensitivityReport> mean = SmoothSensitivityMean(s, beta);
    ASSERT_TRUE(trimmed.ok() && mean.ok());
    EXPECT_NEAR(trimmed->smooth, mean->smooth, 1e-15);
    EXPECT_THAT(trimmed->at_distance,
                Pointwise(DoubleNear(1e-15), mean->at_distance));
  }
}

TEST(TrimmedMeanSensitivityTest, ConstantSampleIsLiftedBySmoothing) {
  BoundedSample s = MakeSample({0.5, 0.5, 0.5, 0.5, 0.5}, 0, 1);
  absl::StatusOr<SensitivityReport> r =
      SmoothSensitivityTrimmedMean(s, {1}, 0.2);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->local, 0.0);
  EXPECT_EQ(r->at_distance[0], 0.0);
  EXPECT_GT(r->smooth, 0.0);
}

TEST(TrimmedMeanSensitivityTest, RejectsLargeTrim) {
  BoundedSample s = MakeSample({1, 2, 3, 4}, 0, 5);
  EXPECT_TRUE(IsErrorKind(SmoothSensitivityTrimmedMean(s, {2}, 1).status(),
                          ErrorKind::kTrimTooLarge));
  EXPECT_TRUE(IsErrorKind(LocalSensitivityTrimmedMean(s, {2}).status(),
                          ErrorKind::kTrimTooLarge));
}

// Random samples with random bounds for the property checks below.
class SensitivityPropertyTest : public ::testing::Test {
 protected:
  BoundedSample RandomSample(int n, double lower, double upper) {
    std::uniform_real_distribution<double> u(lower, upper);
    std::vector<double> v(n);
    for (double& x : v) x = u(gen_);
    // Occasionally pin values to the bounds.
    if (n > 2) {
      v[0] = lower;
      if (gen_() % 2) v[1] = upper;
    }
    return MakeSample(std::move(v), lower, upper);
  }

  std::mt19937_64 gen_{20260214};
};

TEST_F(SensitivityPropertyTest, ReportInvariants) {
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 25;
    BoundedSample s = RandomSample(n, -3, 7);
    const double beta = 0.02 + 0.1 * (trial % 7);
    std::vector<absl::StatusOr<SensitivityReport>> reports = {
        SmoothSensitivityMean(s, beta), SmoothSensitivityVariance(s, beta)};
    if (n >= 4) reports.push_back(SmoothSensitivityTrimmedMean(s, {1}, beta));
    for (const auto& r : reports) {
      ASSERT_TRUE(r.ok()) << r.status();
      EXPECT_GE(r->smooth, r->local);
      EXPECT_EQ(r->at_distance.front(), r->local);
      EXPECT_EQ(r->k_max, n);
      double best = 0.0;
      for (size_t k = 0; k < r->at_distance.size(); ++k) {
        if (k > 0) {
          EXPECT_GE(r->at_distance[k], r->at_distance[k - 1]);
        }
        best = std::max(best, std::exp(-beta * k) * r->at_distance[k]);
      }
      EXPECT_DOUBLE_EQ(r->smooth, best);
    }
    // A^(n) is the global sensitivity, and S* never exceeds it.
    const double gs_mean = *GlobalSensitivity(Statistic::kMean, -3, 7, n);
    const double gs_var = *GlobalSensitivity(Statistic::kVariance, -3, 7, n);
    EXPECT_NEAR(reports[0]->at_distance.back(), gs_mean, 1e-12 * gs_mean);
    EXPECT_NEAR(reports[1]->at_distance.back(), gs_var, 1e-9 * gs_var);
    EXPECT_LE(reports[0]->smooth, gs_mean * (1 + 1e-12));
    EXPECT_LE(reports[1]->smooth, gs_var * (1 + 1e-9));
  }
}

TEST_F(SensitivityPropertyTest, MonotoneInBeta) {
  for (int trial = 0; trial < 30; ++trial) {
    BoundedSample s = RandomSample(3 + trial, 0, 1);
    double previous_mean = std::numeric_limits<double>::infinity();
    double previous_var = std::numeric_limits<double>::infinity();
    for (double beta : {0.01, 0.05, 0.1, 0.5, 1.0, 3.0}) {
      const double m = SmoothSensitivityMean(s, beta)->smooth;
      const double v = SmoothSensitivityVariance(s, beta)->smooth;
      EXPECT_LE(m, previous_mean);
      EXPECT_LE(v, previous_var);
      previous_mean = m;
      previous_var = v;
    }
  }
}

TEST_F(SensitivityPropertyTest, TranslationAndScaling) {
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + trial;
    BoundedSample s = RandomSample(n, 0, 1);
    const double shift = 12.5;
    const double scale = 3.0;
    std::vector<double> shifted;
    std::vector<double> scaled;
    for (double x : s.values()) {
      shifted.push_back(x + shift);
      scaled.push_back(x * scale);
    }
    BoundedSample t = MakeSample(shifted, shift, 1 + shift);
    BoundedSample u = MakeSample(scaled, 0, scale);
    const double beta = 0.3;
    const double mean = SmoothSensitivityMean(s, beta)->smooth;
    const double var = SmoothSensitivityVariance(s, beta)->smooth;
    EXPECT_NEAR(SmoothSensitivityMean(t, beta)->smooth, mean, 1e-12);
    EXPECT_NEAR(SmoothSensitivityVariance(t, beta)->smooth, var, 1e-9);
    EXPECT_NEAR(SmoothSensitivityMean(u, beta)->smooth, scale * mean, 1e-12);
    EXPECT_NEAR(SmoothSensitivityVariance(u, beta)->smooth,
                scale * scale * var, 1e-9);
  }
}

TEST_F(SensitivityPropertyTest, EarlyStopKeepsTheValue) {
  for (int trial = 0; trial < 20; ++trial) {
    BoundedSample s = RandomSample(10 + 7 * trial, 0, 1);
    for (double beta : {0.05, 0.5, 2.0}) {
      const SmoothOptions stop{.early_stop = true};
      absl::StatusOr<SensitivityReport> full = SmoothSensitivityVariance(s, beta);
      absl::StatusOr<SensitivityReport> cut =
          SmoothSensitivityVariance(s, beta, stop);
      ASSERT_TRUE(full.ok() && cut.ok());
      EXPECT_EQ(full->smooth, cut->smooth);
      EXPECT_LE(cut->k_max, full->k_max);
      EXPECT_EQ(SmoothSensitivityMean(s, beta)->smooth,
                SmoothSensitivityMean(s, beta, stop)->smooth);
    }
  }
}

TEST_F(SensitivityPropertyTest, SmoothBoundUnderOneReplacement) {
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 15;
    BoundedSample x = RandomSample(n, 0, 1);
    std::vector<double> moved(x.values().begin(), x.values().end());
    moved[gen_() % n] = (trial % 3 == 0) ? 1.0 : u(gen_);
    BoundedSample y = MakeSample(moved, 0, 1);
    const double beta = 0.1 + 0.05 * (trial % 5);
    const double slack = 1 + 1e-12;
    const double sx = SmoothSensitivityVariance(x, beta)->smooth;
    const double sy = SmoothSensitivityVariance(y, beta)->smooth;
    EXPECT_LE(sx, std::exp(beta) * sy * slack);
    EXPECT_LE(sy, std::exp(beta) * sx * slack);
    const double mx = SmoothSensitivityMean(x, beta)->smooth;
    const double my = SmoothSensitivityMean(y, beta)->smooth;
    EXPECT_LE(mx, std::exp(beta) * my * slack);
    EXPECT_LE(my, std::exp(beta) * mx * slack);
  }
}

}  // namespace
}  // namespace dpnb
