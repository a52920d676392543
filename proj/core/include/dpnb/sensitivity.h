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

#ifndef DPNB_SENSITIVITY_H_
#define DPNB_SENSITIVITY_H_

#include <span>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace dpnb {

enum class Statistic { kMean, kVariance, kTrimmedMean };

std::string_view StatisticName(Statistic statistic);

// A nonempty sample of reals known to lie in [lower, upper], kept sorted.
// Variances throughout this header are population variances (divide by the
// count, not count - 1).
class BoundedSample {
 public:
  // Sorts `values`. Fails with InvalidArgument when the bounds are not finite
  // with lower < upper, with SampleTooSmall when `values` is empty, and with
  // OutOfBounds when some value is NaN or outside [lower, upper].
  static absl::StatusOr<BoundedSample> Create(std::vector<double> values,
                                              double lower, double upper);

  std::span<const double> values() const { return values_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  int size() const { return static_cast<int>(values_.size()); }

  double Mean() const;
  double Variance() const;

 private:
  BoundedSample(std::vector<double> values, double lower, double upper)
      : values_(std::move(values)), lower_(lower), upper_(upper) {}

  std::vector<double> values_;
  double lower_;
  double upper_;
};

// Number of elements dropped from each end of the sorted sample.
struct TrimSpec {
  int m = 0;
};

// Keeps the middle n - 2m values. TrimTooLarge when n - 2m < 1.
absl::StatusOr<BoundedSample> TrimSample(const BoundedSample& sample,
                                         TrimSpec trim);

// Mean of the m-trimmed sample. TrimTooLarge when n - 2m < 1.
absl::StatusOr<double> TrimmedMean(const BoundedSample& sample, TrimSpec trim);

// Sensitivity profile of one statistic on one sample. Neighbouring datasets
// differ by the replacement of a single value (n stays fixed).
struct SensitivityReport {
  Statistic statistic = Statistic::kMean;
  // Largest change of the statistic under one replacement.
  double local = 0.0;
  // at_distance[k] is the largest local sensitivity over all datasets within
  // k replacements of the sample; nondecreasing, at_distance[0] == local.
  std::vector<double> at_distance;
  // max_k exp(-beta k) at_distance[k].
  double smooth = 0.0;
  double beta = 0.0;
  // Last distance explored (at_distance.size() - 1).
  int k_max = 0;
  // Distance that attains `smooth` (smallest on ties).
  int argmax_k = 0;
};

struct SmoothOptions {
  // Stop scanning distances once exp(-beta k) times the global sensitivity
  // cannot exceed the running maximum. The result is unchanged; only
  // at_distance is shortened.
  bool early_stop = false;
};

// max(U - x_min, x_max - L) / n.
double LocalSensitivityMean(const BoundedSample& sample);

absl::StatusOr<SensitivityReport> SmoothSensitivityMean(
    const BoundedSample& sample, double beta, SmoothOptions options = {});

struct VarianceSubset {
  // Indices into the sorted sample, ascending.
  std::vector<int> indices;
  double variance = 0.0;
};

// Size-k subset of maximal variance: i values from the front and k - i from
// the back of the sorted sample, best i (smallest on ties). BadK unless
// 1 <= k < n.
absl::StatusOr<VarianceSubset> KMaxVarianceSubset(const BoundedSample& sample,
                                                  int k);

// Size-k subset of minimal variance: the best contiguous window of the sorted
// sample (smallest start on ties). BadK unless 1 <= k < n.
absl::StatusOr<VarianceSubset> KMinVarianceSubset(const BoundedSample& sample,
                                                  int k);

// SampleTooSmall when n < 2.
absl::StatusOr<double> LocalSensitivityVariance(const BoundedSample& sample);

// Exact at-distance profile of the variance. For each distance k the search
// visits every window of k consecutive sorted values and moves the window to
// the bounds (t values to L, k - t to U), then every split of k removals
// between the two tails with the removed values set to the mean of the rest;
// the local sensitivity of each candidate is evaluated exactly. O(n^2) time.
// SampleTooSmall when n < 2.
absl::StatusOr<SensitivityReport> SmoothSensitivityVariance(
    const BoundedSample& sample, double beta, SmoothOptions options = {});

// max(x_{n-m+1} - x_{m+1}, x_{n-m} - x_m) / (n - 2m) with x_0 = L and
// x_{n+1} = U. TrimTooLarge when n - 2m < 2.
absl::StatusOr<double> LocalSensitivityTrimmedMean(const BoundedSample& sample,
                                                   TrimSpec trim);

// at_distance[k] = max over 0 <= t <= k + 1 of
// (x_{n-m+1+k-t} - x_{m+1-t}) / (n - 2m), sorted values padded with L below
// and U above: k replacements slide the surviving window by at most k.
// TrimTooLarge when n - 2m < 2.
absl::StatusOr<SensitivityReport> SmoothSensitivityTrimmedMean(
    const BoundedSample& sample, TrimSpec trim, double beta,
    SmoothOptions options = {});

// Worst case of the local sensitivity over all datasets of size n in
// [lower, upper]. Mean: (U - L)/n. Trimmed mean: (U - L)/(n - 2m).
// Variance: the distance-n term of the variance search, (n-1)(U-L)^2/n^2.
absl::StatusOr<double> GlobalSensitivity(Statistic statistic, double lower,
                                         double upper, int n,
                                         TrimSpec trim = {});

}  // namespace dpnb

#endif  // DPNB_SENSITIVITY_H_
