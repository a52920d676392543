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

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "dpnb/errors.h"

namespace dpnb {
namespace {

// Shared distance loop: at_distance(k) yields the best candidate found at
// exactly k replacements; the running maximum turns it into "within k".
template <typename AtDistance>
SensitivityReport ScanDistances(Statistic statistic, int n, double beta,
                                double global, SmoothOptions options,
                                AtDistance at_distance) {
  SensitivityReport report;
  report.statistic = statistic;
  report.beta = beta;
  report.at_distance.reserve(n + 1);
  double best = -1.0;
  double previous = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double value = std::max(previous, at_distance(k));
    previous = value;
    report.at_distance.push_back(value);
    const double term = std::exp(-beta * k) * value;
    if (term > best) {
      best = term;
      report.argmax_k = k;
    }
    if (options.early_stop && std::exp(-beta * (k + 1)) * global <= best) {
      break;
    }
  }
  report.local = report.at_distance.front();
  report.smooth = best;
  report.k_max = static_cast<int>(report.at_distance.size()) - 1;
  return report;
}

absl::Status CheckBeta(double beta) {
  if (!(beta > 0.0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("beta must be positive, got ", beta));
  }
  return absl::OkStatus();
}

// Local sensitivity of the population variance for datasets assembled from
// the sorted base sample: the untouched index ranges [a1, b1) and [a2, b2)
// (every value of the first range <= every value of the second) plus up to
// two replacement values with multiplicities.
//
// Replacing element y of a dataset with sum S by z changes the variance by
// (n-1)/n^2 * ((z - m)^2 - (y - m)^2), m = (S - y)/(n - 1) the mean of the
// other elements. The largest increase moves z to the farther bound, the
// largest decrease moves z to m, so with d = y - m and D = max(U - m, m - L)
// the local sensitivity is (n-1)/n^2 * max_y max(D^2 - d^2, d^2).
// d^2 is convex in y (largest at the extremes) and each branch of D^2 - d^2
// is a concave quadratic in y with vertex (S + U)/(n+1) or (S + L)/(n+1), so
// only the extremes, the replacement values and the sorted neighbours of the
// two vertices need to be examined.
class VarianceProbe {
 public:
  struct Extra {
    double value = 0.0;
    int count = 0;
  };

  // Index of the first sorted value >= v; moves a cached position, so a run
  // of nearby queries costs amortised O(1).
  struct Cursor {
    int position = 0;
  };

  explicit VarianceProbe(std::span<const double> sorted, double lower,
                         double upper)
      : x_(sorted),
        n_(static_cast<int>(sorted.size())),
        lower_(lower),
        upper_(upper),
        prefix_(sorted.size() + 1, 0.0) {
    long double running = 0.0L;
    for (int i = 0; i < n_; ++i) {
      running += x_[i];
      prefix_[i + 1] = static_cast<double>(running);
    }
  }

  int n() const { return n_; }

  double RangeSum(int begin, int end) const {
    return prefix_[end] - prefix_[begin];
  }

  double Scale() const {
    return static_cast<double>(n_ - 1) / (static_cast<double>(n_) * n_);
  }

  // Returns max(best, max_y max(D^2 - d^2, d^2)); multiply by Scale() for
  // the sensitivity. `sum` is the candidate's total.
  double Evaluate(int a1, int b1, int a2, int b2, Extra e1, Extra e2,
                  double total, Cursor& upper_vertex, Cursor& lower_vertex,
                  double best = 0.0) const {
    const double inv = 1.0 / (n_ - 1);
    // Every term is at most D(m)^2 and m = (S - y)/(n - 1) ranges over
    // [(S - U)/(n - 1), (S - L)/(n - 1)], where D is convex.
    const double reach_bound = std::max(upper_ - (total - upper_) * inv,
                                        (total - lower_) * inv - lower_);
    if (reach_bound * reach_bound <= best) return best;
    auto h = [&](double y) {
      const double m = (total - y) * inv;
      const double d = y - m;
      const double reach = std::max(upper_ - m, m - lower_);
      return std::max(reach * reach - d * d, d * d);
    };
    const bool seg1 = a1 < b1;
    const bool seg2 = a2 < b2;
    if (e1.count > 0) best = std::max(best, h(e1.value));
    if (e2.count > 0) best = std::max(best, h(e2.value));
    if (seg1 || seg2) {
      best = std::max(best, h(x_[seg1 ? a1 : a2]));
      best = std::max(best, h(x_[seg2 ? b2 - 1 : b1 - 1]));
    }
    if (!seg1 && !seg2) return best;

    auto successor = [&](int p) {
      if (seg1 && p < b1) return std::max(p, a1);
      if (seg2 && p < b2) return std::max(p, a2);
      return -1;
    };
    auto predecessor = [&](int p) {
      if (seg2 && p > a2) return std::min(p, b2) - 1;
      if (seg1 && p > a1) return std::min(p, b1) - 1;
      return -1;
    };
    auto probe_vertex = [&](double vertex, Cursor& cursor) {
      const int p = Locate(vertex, cursor);
      if (const int s = successor(p); s >= 0) best = std::max(best, h(x_[s]));
      if (const int q = predecessor(p); q >= 0) {
        best = std::max(best, h(x_[q]));
      }
    };
    probe_vertex((total + upper_) / (n_ + 1), upper_vertex);
    probe_vertex((total + lower_) / (n_ + 1), lower_vertex);
    return best;
  }

 private:
  int Locate(double v, Cursor& cursor) const {
    int p = std::clamp(cursor.position, 0, n_);
    while (p > 0 && x_[p - 1] >= v) --p;
    while (p < n_ && x_[p] < v) ++p;
    cursor.position = p;
    return p;
  }

  std::span<const double> x_;
  int n_;
  double lower_;
  double upper_;
  std::vector<double> prefix_;
};

// Best unscaled local sensitivity over candidates at exactly k
// replacements, or `floor` when none exceeds it.
double VarianceAtDistance(const VarianceProbe& probe, int k, double lower,
                          double upper, double floor = 0.0) {
  using Extra = VarianceProbe::Extra;
  const int n = probe.n();
  const double total = probe.RangeSum(0, n);
  double best = floor;

  if (k == 0) {
    VarianceProbe::Cursor up, low;
    return probe.Evaluate(0, n, n, n, {}, {}, total, up, low);
  }

  // Window moves. For a fixed window every untouched element's term is
  // convex in the candidate mean, which is linear in the number t of values
  // sent to L; a replaced element's term likewise over the t for which it
  // exists. The maximum over 0 <= t <= k is therefore attained at
  // t in {0, 1, k-1, k}.
  int splits[4] = {k, 0, k - 1, 1};
  int split_count = k == 1 ? 2 : (k == 2 ? 3 : 4);
  for (int s = 0; s < split_count; ++s) {
    const int to_lower = splits[s];
    const int to_upper = k - to_lower;
    const double replaced = to_lower * lower + to_upper * upper;
    const Extra e1{lower, to_lower};
    const Extra e2{upper, to_upper};
    VarianceProbe::Cursor up{n}, low{n};
    for (int w = 0; w + k <= n; ++w) {
      const double sum = total - probe.RangeSum(w, w + k) + replaced;
      best = probe.Evaluate(0, w, w + k, n, e1, e2, sum, up, low, best);
    }
  }

  // Tail moves: drop t values from the front and k - t from the back and
  // put them at the mean of the remaining n - k.
  if (k < n) {
    VarianceProbe::Cursor up{0}, low{0};
    for (int t = 0; t <= k; ++t) {
      const int begin = t;
      const int end = n - k + t;
      const double kept = probe.RangeSum(begin, end);
      const double mean = kept / (end - begin);
      const double sum = kept + k * mean;
      best = probe.Evaluate(begin, end, n, n, {mean, k}, {}, sum, up, low,
                            best);
    }
  }
  return best;
}

// Population variance of the given sorted positions.
double SubsetVariance(std::span<const double> values,
                      const std::vector<int>& indices) {
  long double sum = 0.0L;
  for (int i : indices) sum += values[i];
  const long double mean = sum / indices.size();
  long double squares = 0.0L;
  for (int i : indices) {
    const long double d = values[i] - mean;
    squares += d * d;
  }
  return static_cast<double>(squares / indices.size());
}

// Prefix sums of (x - shift) and (x - shift)^2 for O(1) range variances.
class MomentPrefix {
 public:
  explicit MomentPrefix(std::span<const double> x)
      : first_(x.size() + 1, 0.0L), second_(x.size() + 1, 0.0L) {
    long double shift = 0.0L;
    for (double v : x) shift += v;
    if (!x.empty()) shift /= x.size();
    for (size_t i = 0; i < x.size(); ++i) {
      const long double d = x[i] - shift;
      first_[i + 1] = first_[i] + d;
      second_[i + 1] = second_[i] + d * d;
    }
  }

  // Sums over [begin, end).
  std::pair<long double, long double> Range(int begin, int end) const {
    return {first_[end] - first_[begin], second_[end] - second_[begin]};
  }

 private:
  std::vector<long double> first_;
  std::vector<long double> second_;
};

double VarianceFromMoments(long double s1, long double s2, int count) {
  const long double mean = s1 / count;
  return std::max(0.0, static_cast<double>(s2 / count - mean * mean));
}

absl::Status CheckSubsetK(const BoundedSample& sample, int k) {
  if (k < 1 || k >= sample.size()) {
    return MakeError(ErrorKind::kBadK,
                     absl::StrCat("k must satisfy 1 <= k < n = ",
                                  sample.size(), ", got ", k));
  }
  return absl::OkStatus();
}

absl::Status CheckTrim(int n, TrimSpec trim, int min_kept) {
  if (trim.m < 0 || n - 2 * trim.m < min_kept) {
    return MakeError(ErrorKind::kTrimTooLarge,
                     absl::StrCat("trimming m = ", trim.m, " from each side of ",
                                  n, " values leaves fewer than ", min_kept));
  }
  return absl::OkStatus();
}

}  // namespace

std::string_view StatisticName(Statistic statistic) {
  switch (statistic) {
    case Statistic::kMean:
      return "mean";
    case Statistic::kVariance:
      return "variance";
    case Statistic::kTrimmedMean:
      return "trimmed_mean";
  }
  return "unknown";
}

absl::StatusOr<BoundedSample> BoundedSample::Create(std::vector<double> values,
                                                    double lower,
                                                    double upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("bounds must be finite with lower < upper, "
                                  "got [", lower, ", ", upper, "]"));
  }
  if (values.empty()) {
    return MakeError(ErrorKind::kSampleTooSmall, "sample is empty");
  }
  for (size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= lower && values[i] <= upper)) {
      return MakeError(ErrorKind::kOutOfBounds,
                       absl::StrCat("value ", values[i], " at position ", i,
                                    " outside [", lower, ", ", upper, "]"));
    }
  }
  std::sort(values.begin(), values.end());
  return BoundedSample(std::move(values), lower, upper);
}

double BoundedSample::Mean() const {
  long double sum = 0.0L;
  for (double v : values_) sum += v;
  return static_cast<double>(sum / values_.size());
}

double BoundedSample::Variance() const {
  const long double mean = Mean();
  long double squares = 0.0L;
  for (double v : values_) squares += (v - mean) * (v - mean);
  return static_cast<double>(squares / values_.size());
}

absl::StatusOr<BoundedSample> TrimSample(const BoundedSample& sample,
                                         TrimSpec trim) {
  if (absl::Status s = CheckTrim(sample.size(), trim, 1); !s.ok()) return s;
  const auto values = sample.values();
  return BoundedSample::Create(
      std::vector<double>(values.begin() + trim.m, values.end() - trim.m),
      sample.lower(), sample.upper());
}

absl::StatusOr<double> TrimmedMean(const BoundedSample& sample,
                                   TrimSpec trim) {
  if (absl::Status s = CheckTrim(sample.size(), trim, 1); !s.ok()) return s;
  const auto values = sample.values();
  long double sum = 0.0L;
  for (int i = trim.m; i < sample.size() - trim.m; ++i) sum += values[i];
  return static_cast<double>(sum / (sample.size() - 2 * trim.m));
}

double LocalSensitivityMean(const BoundedSample& sample) {
  const auto x = sample.values();
  return std::max(sample.upper() - x.front(), x.back() - sample.lower()) /
         sample.size();
}

absl::StatusOr<SensitivityReport> SmoothSensitivityMean(
    const BoundedSample& sample, double beta, SmoothOptions options) {
  if (absl::Status s = CheckBeta(beta); !s.ok()) return s;
  const auto x = sample.values();
  const int n = sample.size();
  const double lower = sample.lower();
  const double upper = sample.upper();
  const double global = (upper - lower) / n;
  // Raising the mean as far as possible replaces the k smallest values with
  // U, lowering it replaces the k largest with L; the local sensitivity of
  // the result then accounts for one further move to a bound.
  auto at_distance = [&](int k) {
    if (k == 0) return LocalSensitivityMean(sample);
    const double raised_min = k < n ? x[k] : upper;
    const double raised = std::max(upper - raised_min, upper - lower) / n;
    const double lowered_max = k < n ? x[n - 1 - k] : lower;
    const double lowered = std::max(upper - lower, lowered_max - lower) / n;
    return std::max(raised, lowered);
  };
  return ScanDistances(Statistic::kMean, n, beta, global, options,
                       at_distance);
}

absl::StatusOr<VarianceSubset> KMaxVarianceSubset(const BoundedSample& sample,
                                                  int k) {
  if (absl::Status s = CheckSubsetK(sample, k); !s.ok()) return s;
  const auto x = sample.values();
  const int n = sample.size();
  const MomentPrefix moments(x);
  int best_front = 0;
  double best = -1.0;
  for (int front = 0; front <= k; ++front) {
    const auto [f1, f2] = moments.Range(0, front);
    const auto [b1, b2] = moments.Range(n - (k - front), n);
    const double variance = VarianceFromMoments(f1 + b1, f2 + b2, k);
    if (variance > best) {
      best = variance;
      best_front = front;
    }
  }
  VarianceSubset subset;
  for (int i = 0; i < best_front; ++i) subset.indices.push_back(i);
  for (int i = n - (k - best_front); i < n; ++i) subset.indices.push_back(i);
  subset.variance = SubsetVariance(x, subset.indices);
  return subset;
}

absl::StatusOr<VarianceSubset> KMinVarianceSubset(const BoundedSample& sample,
                                                  int k) {
  if (absl::Status s = CheckSubsetK(sample, k); !s.ok()) return s;
  const auto x = sample.values();
  const int n = sample.size();
  const MomentPrefix moments(x);
  int best_start = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int start = 0; start + k <= n; ++start) {
    const auto [s1, s2] = moments.Range(start, start + k);
    const double variance = VarianceFromMoments(s1, s2, k);
    if (variance < best) {
      best = variance;
      best_start = start;
    }
  }
  VarianceSubset subset;
  for (int i = best_start; i < best_start + k; ++i) subset.indices.push_back(i);
  subset.variance = SubsetVariance(x, subset.indices);
  return subset;
}

absl::StatusOr<double> LocalSensitivityVariance(const BoundedSample& sample) {
  if (sample.size() < 2) {
    return MakeError(ErrorKind::kSampleTooSmall,
                     "variance sensitivity needs at least 2 values");
  }
  const VarianceProbe probe(sample.values(), sample.lower(), sample.upper());
  return probe.Scale() *
         VarianceAtDistance(probe, 0, sample.lower(), sample.upper());
}

absl::StatusOr<SensitivityReport> SmoothSensitivityVariance(
    const BoundedSample& sample, double beta, SmoothOptions options) {
  if (absl::Status s = CheckBeta(beta); !s.ok()) return s;
  if (sample.size() < 2) {
    return MakeError(ErrorKind::kSampleTooSmall,
                     "variance sensitivity needs at least 2 values");
  }
  const int n = sample.size();
  const VarianceProbe probe(sample.values(), sample.lower(), sample.upper());
  const double scale = probe.Scale();
  const double range = sample.upper() - sample.lower();
  const double global = scale * range * range;
  // Candidates that cannot beat the previous distance are skipped; the
  // running maximum makes that exact.
  double previous = 0.0;
  return ScanDistances(Statistic::kVariance, n, beta, global, options,
                       [&](int k) {
                         previous = VarianceAtDistance(
                             probe, k, sample.lower(), sample.upper(),
                             previous);
                         return scale * previous;
                       });
}

absl::StatusOr<double> LocalSensitivityTrimmedMean(const BoundedSample& sample,
                                                   TrimSpec trim) {
  const int n = sample.size();
  if (absl::Status s = CheckTrim(n, trim, 2); !s.ok()) return s;
  const auto x = sample.values();
  const int m = trim.m;
  auto order = [&](int i) {
    if (i <= 0) return sample.lower();
    if (i > n) return sample.upper();
    return x[i - 1];
  };
  return std::max(order(n - m + 1) - order(m + 1), order(n - m) - order(m)) /
         (n - 2 * m);
}

absl::StatusOr<SensitivityReport> SmoothSensitivityTrimmedMean(
    const BoundedSample& sample, TrimSpec trim, double beta,
    SmoothOptions options) {
  if (absl::Status s = CheckBeta(beta); !s.ok()) return s;
  const int n = sample.size();
  if (absl::Status s = CheckTrim(n, trim, 2); !s.ok()) return s;
  const auto x = sample.values();
  const int m = trim.m;
  const int kept = n - 2 * m;
  // 1-based order statistic padded with the bounds.
  auto order = [&](int i) {
    if (i <= 0) return sample.lower();
    if (i > n) return sample.upper();
    return x[i - 1];
  };
  const double global = (sample.upper() - sample.lower()) / kept;
  auto at_distance = [&](int k) {
    double best = 0.0;
    for (int t = 0; t <= k + 1; ++t) {
      best = std::max(best, order(n - m + 1 + k - t) - order(m + 1 - t));
    }
    return best / kept;
  };
  return ScanDistances(Statistic::kTrimmedMean, n, beta, global, options,
                       at_distance);
}

absl::StatusOr<double> GlobalSensitivity(Statistic statistic, double lower,
                                         double upper, int n, TrimSpec trim) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "bounds must be finite with lower < upper");
  }
  if (n < 1) {
    return MakeError(ErrorKind::kSampleTooSmall, "n must be positive");
  }
  switch (statistic) {
    case Statistic::kMean:
      return (upper - lower) / n;
    case Statistic::kTrimmedMean:
      if (absl::Status s = CheckTrim(n, trim, 1); !s.ok()) return s;
      return (upper - lower) / (n - 2 * trim.m);
    case Statistic::kVariance: {
      if (n < 2) {
        return MakeError(ErrorKind::kSampleTooSmall,
                         "variance sensitivity needs n >= 2");
      }
      // Distance n reaches every dataset; the all-L dataset is the window
      // candidate that maximises it.
      const std::vector<double> placeholder(n, lower);
      const VarianceProbe probe(placeholder, lower, upper);
      VarianceProbe::Cursor up, low;
      return probe.Scale() *
             probe.Evaluate(0, 0, n, n, {lower, n}, {}, n * lower, up, low);
    }
  }
  return MakeError(ErrorKind::kInvalidArgument, "unknown statistic");
}

}  // namespace dpnb
