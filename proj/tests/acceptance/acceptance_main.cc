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

// Acceptance checks. Each criterion prints one "PASS criterion N ..." or
// "FAIL criterion N ..." line, preceded by indented detail lines. The exit
// status is nonzero when any selected criterion fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpnb/budget.h"
#include "dpnb/csv.h"
#include "dpnb/dataset.h"
#include "dpnb/experiments.h"
#include "dpnb/naive_bayes.h"
#include "dpnb/noise.h"
#include "dpnb/rng.h"
#include "dpnb/schema_io.h"
#include "dpnb/sensitivity.h"
#include "tests/oracle/brute_force.h"

namespace dpnb {
namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
};

void Detail(const std::string& line) { std::cout << "  " << line << "\n"; }

std::string DataPath(const std::string& relative) {
  return std::string(DPNB_SOURCE_DIR) + "/data/" + relative;
}

std::optional<Dataset> LoadUci(const std::string& name) {
  const std::string csv = DataPath("uci/" + name + ".csv");
  if (!std::filesystem::exists(csv)) return std::nullopt;
  absl::StatusOr<DatasetSchema> schema =
      LoadSchema(DataPath("uci/" + name + ".schema.json"));
  if (!schema.ok()) {
    Detail(absl::StrCat(name, ": ", schema.status().message()));
    return std::nullopt;
  }
  absl::StatusOr<Dataset> d = LoadCsvDataset(
      csv, std::make_shared<const DatasetSchema>(*std::move(schema)));
  if (!d.ok()) {
    Detail(absl::StrCat(name, ": ", d.status().message()));
    return std::nullopt;
  }
  return *std::move(d);
}

constexpr char kSeedsMissing[] =
    "seeds data not present (data/uci/seeds.csv); run data/uci/fetch_seeds.sh";

BoundedSample Sample(std::vector<double> v, double lo, double hi) {
  return *BoundedSample::Create(std::move(v), lo, hi);
}

// ---------------------------------------------------------------------------
// 1

Outcome OracleEquivalence() {
  const std::vector<double> grid = oracle::ElevenPointGrid();
  const std::vector<double> betas = {0.05, 0.25, 1.0};
  long checked = 0;
  double worst = 0.0;
  for (Statistic statistic :
       {Statistic::kMean, Statistic::kVariance, Statistic::kTrimmedMean}) {
    const int first = statistic == Statistic::kMean        ? 1
                      : statistic == Statistic::kVariance ? 2
                                                          : 4;
    for (int n = first; n <= 5; ++n) {
      oracle::GridUniverse universe(
          n, grid, [statistic](const std::vector<double>& v) {
            if (statistic == Statistic::kMean) {
              return oracle::LocalSensitivityMean(v, 0, 1);
            }
            if (statistic == Statistic::kVariance) {
              return oracle::LocalSensitivityVariance(v, 0, 1);
            }
            return oracle::LocalSensitivityTrimmedMean(v, 0, 1, 1);
          });
      for (size_t i = 0; i < universe.sets().size(); ++i) {
        const std::vector<double> expected = universe.AtDistance(i);
        const BoundedSample s = Sample(universe.Values(i), 0, 1);
        for (double beta : betas) {
          absl::StatusOr<SensitivityReport> r =
              statistic == Statistic::kMean ? SmoothSensitivityMean(s, beta)
              : statistic == Statistic::kVariance
                  ? SmoothSensitivityVariance(s, beta)
                  : SmoothSensitivityTrimmedMean(s, {1}, beta);
          if (!r.ok()) return {false, std::string(r.status().message())};
          const double want = oracle::GridUniverse::Smooth(expected, beta);
          worst = std::max(worst, std::abs(r->smooth - want));
          ++checked;
        }
      }
    }
    Detail(std::string(StatisticName(statistic)) + " done");
  }
  return {worst <= 1e-9,
          absl::StrFormat("%d (sample, beta, statistic) cases, max |S - "
                          "oracle| = %.3g",
                          checked, worst)};
}

// ---------------------------------------------------------------------------
// 2

double ExhaustiveVariance(const std::vector<double>& v, int k, bool maximize) {
  const int n = static_cast<int>(v.size());
  double best = maximize ? -1.0 : std::numeric_limits<double>::infinity();
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

Outcome SubsetExactness() {
  std::mt19937_64 gen(20260101);
  std::uniform_real_distribution<double> u(0, 1);
  int cases = 0, mismatches = 0;
  for (int sample = 0; sample < 50; ++sample) {
    for (int n = 2; n <= 12; ++n) {
      std::vector<double> v(n);
      // Alternate continuous and tie-heavy samples.
      for (double& x : v) x = sample % 2 ? u(gen) : std::round(u(gen) * 5) / 5;
      const BoundedSample s = Sample(v, 0, 1);
      const std::vector<double> sorted(s.values().begin(), s.values().end());
      for (int k = 1; k < n; ++k) {
        const VarianceSubset hi = *KMaxVarianceSubset(s, k);
        const VarianceSubset lo = *KMinVarianceSubset(s, k);
        std::vector<double> hi_pick, lo_pick;
        for (int i : hi.indices) hi_pick.push_back(sorted[i]);
        for (int i : lo.indices) lo_pick.push_back(sorted[i]);
        const bool ok =
            std::abs(hi.variance - ExhaustiveVariance(sorted, k, true)) <=
                1e-12 &&
            std::abs(lo.variance - ExhaustiveVariance(sorted, k, false)) <=
                1e-12 &&
            static_cast<int>(hi_pick.size()) == k &&
            static_cast<int>(lo_pick.size()) == k &&
            std::abs(oracle::PopulationVariance(hi_pick) - hi.variance) <=
                1e-12 &&
            std::abs(oracle::PopulationVariance(lo_pick) - lo.variance) <=
                1e-12;
        mismatches += !ok;
        cases += 2;
      }
    }
  }
  return {mismatches == 0,
          absl::StrFormat("%d subset queries (n <= 12, all k), %d mismatches",
                          cases, mismatches)};
}

// ---------------------------------------------------------------------------
// 3

Outcome SmoothBoundProperties() {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(0, 1);
  int violations = 0, checks = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 4 + static_cast<int>(gen() % 37);
    const double lo = -5 + 10 * u(gen);
    const double hi = lo + 0.1 + 20 * u(gen);
    const double beta = std::exp(std::log(0.01) + u(gen) * std::log(200.0));
    std::vector<double> x(n);
    for (double& v : x) v = lo + (hi - lo) * u(gen) * u(gen);
    std::vector<double> y = x;
    y[gen() % n] = gen() % 3 == 0 ? (gen() % 2 ? lo : hi)
                                  : lo + (hi - lo) * u(gen);
    const BoundedSample sx = Sample(x, lo, hi), sy = Sample(y, lo, hi);
    const int m = 1 + static_cast<int>(gen() % ((n - 2) / 2));
    struct Pair {
      double sx, sy, lx, ly;
    };
    const std::vector<Pair> pairs = {
        {SmoothSensitivityMean(sx, beta)->smooth,
         SmoothSensitivityMean(sy, beta)->smooth, LocalSensitivityMean(sx),
         LocalSensitivityMean(sy)},
        {SmoothSensitivityVariance(sx, beta)->smooth,
         SmoothSensitivityVariance(sy, beta)->smooth,
         *LocalSensitivityVariance(sx), *LocalSensitivityVariance(sy)},
        {SmoothSensitivityTrimmedMean(sx, {m}, beta)->smooth,
         SmoothSensitivityTrimmedMean(sy, {m}, beta)->smooth,
         *LocalSensitivityTrimmedMean(sx, {m}),
         *LocalSensitivityTrimmedMean(sy, {m})},
    };
    for (const Pair& p : pairs) {
      const double slack = 1e-12 * std::max(1.0, p.sx + p.sy);
      violations += p.sx > std::exp(beta) * p.sy + slack;
      violations += p.sy > std::exp(beta) * p.sx + slack;
      violations += p.sx < p.lx - slack;
      violations += p.sy < p.ly - slack;
      checks += 4;
    }
  }
  return {violations == 0,
          absl::StrFormat("1000 neighbouring pairs, 3 statistics: %d checks, "
                          "%d violations",
                          checks, violations)};
}

// ---------------------------------------------------------------------------
// 4

Outcome BudgetAccounting() {
  std::mt19937_64 gen(4242);
  std::uniform_real_distribution<double> u(0, 1);
  int exact = 0, runs = 0;
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int num = static_cast<int>(gen() % 4);
    const int cat = (num == 0) + static_cast<int>(gen() % 4);
    std::vector<AttributeSpec> attrs;
    for (int i = 0; i < num; ++i) {
      attrs.push_back(*AttributeSpec::Numeric(absl::StrCat("n", i), 0, 10));
    }
    for (int i = 0; i < cat; ++i) {
      attrs.push_back(*AttributeSpec::Categorical(absl::StrCat("c", i),
                                                  {"a", "b", "c"}));
    }
    const int classes = 2 + static_cast<int>(gen() % 2);
    std::vector<std::string> labels;
    for (int c = 0; c < classes; ++c) labels.push_back(absl::StrCat("k", c));
    auto schema = std::make_shared<const DatasetSchema>(
        *DatasetSchema::Create(std::move(attrs), {"y", labels}));
    const int rows = 12 * classes + static_cast<int>(gen() % 40);
    std::vector<double> cells;
    std::vector<int> y;
    for (int r = 0; r < rows; ++r) {
      y.push_back(r % classes);
      for (int a = 0; a < num + cat; ++a) {
        cells.push_back(a < num ? 10 * u(gen) : static_cast<double>(gen() % 3));
      }
    }
    const Dataset d = *Dataset::FromEncoded(schema, cells, y);
    FitConfig config;
    config.mode = std::array{FitMode::kSmooth, FitMode::kGlobal,
                             FitMode::kBunSteinke}[t % 3];
    config.mechanism.noise =
        t % 5 == 0 ? NoiseFamily::kGaussian : NoiseFamily::kCauchy;
    config.mechanism.delta = t % 5 == 0 ? 1.0 / rows : 0.0;
    config.mechanism.beta_mode = t % 2 ? BetaMode::kPaper : BetaMode::kStrict;
    config.epsilon = std::exp(std::log(0.01) + u(gen) * std::log(1e4));
    config.numeric_weight = Rational(1 + static_cast<int64_t>(gen() % 6),
                                     1 + static_cast<int64_t>(gen() % 4));
    config.seed = gen();
    absl::StatusOr<NaiveBayesModel> m = FitDp(d, config);
    if (!m.ok()) return {false, std::string(m.status().message())};
    ++runs;
    exact += m->budget->TotalShare() == Rational(1);
    worst = std::max(worst, std::abs(m->budget->SpentEpsilon() - config.epsilon) /
                                config.epsilon);
  }
  return {exact == runs && worst <= 1e-12,
          absl::StrFormat("%d/%d ledgers with exact share sum 1; max relative "
                          "float error of spent epsilon %.3g",
                          exact, runs, worst)};
}

// ---------------------------------------------------------------------------
// 5

ExperimentSpec CvSpec(std::vector<MethodSpec> methods,
                      std::vector<double> epsilons, int repetitions,
                      uint64_t seed) {
  ExperimentSpec spec;
  spec.methods = std::move(methods);
  spec.epsilons = std::move(epsilons);
  spec.folds = 10;
  spec.repetitions = repetitions;
  spec.seed = seed;
  spec.threads =
      std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  return spec;
}

// One-sided paired comparison of two cells over repetition means.
bool Compare(const ExperimentResult& r, const std::string& label,
             const CellResult& a, const CellResult& b) {
  const PairedTest t = *PairedTTest(a.repetition_means, b.repetition_means);
  const bool win = t.p_one_sided < 0.05;
  Detail(absl::StrFormat(
      "%s eps=%g: %s %.4f vs %s %.4f, diff %+.4f, t=%.2f, p=%.3g -> %s",
      r.dataset, a.epsilon, label, a.mean_accuracy, b.method.method,
      b.mean_accuracy, t.mean_difference, t.t, t.p_one_sided,
      win ? "significant" : "not significant"));
  return win;
}

Outcome SmoothBeatsGlobal() {
  const std::vector<double> eps = {0.5, 1, 2};
  bool all = true;
  int datasets = 0;
  for (const char* name : {"seeds", "glass"}) {
    std::optional<Dataset> d = LoadUci(name);
    if (!d) {
      Detail(absl::StrCat(name, ": ", kSeedsMissing));
      all = false;
      continue;
    }
    ++datasets;
    ExperimentSpec spec = CvSpec(
        {{"plain"},
         {"dp_smooth", NoiseFamily::kCauchy, BetaMode::kPaper},
         {"dp_global", NoiseFamily::kLaplace}},
        eps, 200, 5);
    spec.dataset_name = name;
    absl::StatusOr<ExperimentResult> r = RunOnDataset(*d, spec);
    if (!r.ok()) return {false, std::string(r.status().message())};
    Detail(absl::StrFormat("%s plain %.4f", name, r->cells[0].mean_accuracy));
    for (double e : eps) {
      all &= Compare(*r, "dp_smooth",
                     *r->Find("dp_smooth", e, NoiseFamily::kCauchy),
                     *r->Find("dp_global", e, NoiseFamily::kLaplace));
    }
  }
  return {all, absl::StrFormat("dp_smooth (paper beta, Cauchy) vs dp_global, "
                               "200 x 10-fold CV on %d of 2 datasets",
                               datasets)};
}

// ---------------------------------------------------------------------------
// 6

Outcome CategoricalDegeneracy() {
  std::optional<Dataset> d;
  for (const std::string& path :
       {DataPath("uci/mushroom"), DataPath("fixtures/categorical")}) {
    if (!std::filesystem::exists(path + ".csv")) continue;
    auto schema = std::make_shared<const DatasetSchema>(
        *LoadSchema(path + ".schema.json"));
    d = *LoadCsvDataset(path + ".csv", schema);
    Detail(absl::StrCat("data: ", path, ".csv (", d->size(), " rows)"));
    break;
  }
  if (!d) return {false, "no categorical dataset found"};
  int identical = 0, runs = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    for (double eps : {0.1, 1.0, 10.0}) {
      FitConfig config;
      config.epsilon = eps;
      config.seed = seed;
      config.mode = FitMode::kSmooth;
      const NaiveBayesModel smooth = *FitDp(*d, config);
      config.mode = FitMode::kGlobal;
      const NaiveBayesModel global = *FitDp(*d, config);
      bool same = smooth.class_counts == global.class_counts &&
                  smooth.priors == global.priors;
      for (size_t a = 0; a < smooth.categorical.size(); ++a) {
        for (size_t c = 0; c < smooth.categorical[a].size(); ++c) {
          same &= smooth.categorical[a][c].counts ==
                      global.categorical[a][c].counts &&
                  smooth.categorical[a][c].probabilities ==
                      global.categorical[a][c].probabilities;
        }
      }
      identical += same;
      ++runs;
    }
  }
  return {identical == runs,
          absl::StrFormat("%d/%d (seed, eps) fits give bitwise-identical "
                          "smooth and global models",
                          identical, runs)};
}

// ---------------------------------------------------------------------------
// 7

ExperimentResult ApproxVersusPure(const Dataset& d, const std::string& name) {
  ExperimentSpec spec = CvSpec(
      {{"dp_smooth", NoiseFamily::kGaussian, BetaMode::kStrict},
       {"dp_smooth", NoiseFamily::kCauchy, BetaMode::kPaper},
       {"dp_smooth", NoiseFamily::kCauchy, BetaMode::kStrict}},
      {0.5, 1, 2}, 200, 7);
  spec.deltas = {DeltaPreset::kInverseN};
  spec.dataset_name = name;
  return *RunOnDataset(d, spec);
}

bool ReportApprox(const ExperimentResult& r, double fixed_eps) {
  bool ok = true;
  for (const CellResult& g : r.cells) {
    if (g.method.noise != NoiseFamily::kGaussian) continue;
    for (const CellResult& c : r.cells) {
      if (c.method.noise != NoiseFamily::kCauchy || c.epsilon != g.epsilon) {
        continue;
      }
      const bool ge = g.mean_accuracy >= c.mean_accuracy;
      Detail(absl::StrFormat(
          "%s eps=%g: gaussian(delta=%.3g) %.4f vs cauchy(%s) %.4f -> %s",
          r.dataset, g.epsilon, g.delta, g.mean_accuracy,
          std::string(BetaModeName(c.method.beta_mode)), c.mean_accuracy,
          ge ? ">=" : "<"));
      if (g.epsilon == fixed_eps) ok &= ge;
    }
  }
  return ok;
}

Outcome ApproximateDpOrdering() {
  std::optional<Dataset> glass = LoadUci("glass");
  if (glass) {
    Detail("supplementary (not the criterion's dataset):");
    ReportApprox(ApproxVersusPure(*glass, "glass"), 1.0);
  }
  std::optional<Dataset> seeds = LoadUci("seeds");
  if (!seeds) return {false, kSeedsMissing};
  const bool ok = ReportApprox(ApproxVersusPure(*seeds, "seeds"), 1.0);
  return {ok, "seeds eps=1, 200 x 10-fold CV: gaussian(1/n) >= cauchy"};
}

// ---------------------------------------------------------------------------
// 8

double MedianDeviation(const Dataset& d, BetaMode mode) {
  const NaiveBayesModel plain = *FitPlain(d);
  std::vector<double> deviations;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    FitConfig config;
    config.mode = FitMode::kSmooth;
    config.epsilon = 1e6;
    config.mechanism.beta_mode = mode;
    config.seed = seed;
    deviations.push_back(MaxParameterDeviation(plain, *FitDp(d, config)));
  }
  std::nth_element(deviations.begin(), deviations.begin() + 25,
                   deviations.end());
  return deviations[25];
}

Outcome Convergence() {
  std::optional<Dataset> glass = LoadUci("glass");
  if (glass) {
    Detail("supplementary (not the criterion's dataset):");
    for (BetaMode mode : {BetaMode::kPaper, BetaMode::kStrict}) {
      Detail(absl::StrFormat("glass eps=1e6 beta=%s: median max deviation %.3g",
                             std::string(BetaModeName(mode)), MedianDeviation(*glass, mode)));
    }
  }
  std::optional<Dataset> seeds = LoadUci("seeds");
  if (!seeds) return {false, kSeedsMissing};
  bool ok = true;
  for (BetaMode mode : {BetaMode::kPaper, BetaMode::kStrict}) {
    const double dev = MedianDeviation(*seeds, mode);
    Detail(absl::StrFormat("seeds eps=1e6 beta=%s: median max deviation %.3g",
                           std::string(BetaModeName(mode)), dev));
    ok &= dev < 1e-3;
  }
  return {ok, "seeds, 50 seeds: median max parameter deviation < 1e-3"};
}

// ---------------------------------------------------------------------------
// 9

Outcome RuntimeShape() {
  SyntheticSpec shape;
  shape.numeric = 1;
  shape.categorical = 1;
  shape.seed = 9;
  absl::StatusOr<std::vector<RuntimePoint>> points =
      BenchmarkRuntime({5000, 20000, 80000}, shape, 1.0, 3);
  if (!points.ok()) return {false, std::string(points.status().message())};
  bool ok = true;
  for (size_t i = 0; i < points->size(); ++i) {
    const RuntimePoint& p = (*points)[i];
    std::string growth;
    if (i > 0) {
      const RuntimePoint& q = (*points)[i - 1];
      const double smooth = p.smooth_seconds / q.smooth_seconds;
      const double global = p.global_seconds / q.global_seconds;
      ok &= smooth >= 8 && global < 8;
      growth = absl::StrFormat(", growth smooth x%.1f global x%.1f", smooth,
                               global);
    }
    ok &= p.smooth_seconds >= p.global_seconds;
    Detail(absl::StrFormat("n=%d: global %.4fs smooth %.4fs%s", p.rows,
                           p.global_seconds, p.smooth_seconds, growth));
  }
  return {ok, "smooth grows >= 8x and global < 8x per 4x rows; smooth >= global"};
}

// ---------------------------------------------------------------------------
// 10

Outcome NoiseCalibration() {
  const double lambda = 1.3;
  const int draws = 1000000;
  Rng rng(DeriveSeed(10, {0}));
  NoiseSpec cauchy{NoiseFamily::kCauchy, 0.0, lambda, {}};
  NoiseSpec laplace{NoiseFamily::kLaplace, 0.0, lambda, {}};
  std::vector<double> c(draws);
  double sum = 0, sum2 = 0;
  for (int i = 0; i < draws; ++i) c[i] = Sample(cauchy, rng);
  for (int i = 0; i < draws; ++i) {
    const double x = Sample(laplace, rng);
    sum += x;
    sum2 += x * x;
  }
  auto quantile = [&c](double q) {
    const size_t k = static_cast<size_t>(q * (c.size() - 1));
    std::nth_element(c.begin(), c.begin() + k, c.end());
    return c[k];
  };
  const double iqr = quantile(0.75) - quantile(0.25);
  const double mean = sum / draws;
  const double sd = std::sqrt(sum2 / draws - mean * mean);
  const double iqr_err = std::abs(iqr / (2 * lambda) - 1);
  const double sd_err = std::abs(sd / (std::numbers::sqrt2 * lambda) - 1);
  Detail(absl::StrFormat("cauchy IQR %.5f (2 lambda %.5f, rel err %.4f)", iqr,
                         2 * lambda, iqr_err));
  Detail(absl::StrFormat("laplace std %.5f (sqrt2 lambda %.5f, rel err %.4f)",
                         sd, std::numbers::sqrt2 * lambda, sd_err));
  return {iqr_err < 0.02 && sd_err < 0.02,
          "1e6 draws each, relative errors within 2%"};
}

struct Criterion {
  int number;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace dpnb

int main(int argc, char** argv) {
  using dpnb::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", dpnb::OracleEquivalence},
      {2, "subset exactness", dpnb::SubsetExactness},
      {3, "smooth bound properties", dpnb::SmoothBoundProperties},
      {4, "budget accounting", dpnb::BudgetAccounting},
      {5, "smooth beats global", dpnb::SmoothBeatsGlobal},
      {6, "categorical degeneracy", dpnb::CategoricalDegeneracy},
      {7, "approximate-DP ordering", dpnb::ApproximateDpOrdering},
      {8, "convergence", dpnb::Convergence},
      {9, "runtime shape", dpnb::RuntimeShape},
      {10, "noise calibration", dpnb::NoiseCalibration},
  };
  CLI::App app{"dpnb acceptance checks"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Criterion numbers (default: all)")
      ->check(CLI::Range(1, static_cast<int>(criteria.size())));
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.number) ==
            selected.end()) {
      continue;
    }
    const dpnb::Outcome o = c.run();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.number
              << " (" << c.name << "): " << o.summary << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
