// Copyright 2026 The riskgate Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "riskgate/calibration.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "riskgate/bounds.h"
#include "riskgate/evaluation.h"
#include "riskgate/random.h"

namespace riskgate {
namespace {

std::vector<ScoredRecord> Records(
    const std::vector<std::pair<double, int>>& items) {
  std::vector<ScoredRecord> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    out.emplace_back("r" + std::to_string(i), items[i].first, items[i].second);
  }
  return out;
}

BoundCurve CurveFromUppers(const std::vector<double>& ts,
                           const std::vector<double>& uppers) {
  BoundCurve curve;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CurveEntry e;
    e.t = ts[i];
    e.m_hat = static_cast<std::int64_t>(i + 1);
    e.upper = uppers[i];
    curve.entries.push_back(e);
  }
  return curve;
}

// Orders absent below every real threshold.
bool NotAbove(std::optional<double> a, std::optional<double> b) {
  if (!a) return true;
  if (!b) return false;
  return *a <= *b;
}

TEST(ComputeEcfr, Examples) {
  const auto recs = Records({{0.1, 1}, {0.2, 0}, {0.9, 1}});
  const auto mid = ComputeEcfr(recs, 0.5);
  EXPECT_EQ(mid.m_hat, 2);
  EXPECT_EQ(mid.w_hat, 1);
  EXPECT_EQ(mid.r_hat, 0.5);

  const auto none = ComputeEcfr(recs, 0.05);
  EXPECT_EQ(none.m_hat, 0);
  EXPECT_EQ(none.w_hat, 0);
  EXPECT_FALSE(none.r_hat.has_value());

  const auto all = ComputeEcfr(recs, 1.0);
  EXPECT_EQ(all.m_hat, 3);
  EXPECT_EQ(all.w_hat, 1);
  EXPECT_DOUBLE_EQ(*all.r_hat, 1.0 / 3.0);
}

TEST(CandidateGrid, SortedDistinctUncertainties) {
  const auto recs = Records({{0.7, 1}, {0.2, 0}, {0.7, 0}, {0.1, 1}, {0.2, 1}});
  EXPECT_EQ(CandidateGrid(recs), (std::vector<double>{0.1, 0.2, 0.7}));
}

TEST(BuildCurve, Examples) {
  const auto fail = BuildCurve(Records({{0.4, 0}}), 0.05, BoundMethod::kClopperPearson);
  ASSERT_EQ(fail.entries.size(), 1u);
  EXPECT_EQ(fail.entries[0], (CurveEntry{0.4, 1, 1, 1.0, 1.0}));

  const auto adm = BuildCurve(Records({{0.4, 1}}), 0.05, BoundMethod::kClopperPearson);
  ASSERT_EQ(adm.entries.size(), 1u);
  EXPECT_NEAR(adm.entries[0].upper, 0.95, 1e-10);

  const auto two = BuildCurve(Records({{0.1, 1}, {0.2, 1}}), 0.05,
                              BoundMethod::kClopperPearson);
  ASSERT_EQ(two.entries.size(), 2u);
  EXPECT_NEAR(two.entries[0].upper, 0.95, 1e-10);
  EXPECT_NEAR(two.entries[1].upper, 1.0 - std::sqrt(0.05), 1e-10);
}

TEST(BuildCurve, TiesFormOneEntry) {
  const auto curve = BuildCurve(Records({{0.3, 0}, {0.3, 1}, {0.3, 1}, {0.6, 1}}),
                                0.05, BoundMethod::kClopperPearson);
  ASSERT_EQ(curve.entries.size(), 2u);
  EXPECT_EQ(curve.entries[0].m_hat, 3);
  EXPECT_EQ(curve.entries[0].w_hat, 1);
  EXPECT_EQ(curve.entries[1].m_hat, 4);
}

TEST(BuildCurve, RejectsBadInput) {
  EXPECT_THROW(BuildCurve({}, 0.05, BoundMethod::kClopperPearson),
               std::invalid_argument);
  EXPECT_THROW(BuildCurve(Records({{0.1, 1}}), 0.0, BoundMethod::kClopperPearson),
               std::invalid_argument);
  EXPECT_THROW(BuildCurve(Records({{0.1, 1}}), 1.0, BoundMethod::kHoeffding),
               std::invalid_argument);
}

TEST(SelectThreshold, StrictPrefixExamples) {
  const auto rule = SelectionRule::kStrictPrefix;
  EXPECT_EQ(SelectThreshold(CurveFromUppers({0.2, 0.5, 0.9}, {0.04, 0.08, 0.12}),
                            0.1, rule),
            0.5);
  EXPECT_EQ(SelectThreshold(CurveFromUppers({0.2, 0.5}, {0.15, 0.05}), 0.1, rule),
            std::nullopt);
  EXPECT_EQ(SelectThreshold(CurveFromUppers({0.2, 0.5, 0.9}, {0.05, 0.12, 0.09}),
                            0.1, rule),
            0.2);
}

TEST(SelectThreshold, LargestValidExamples) {
  const auto rule = SelectionRule::kLargestValid;
  EXPECT_EQ(SelectThreshold(CurveFromUppers({0.2, 0.5, 0.9}, {0.04, 0.08, 0.12}),
                            0.1, rule),
            0.5);
  EXPECT_EQ(SelectThreshold(CurveFromUppers({0.2, 0.5}, {0.15, 0.05}), 0.1, rule),
            0.5);
  EXPECT_EQ(SelectThreshold(CurveFromUppers({0.2, 0.5, 0.9}, {0.05, 0.12, 0.09}),
                            0.1, rule),
            0.9);
  EXPECT_EQ(SelectThreshold(CurveFromUppers({0.2, 0.5}, {0.15, 0.11}), 0.1, rule),
            std::nullopt);
}

TEST(SelectThreshold, ComparisonIsInclusive) {
  for (auto rule : {SelectionRule::kLargestValid, SelectionRule::kStrictPrefix}) {
    EXPECT_EQ(SelectThreshold(CurveFromUppers({0.3}, {0.1}), 0.1, rule), 0.3);
  }
}

TEST(Calibrate, AllAdmissible) {
  std::vector<std::pair<double, int>> items;
  for (int i = 0; i < 100; ++i) items.push_back({0.005 + 0.01 * i, 1});
  const auto recs = Records(items);
  RiskConfig config;
  config.alpha = 0.1;
  config.delta = 0.05;
  const auto out = Calibrate(recs, config);
  ASSERT_TRUE(out.threshold.has_value());
  EXPECT_EQ(*out.threshold, items.back().first);
  EXPECT_EQ(out.selected_count_cal, 100);
  EXPECT_NEAR(*out.bound_at_threshold, 1.0 - std::pow(0.05, 0.01), 1e-10);
  EXPECT_LT(*out.bound_at_threshold, 0.1);
  EXPECT_EQ(out.config, config);

  // The literal prefix rule abstains: the first entry has m_hat = 1.
  config.selection = SelectionRule::kStrictPrefix;
  EXPECT_FALSE(Calibrate(recs, config).threshold.has_value());
}

TEST(Calibrate, AllFailuresAbstain) {
  std::vector<std::pair<double, int>> items;
  for (int i = 0; i < 100; ++i) items.push_back({0.01 * i, 0});
  for (auto method : {BoundMethod::kClopperPearson, BoundMethod::kHoeffding}) {
    for (auto rule : {SelectionRule::kLargestValid, SelectionRule::kStrictPrefix}) {
      RiskConfig config;
      config.bound_method = method;
      config.selection = rule;
      const auto out = Calibrate(Records(items), config);
      EXPECT_FALSE(out.threshold.has_value());
      EXPECT_FALSE(out.bound_at_threshold.has_value());
      EXPECT_EQ(out.selected_count_cal, 0);
    }
  }
}

// Independent re-implementation: recount every prefix from scratch and bound
// it through the incomplete beta inversion.
std::optional<double> BruteForceThreshold(const std::vector<ScoredRecord>& recs,
                                          double alpha, double delta) {
  std::optional<double> best;
  for (const ScoredRecord& candidate : recs) {
    const double t = candidate.uncertainty();
    std::int64_t m = 0;
    std::int64_t w = 0;
    for (const ScoredRecord& r : recs) {
      if (r.uncertainty() <= t) {
        ++m;
        w += r.failure() ? 1 : 0;
      }
    }
    const double upper = BetaInvUpper(w, m, delta);
    EXPECT_GT(std::abs(upper - alpha), 1e-8) << "oracle too close to alpha";
    if (upper <= alpha && (!best || t > *best)) best = t;
  }
  return best;
}

TEST(Calibrate, MatchesBruteForceScanOnLinearData) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto recs = GeneratePopulation(400, SyntheticModel::Linear(), seed);
    for (double alpha : {0.05, 0.1, 0.2, 0.3}) {
      RiskConfig config;
      config.alpha = alpha;
      config.delta = 0.05;
      const auto out = Calibrate(recs, config);
      EXPECT_EQ(out.threshold, BruteForceThreshold(recs, alpha, 0.05))
          << "seed=" << seed << " alpha=" << alpha;
      if (out.threshold) {
        const auto e = ComputeEcfr(recs, *out.threshold);
        EXPECT_EQ(out.selected_count_cal, e.m_hat);
      }
    }
  }
}

TEST(CalibrationProperties, AlphaMonotoneAndMethodDominance) {
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    const auto recs = GeneratePopulation(300, SyntheticModel::Linear(), seed);
    const auto cp = BuildCurve(recs, 0.1, BoundMethod::kClopperPearson);
    const auto hfd = BuildCurve(recs, 0.1, BoundMethod::kHoeffding);
    for (auto rule : {SelectionRule::kLargestValid, SelectionRule::kStrictPrefix}) {
      std::optional<double> previous;
      for (int k = 1; k < 100; ++k) {
        const double alpha = 0.01 * k;
        const auto current = SelectThreshold(cp, alpha, rule);
        EXPECT_TRUE(NotAbove(previous, current)) << "alpha=" << alpha;
        previous = current;
        EXPECT_TRUE(NotAbove(SelectThreshold(hfd, alpha, rule), current))
            << "alpha=" << alpha;
      }
    }
  }
}

TEST(CalibrationProperties, CurveCounters) {
  CounterRng rng(5, 0, StreamPurpose::kTestSet);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<double, int>> items;
    const int n = 1 + static_cast<int>(rng.NextBelow(60));
    // Coarse values force ties.
    for (int i = 0; i < n; ++i) {
      items.push_back({static_cast<double>(rng.NextBelow(10)) / 10.0,
                       static_cast<int>(rng.NextBelow(2))});
    }
    const auto recs = Records(items);
    const auto curve = BuildCurve(recs, 0.05, BoundMethod::kClopperPearson);
    const auto grid = CandidateGrid(recs);
    ASSERT_EQ(curve.entries.size(), grid.size());
    std::int64_t prev_m = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const CurveEntry& e = curve.entries[i];
      EXPECT_EQ(e.t, grid[i]);
      std::int64_t multiplicity = 0;
      for (const auto& [u, label] : items) multiplicity += u == grid[i] ? 1 : 0;
      EXPECT_EQ(e.m_hat - prev_m, multiplicity);
      const auto ecfr = ComputeEcfr(recs, e.t);
      EXPECT_EQ(e.m_hat, ecfr.m_hat);
      EXPECT_EQ(e.w_hat, ecfr.w_hat);
      EXPECT_EQ(e.upper, UpperBound({e.w_hat, e.m_hat, 0.05},
                                    BoundMethod::kClopperPearson));
      prev_m = e.m_hat;
    }
    EXPECT_EQ(prev_m, n);
  }
}

TEST(CalibrationProperties, LargestValidInvariant) {
  for (std::uint64_t seed = 30; seed < 40; ++seed) {
    const auto recs = GeneratePopulation(500, SyntheticModel::Linear(), seed);
    RiskConfig config;
    config.alpha = 0.25;
    const auto out = Calibrate(recs, config);
    ASSERT_TRUE(out.threshold.has_value()) << "seed=" << seed;
    for (const CurveEntry& e : out.curve.entries) {
      if (e.t == *out.threshold) EXPECT_LE(e.upper, config.alpha);
      if (e.t > *out.threshold) EXPECT_GT(e.upper, config.alpha);
    }
  }
}

TEST(CalibrationProperties, StrictPrefixInvariant) {
  // A prefix of admissible records makes the strict rule select something.
  std::vector<std::pair<double, int>> items;
  for (int i = 0; i < 200; ++i) items.push_back({0.001 * i, 1});
  for (int i = 0; i < 200; ++i) items.push_back({0.5 + 0.001 * i, i % 3 == 0 ? 0 : 1});
  const auto recs = Records(items);
  const auto curve = BuildCurve(recs, 0.05, BoundMethod::kClopperPearson);
  // 0.96 admits the m_hat = 1 entry (upper 0.95) so the prefix is nonempty.
  const auto t = SelectThreshold(curve, 0.96, SelectionRule::kStrictPrefix);
  ASSERT_TRUE(t.has_value());
  for (const CurveEntry& e : curve.entries) {
    if (e.t <= *t) EXPECT_LE(e.upper, 0.96);
  }
}

TEST(CalibrationProperties, Deterministic) {
  const auto recs = GeneratePopulation(1000, SyntheticModel::Logistic(8, 0.5), 77);
  RiskConfig config;
  config.alpha = 0.2;
  const auto a = Calibrate(recs, config);
  const auto b = Calibrate(recs, config);
  EXPECT_EQ(a.threshold, b.threshold);
  EXPECT_EQ(a.curve, b.curve);
  EXPECT_EQ(a.bound_at_threshold, b.bound_at_threshold);
  EXPECT_EQ(a.selected_count_cal, b.selected_count_cal);
}

TEST(UpperBoundOrVacuous, EmptySelectionIsVacuous) {
  EXPECT_EQ(UpperBoundOrVacuous(0, 0, 0.05, BoundMethod::kClopperPearson), 1.0);
  EXPECT_EQ(UpperBoundOrVacuous(0, 0, 0.05, BoundMethod::kHoeffding), 1.0);
  EXPECT_NEAR(UpperBoundOrVacuous(0, 1, 0.05, BoundMethod::kClopperPearson), 0.95,
              1e-10);
}

// Conditioning on u <= t leaves failure indicators i.i.d. Bernoulli with mean
// equal to the true conditional failure rate. Selected records, in generation
// order, are cut into 10 equal position bins and compared to that mean.
TEST(BernoulliStructure, ChiSquaredAcrossPositions) {
  struct Case {
    SyntheticModel model;
    double t;
  };
  const Case cases[] = {{SyntheticModel::Linear(), 0.5},
                        {SyntheticModel::Linear(), 0.2},
                        {SyntheticModel::Logistic(10, 0.5), 0.6},
                        {SyntheticModel::Step(0.1, 0.7, 0.4), 0.8}};
  constexpr int kBins = 10;
  // Upper 1% points of chi-squared with 10 and 9 degrees of freedom.
  constexpr double kCritical10 = 23.209;
  constexpr double kCritical9 = 21.666;
  std::uint64_t seed = 100;
  for (const Case& c : cases) {
    const auto pop = GeneratePopulation(20000, c.model, seed++);
    std::vector<int> selected;
    for (const ScoredRecord& r : pop) {
      if (r.uncertainty() <= c.t) selected.push_back(r.failure() ? 1 : 0);
    }
    const std::size_t per_bin = selected.size() / kBins;
    ASSERT_GT(per_bin, 100u);
    const double q = TrueTcfr(c.model, c.t);
    double fit = 0.0;
    std::vector<double> fails(kBins, 0.0);
    for (int b = 0; b < kBins; ++b) {
      for (std::size_t i = b * per_bin; i < (b + 1) * per_bin; ++i) {
        fails[b] += selected[i];
      }
      const double expected_fail = q * per_bin;
      const double expected_ok = (1.0 - q) * per_bin;
      fit += std::pow(fails[b] - expected_fail, 2) / expected_fail +
             std::pow(per_bin - fails[b] - expected_ok, 2) / expected_ok;
    }
    EXPECT_LT(fit, kCritical10) << c.model.Describe() << " t=" << c.t;

    // Homogeneity against the pooled rate.
    double pooled = 0.0;
    for (double f : fails) pooled += f;
    pooled /= static_cast<double>(per_bin * kBins);
    double homogeneity = 0.0;
    for (double f : fails) {
      homogeneity += std::pow(f - pooled * per_bin, 2) / (pooled * per_bin) +
                     std::pow(f - pooled * per_bin, 2) / ((1.0 - pooled) * per_bin);
    }
    EXPECT_LT(homogeneity, kCritical9) << c.model.Describe() << " t=" << c.t;
  }
}

}  // namespace
}  // namespace riskgate
