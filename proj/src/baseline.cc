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

#include "riskgate/baseline.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "riskgate/calibration.h"
#include "riskgate/evaluation.h"

namespace riskgate {

std::vector<double> ConformalPValues(std::span<const ScoredRecord> calibration,
                                     std::span<const ScoredRecord> test) {
  // s_i >= s_j  <=>  u_i <= u_j, so count null uncertainties at or below u_j.
  std::vector<double> null_u;
  for (const ScoredRecord& r : calibration) {
    if (r.failure()) null_u.push_back(r.uncertainty());
  }
  std::sort(null_u.begin(), null_u.end());
  const double denom = 1.0 + static_cast<double>(null_u.size());
  std::vector<double> p;
  p.reserve(test.size());
  for (const ScoredRecord& r : test) {
    const auto exceed =
        std::upper_bound(null_u.begin(), null_u.end(), r.uncertainty()) -
        null_u.begin();
    p.push_back((1.0 + static_cast<double>(exceed)) / denom);
  }
  return p;
}

std::vector<std::size_t> BhSelect(std::span<const double> p_values,
                                  double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0,1)");
  }
  const std::size_t n = p_values.size();
  std::vector<double> sorted(p_values.begin(), p_values.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t k_star = 0;
  for (std::size_t k = n; k >= 1; --k) {
    if (sorted[k - 1] <= static_cast<double>(k) * alpha / static_cast<double>(n)) {
      k_star = k;
      break;
    }
  }
  std::vector<std::size_t> selected;
  if (k_star == 0) return selected;
  const double cutoff =
      static_cast<double>(k_star) * alpha / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (p_values[i] <= cutoff) selected.push_back(i);
  }
  return selected;
}

BaselineTrial CaTrial(std::span<const ScoredRecord> calibration,
                      std::span<const ScoredRecord> test, double alpha) {
  const std::vector<double> p = ConformalPValues(calibration, test);
  std::vector<ScoredRecord> selected;
  for (std::size_t i : BhSelect(p, alpha)) selected.push_back(test[i]);
  BaselineTrial out;
  out.n_selected = selected.size();
  out.fdr = TestFdr(selected);
  out.power = Power(selected, test, alpha);
  return out;
}

std::vector<ComparisonRow> CompareWithBaseline(
    std::span<const ScoredRecord> population, const RiskConfig& config,
    std::span<const double> alphas) {
  for (double alpha : alphas) {
    RiskConfig probe = config;
    probe.alpha = alpha;
    probe.Validate();
  }
  struct Accumulator {
    double power_sum = 0.0;
    double fdr_sum = 0.0;
    int fdr_count = 0;

    void Add(const std::optional<double>& fdr, double power) {
      power_sum += power;
      if (fdr) {
        fdr_sum += *fdr;
        ++fdr_count;
      }
    }
    std::optional<double> MeanFdr() const {
      if (fdr_count == 0) return std::nullopt;
      return fdr_sum / fdr_count;
    }
  };
  std::vector<Accumulator> coin(alphas.size());
  std::vector<Accumulator> ca(alphas.size());

  for (int trial = 0; trial < config.n_trials; ++trial) {
    const Split split = SplitForTrial(population, config, trial);
    const BoundCurve curve =
        BuildCurve(split.calibration, config.delta, config.bound_method);
    const std::vector<double> p = ConformalPValues(split.calibration, split.test);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      const auto threshold = SelectThreshold(curve, alphas[a], config.selection);
      const auto selected = ApplyThreshold(split.test, threshold);
      coin[a].Add(TestFdr(selected), Power(selected, split.test, alphas[a]));

      std::vector<ScoredRecord> ca_selected;
      for (std::size_t i : BhSelect(p, alphas[a])) {
        ca_selected.push_back(split.test[i]);
      }
      ca[a].Add(TestFdr(ca_selected), Power(ca_selected, split.test, alphas[a]));
    }
  }

  std::vector<ComparisonRow> rows;
  const double n = static_cast<double>(config.n_trials);
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    ComparisonRow row;
    row.alpha = alphas[a];
    row.coin_power = coin[a].power_sum / n;
    row.ca_power = ca[a].power_sum / n;
    row.coin_fdr = coin[a].MeanFdr();
    row.ca_fdr = ca[a].MeanFdr();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace riskgate
