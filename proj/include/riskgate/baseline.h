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

#ifndef RISKGATE_BASELINE_H_
#define RISKGATE_BASELINE_H_

#include <optional>
#include <span>
#include <vector>

#include "riskgate/records.h"

namespace riskgate {

// Score-based surrogate of conformal alignment. The alignment score of a
// record is s = -uncertainty; a trained alignment predictor is not modelled.
//
// p_j = (1 + #{i in C0 : s_i >= s_j}) / (1 + |C0|), with C0 the inadmissible
// calibration records. All p-values are 1 when C0 is empty. No tie
// randomization.
std::vector<double> ConformalPValues(std::span<const ScoredRecord> calibration,
                                     std::span<const ScoredRecord> test);

// Benjamini-Hochberg step-up: k* = max{k : p_(k) <= k alpha / n}; returns the
// ascending indices with p <= k* alpha / n.
std::vector<std::size_t> BhSelect(std::span<const double> p_values,
                                  double alpha);

struct BaselineTrial {
  std::optional<double> fdr;
  double power = 0.0;
  std::size_t n_selected = 0;
};

// p-values, BH selection and the same FDR / zeroed-power metrics as calibrated thresholding.
BaselineTrial CaTrial(std::span<const ScoredRecord> calibration,
                      std::span<const ScoredRecord> test, double alpha);

struct ComparisonRow {
  double alpha = 0.0;
  double coin_power = 0.0;
  double ca_power = 0.0;
  // Means over trials with a nonempty selection.
  std::optional<double> coin_fdr;
  std::optional<double> ca_fdr;

  bool operator==(const ComparisonRow&) const = default;
};

// Runs calibrated thresholding and the conformal/BH baseline on identical
// per-trial splits (SplitForTrial) for every alpha; config.alpha is ignored.
std::vector<ComparisonRow> CompareWithBaseline(
    std::span<const ScoredRecord> population, const RiskConfig& config,
    std::span<const double> alphas);

}  // namespace riskgate

#endif  // RISKGATE_BASELINE_H_
