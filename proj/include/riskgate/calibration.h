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

#ifndef RISKGATE_CALIBRATION_H_
#define RISKGATE_CALIBRATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "riskgate/records.h"

namespace riskgate {

// Selection statistics at a threshold t: m_hat records with u <= t, w_hat of
// them failures. r_hat is absent when nothing is selected.
struct EmpiricalFailure {
  std::int64_t m_hat = 0;
  std::int64_t w_hat = 0;
  std::optional<double> r_hat;
};

EmpiricalFailure ComputeEcfr(std::span<const ScoredRecord> records, double t);

struct CurveEntry {
  double t = 0.0;
  std::int64_t m_hat = 0;
  std::int64_t w_hat = 0;
  double r_hat = 0.0;
  double upper = 1.0;

  bool operator==(const CurveEntry&) const = default;
};

// One entry per distinct calibration uncertainty, ascending in t.
struct BoundCurve {
  std::vector<CurveEntry> entries;

  bool operator==(const BoundCurve&) const = default;
};

// Sorted distinct uncertainties of `records`.
std::vector<double> CandidateGrid(std::span<const ScoredRecord> records);

// Single ascending sweep over the sorted records, one bound per grid value.
// Throws std::invalid_argument on empty input or delta outside (0, 1).
BoundCurve BuildCurve(std::span<const ScoredRecord> records, double delta,
                      BoundMethod method);

// Index of the selected entry, or nullopt to abstain on everything.
std::optional<std::size_t> SelectEntry(const BoundCurve& curve, double alpha,
                                       SelectionRule rule);

std::optional<double> SelectThreshold(const BoundCurve& curve, double alpha,
                                      SelectionRule rule);

struct CalibrationOutcome {
  std::optional<double> threshold;
  BoundCurve curve;
  RiskConfig config;
  std::int64_t selected_count_cal = 0;
  std::optional<double> bound_at_threshold;
};

// Builds the curve with config.delta / config.bound_method and picks the
// threshold for config.alpha under config.selection.
CalibrationOutcome Calibrate(std::span<const ScoredRecord> records,
                             const RiskConfig& config);

// Bound at an arbitrary (w, m) with the convention that m = 0 certifies
// nothing and yields 1.
double UpperBoundOrVacuous(std::int64_t w, std::int64_t m, double delta,
                           BoundMethod method);

}  // namespace riskgate

#endif  // RISKGATE_CALIBRATION_H_
