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

#include <algorithm>
#include <stdexcept>

#include "riskgate/bounds.h"

namespace riskgate {

EmpiricalFailure ComputeEcfr(std::span<const ScoredRecord> records, double t) {
  EmpiricalFailure out;
  for (const ScoredRecord& r : records) {
    if (r.uncertainty() <= t) {
      ++out.m_hat;
      if (r.failure()) ++out.w_hat;
    }
  }
  if (out.m_hat > 0) {
    out.r_hat = static_cast<double>(out.w_hat) / static_cast<double>(out.m_hat);
  }
  return out;
}

std::vector<double> CandidateGrid(std::span<const ScoredRecord> records) {
  std::vector<double> grid;
  grid.reserve(records.size());
  for (const ScoredRecord& r : records) grid.push_back(r.uncertainty());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

BoundCurve BuildCurve(std::span<const ScoredRecord> records, double delta,
                      BoundMethod method) {
  if (records.empty()) {
    throw std::invalid_argument("calibration set is empty");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1)");
  }
  std::vector<const ScoredRecord*> sorted;
  sorted.reserve(records.size());
  for (const ScoredRecord& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredRecord* a, const ScoredRecord* b) { return *a < *b; });

  BoundCurve curve;
  std::int64_t m = 0;
  std::int64_t w = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    ++m;
    if (sorted[i]->failure()) ++w;
    const double t = sorted[i]->uncertainty();
    // Close the grid entry once every record tied at t has been counted.
    if (i + 1 < sorted.size() && sorted[i + 1]->uncertainty() == t) continue;
    CurveEntry entry;
    entry.t = t;
    entry.m_hat = m;
    entry.w_hat = w;
    entry.r_hat = static_cast<double>(w) / static_cast<double>(m);
    entry.upper = UpperBound({w, m, delta}, method);
    curve.entries.push_back(entry);
  }
  return curve;
}

std::optional<std::size_t> SelectEntry(const BoundCurve& curve, double alpha,
                                       SelectionRule rule) {
  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < curve.entries.size(); ++i) {
    if (curve.entries[i].upper <= alpha) {
      chosen = i;
    } else if (rule == SelectionRule::kStrictPrefix) {
      break;
    }
  }
  return chosen;
}

std::optional<double> SelectThreshold(const BoundCurve& curve, double alpha,
                                      SelectionRule rule) {
  const auto index = SelectEntry(curve, alpha, rule);
  if (!index) return std::nullopt;
  return curve.entries[*index].t;
}

CalibrationOutcome Calibrate(std::span<const ScoredRecord> records,
                             const RiskConfig& config) {
  config.Validate();
  CalibrationOutcome out;
  out.config = config;
  out.curve = BuildCurve(records, config.delta, config.bound_method);
  if (const auto index = SelectEntry(out.curve, config.alpha, config.selection)) {
    const CurveEntry& e = out.curve.entries[*index];
    out.threshold = e.t;
    out.selected_count_cal = e.m_hat;
    out.bound_at_threshold = e.upper;
  }
  return out;
}

double UpperBoundOrVacuous(std::int64_t w, std::int64_t m, double delta,
                           BoundMethod method) {
  if (m == 0) return 1.0;
  return UpperBound({w, m, delta}, method);
}

}  // namespace riskgate
