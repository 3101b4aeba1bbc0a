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

#ifndef RISKGATE_EVALUATION_H_
#define RISKGATE_EVALUATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riskgate/records.h"

namespace riskgate {

// Synthetic population: u ~ Uniform[0, 1] and a failure with probability
// q(u) for a non-decreasing q. The TCFR R(t) = E[q(u) | u <= t] is known
// analytically (or by quadrature), which makes these models oracles for the
// calibration guarantee.
class SyntheticModel {
 public:
  enum class Kind { kLinear, kLogistic, kStep };

  // q(u) = u.
  static SyntheticModel Linear();
  // q(u) = 1 / (1 + exp(-slope (u - center))), slope >= 0.
  static SyntheticModel Logistic(double slope, double center);
  // q(u) = low for u < edge, high otherwise; 0 <= low <= high <= 1.
  static SyntheticModel Step(double low, double high, double edge);
  // "linear", "logistic:s=10,c=0.5", "step:a=0,b=1,c=0.5".
  static SyntheticModel Parse(const std::string& text);

  Kind kind() const { return kind_; }
  double slope() const { return p0_; }
  double center() const { return p1_; }
  double low() const { return p0_; }
  double high() const { return p1_; }
  double edge() const { return p2_; }
  double FailureProbability(double u) const;
  std::string Describe() const;

 private:
  SyntheticModel(Kind kind, double p0, double p1, double p2);
  Kind kind_;
  double p0_;  // logistic slope | step low
  double p1_;  // logistic center | step high
  double p2_;  // step edge
};

// Identical (n, model, seed) gives bit-identical output. Ids are "syn-NNNNNNN".
std::vector<ScoredRecord> GeneratePopulation(std::int64_t n,
                                             const SyntheticModel& model,
                                             std::uint64_t seed);

// R(t) = E[q(u) | u <= t] under the uniform uncertainty law. t >= 1 gives
// R(1); t == 0 gives q(0). Throws std::invalid_argument for t < 0.
double TrueTcfr(const SyntheticModel& model, double t);

// Records with u <= threshold, in input order; empty when threshold is absent.
std::vector<ScoredRecord> ApplyThreshold(std::span<const ScoredRecord> test,
                                         std::optional<double> threshold);

// Fraction of selected records that are failures; absent for an empty set.
std::optional<double> TestFdr(std::span<const ScoredRecord> selected);

// Selected admissible / admissible in `test`, zeroed when the selection's FDR
// exceeds alpha. Throws std::invalid_argument when `test` has no admissible
// record.
double Power(std::span<const ScoredRecord> selected,
             std::span<const ScoredRecord> test, double alpha);

struct Split {
  std::vector<ScoredRecord> calibration;
  std::vector<ScoredRecord> test;
};

// min(ceil(split_ratio * n), n - 1), and at least 1.
std::size_t CalibrationSize(std::size_t n, double split_ratio);

// Trial `trial` shuffles with the (seed, trial) substream and cuts at
// CalibrationSize.
Split SplitForTrial(std::span<const ScoredRecord> population,
                    const RiskConfig& config, int trial);

struct TrialResult {
  int trial_index = 0;
  std::optional<double> threshold;
  std::optional<double> test_fdr;
  double power = 0.0;
  std::int64_t n_selected = 0;

  bool operator==(const TrialResult&) const = default;
};

struct TrialReport {
  double alpha = 0.0;
  std::vector<TrialResult> per_trial;
  // Over trials with a defined FDR (nonempty selection).
  std::optional<double> mean_fdr;
  std::optional<double> std_fdr;
  double mean_power = 0.0;
  // Trials with a defined FDR above alpha, over all trials.
  double violation_fraction = 0.0;
  std::optional<double> mean_threshold;

  bool operator==(const TrialReport&) const = default;
};

TrialReport SummarizeTrials(double alpha, std::vector<TrialResult> per_trial);

TrialReport RunTrials(std::span<const ScoredRecord> population,
                      const RiskConfig& config);

// Same as calling RunTrials once per alpha (config.alpha is ignored), but
// each trial's split and bound curve are computed once and shared.
std::vector<TrialReport> RunTrialsSweep(std::span<const ScoredRecord> population,
                                        const RiskConfig& config,
                                        std::span<const double> alphas);

struct GuaranteeResult {
  double alpha = 0.0;
  int n_repeats = 0;
  double violation_fraction = 0.0;
  // Mean R(threshold) over repeats that produced a threshold.
  std::optional<double> mean_true_tcfr;
  int n_with_threshold = 0;
  // delta + 3 sqrt(delta (1 - delta) / n_repeats).
  double limit = 0.0;
  bool pass = false;

  bool operator==(const GuaranteeResult&) const = default;
};

double GuaranteeLimit(double delta, int n_repeats);

// Draws n_repeats fresh calibration sets of size cal_size, calibrates each and
// scores R(threshold) analytically. An absent threshold is not a violation.
// Requires n_repeats >= 100.
GuaranteeResult GuaranteeCheck(const SyntheticModel& model,
                               std::int64_t cal_size, int n_repeats,
                               const RiskConfig& config);

// One GuaranteeResult per alpha, sharing calibration sets and bound curves.
std::vector<GuaranteeResult> GuaranteeSweep(const SyntheticModel& model,
                                            std::int64_t cal_size,
                                            int n_repeats,
                                            const RiskConfig& config,
                                            std::span<const double> alphas);

}  // namespace riskgate

#endif  // RISKGATE_EVALUATION_H_
