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

#include "riskgate/evaluation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "riskgate/calibration.h"
#include "riskgate/random.h"

namespace riskgate {
namespace {

constexpr double kQuadratureTolerance = 1e-10;

std::map<std::string, double> ParseParams(const std::string& text) {
  std::map<std::string, double> params;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("malformed model parameter '" + item + "'");
    }
    std::size_t used = 0;
    const std::string value = item.substr(eq + 1);
    double x = 0.0;
    try {
      x = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) {
      throw std::invalid_argument("malformed model parameter '" + item + "'");
    }
    params[item.substr(0, eq)] = x;
    pos = end + 1;
  }
  return params;
}

double Param(const std::map<std::string, double>& params, const char* key,
             double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::optional<double> Mean(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

TrialResult EvaluateSelection(int trial, std::optional<double> threshold,
                              std::span<const ScoredRecord> test, double alpha) {
  TrialResult result;
  result.trial_index = trial;
  result.threshold = threshold;
  const std::vector<ScoredRecord> selected = ApplyThreshold(test, threshold);
  result.n_selected = static_cast<std::int64_t>(selected.size());
  result.test_fdr = TestFdr(selected);
  result.power = Power(selected, test, alpha);
  return result;
}

}  // namespace

SyntheticModel::SyntheticModel(Kind kind, double p0, double p1, double p2)
    : kind_(kind), p0_(p0), p1_(p1), p2_(p2) {}

SyntheticModel SyntheticModel::Linear() {
  return SyntheticModel(Kind::kLinear, 0.0, 0.0, 0.0);
}

SyntheticModel SyntheticModel::Logistic(double slope, double center) {
  if (!(slope >= 0.0) || !std::isfinite(slope) || !std::isfinite(center)) {
    throw std::invalid_argument("logistic slope must be finite and >= 0");
  }
  return SyntheticModel(Kind::kLogistic, slope, center, 0.0);
}

SyntheticModel SyntheticModel::Step(double low, double high, double edge) {
  if (!(low >= 0.0 && low <= high && high <= 1.0) || !std::isfinite(edge)) {
    throw std::invalid_argument("step model needs 0 <= a <= b <= 1");
  }
  return SyntheticModel(Kind::kStep, low, high, edge);
}

SyntheticModel SyntheticModel::Parse(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const auto params = colon == std::string::npos
                          ? std::map<std::string, double>{}
                          : ParseParams(text.substr(colon + 1));
  if (name == "linear") return Linear();
  if (name == "logistic") {
    return Logistic(Param(params, "s", 10.0), Param(params, "c", 0.5));
  }
  if (name == "step") {
    return Step(Param(params, "a", 0.0), Param(params, "b", 1.0),
                Param(params, "c", 0.5));
  }
  throw std::invalid_argument("unknown synthetic model '" + name + "'");
}

double SyntheticModel::FailureProbability(double u) const {
  switch (kind_) {
    case Kind::kLinear:
      return std::clamp(u, 0.0, 1.0);
    case Kind::kLogistic:
      return 1.0 / (1.0 + std::exp(-p0_ * (u - p1_)));
    case Kind::kStep:
      return u < p2_ ? p0_ : p1_;
  }
  return 0.0;
}

std::string SyntheticModel::Describe() const {
  char buf[96];
  switch (kind_) {
    case Kind::kLinear:
      return "linear";
    case Kind::kLogistic:
      std::snprintf(buf, sizeof(buf), "logistic:s=%.17g,c=%.17g", p0_, p1_);
      return buf;
    case Kind::kStep:
      std::snprintf(buf, sizeof(buf), "step:a=%.17g,b=%.17g,c=%.17g", p0_, p1_,
                    p2_);
      return buf;
  }
  return "";
}

std::vector<ScoredRecord> GeneratePopulation(std::int64_t n,
                                             const SyntheticModel& model,
                                             std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("population size must be >= 1");
  const CounterRng u_rng(seed, 0, StreamPurpose::kPopulationUncertainty);
  const CounterRng label_rng(seed, 0, StreamPurpose::kPopulationLabel);
  std::vector<ScoredRecord> out;
  out.reserve(static_cast<std::size_t>(n));
  char id[32];
  for (std::int64_t i = 0; i < n; ++i) {
    const auto counter = static_cast<std::uint64_t>(i);
    const double u = u_rng.UniformAt(counter);
    const bool fail = label_rng.UniformAt(counter) < model.FailureProbability(u);
    std::snprintf(id, sizeof(id), "syn-%07lld", static_cast<long long>(i));
    out.emplace_back(id, u, fail ? 0 : 1);
  }
  return out;
}

double TrueTcfr(const SyntheticModel& model, double t) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("threshold below the support of u");
  }
  t = std::min(t, 1.0);
  if (t == 0.0) return model.FailureProbability(0.0);
  switch (model.kind()) {
    case SyntheticModel::Kind::kLinear:
      return t / 2.0;
    case SyntheticModel::Kind::kStep: {
      // Length of [0, t] lying below the edge, where q = low.
      const double below = std::clamp(model.edge(), 0.0, t);
      return (model.low() * below + model.high() * (t - below)) / t;
    }
    case SyntheticModel::Kind::kLogistic: {
      auto q = [&model](double u) { return model.FailureProbability(u); };
      double error = 0.0;
      const double integral =
          boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
              q, 0.0, t, 30, kQuadratureTolerance, &error);
      return std::clamp(integral / t, 0.0, 1.0);
    }
  }
  return 0.0;
}

std::vector<ScoredRecord> ApplyThreshold(std::span<const ScoredRecord> test,
                                         std::optional<double> threshold) {
  std::vector<ScoredRecord> selected;
  if (!threshold) return selected;
  for (const ScoredRecord& r : test) {
    if (r.uncertainty() <= *threshold) selected.push_back(r);
  }
  return selected;
}

std::optional<double> TestFdr(std::span<const ScoredRecord> selected) {
  if (selected.empty()) return std::nullopt;
  const auto failures = std::count_if(selected.begin(), selected.end(),
                                      [](const auto& r) { return r.failure(); });
  return static_cast<double>(failures) / static_cast<double>(selected.size());
}

double Power(std::span<const ScoredRecord> selected,
             std::span<const ScoredRecord> test, double alpha) {
  const auto admissible_total = std::count_if(
      test.begin(), test.end(), [](const auto& r) { return r.admissible(); });
  if (admissible_total == 0) {
    throw std::invalid_argument("power is undefined: no admissible test record");
  }
  const std::optional<double> fdr = TestFdr(selected);
  if (fdr && *fdr > alpha) return 0.0;
  const auto admissible_selected =
      std::count_if(selected.begin(), selected.end(),
                    [](const auto& r) { return r.admissible(); });
  return static_cast<double>(admissible_selected) /
         static_cast<double>(admissible_total);
}

std::size_t CalibrationSize(std::size_t n, double split_ratio) {
  if (n < 2) throw std::invalid_argument("population needs at least 2 records");
  // Products within 1e-9 above an integer round down to that integer.
  auto size = static_cast<std::size_t>(
      std::ceil(split_ratio * static_cast<double>(n) - 1e-9));
  return std::clamp<std::size_t>(size, 1, n - 1);
}

Split SplitForTrial(std::span<const ScoredRecord> population,
                    const RiskConfig& config, int trial) {
  const std::size_t n_cal = CalibrationSize(population.size(), config.split_ratio);
  std::vector<ScoredRecord> shuffled(population.begin(), population.end());
  CounterRng rng(config.seed, static_cast<std::uint64_t>(trial),
                 StreamPurpose::kTrialSplit);
  Shuffle(shuffled, rng);
  Split split;
  const auto cut = shuffled.begin() + static_cast<std::ptrdiff_t>(n_cal);
  split.calibration.assign(shuffled.begin(), cut);
  split.test.assign(cut, shuffled.end());
  return split;
}

TrialReport SummarizeTrials(double alpha, std::vector<TrialResult> per_trial) {
  TrialReport report;
  report.alpha = alpha;
  std::vector<double> fdrs;
  std::vector<double> thresholds;
  double power_sum = 0.0;
  int violations = 0;
  for (const TrialResult& t : per_trial) {
    if (t.test_fdr) {
      fdrs.push_back(*t.test_fdr);
      if (*t.test_fdr > alpha) ++violations;
    }
    if (t.threshold) thresholds.push_back(*t.threshold);
    power_sum += t.power;
  }
  report.mean_fdr = Mean(fdrs);
  if (report.mean_fdr) {
    double ss = 0.0;
    for (double f : fdrs) ss += (f - *report.mean_fdr) * (f - *report.mean_fdr);
    report.std_fdr =
        fdrs.size() > 1 ? std::sqrt(ss / static_cast<double>(fdrs.size() - 1))
                        : 0.0;
  }
  report.mean_threshold = Mean(thresholds);
  if (!per_trial.empty()) {
    const auto n = static_cast<double>(per_trial.size());
    report.mean_power = power_sum / n;
    report.violation_fraction = violations / n;
  }
  report.per_trial = std::move(per_trial);
  return report;
}

TrialReport RunTrials(std::span<const ScoredRecord> population,
                      const RiskConfig& config) {
  const double alpha = config.alpha;
  return RunTrialsSweep(population, config, std::span<const double>(&alpha, 1))
      .front();
}

std::vector<TrialReport> RunTrialsSweep(std::span<const ScoredRecord> population,
                                        const RiskConfig& config,
                                        std::span<const double> alphas) {
  for (double alpha : alphas) {
    RiskConfig probe = config;
    probe.alpha = alpha;
    probe.Validate();
  }
  std::vector<std::vector<TrialResult>> per_alpha(alphas.size());
  for (int trial = 0; trial < config.n_trials; ++trial) {
    const Split split = SplitForTrial(population, config, trial);
    const BoundCurve curve =
        BuildCurve(split.calibration, config.delta, config.bound_method);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      const auto threshold = SelectThreshold(curve, alphas[a], config.selection);
      per_alpha[a].push_back(
          EvaluateSelection(trial, threshold, split.test, alphas[a]));
    }
  }
  std::vector<TrialReport> reports;
  reports.reserve(alphas.size());
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    reports.push_back(SummarizeTrials(alphas[a], std::move(per_alpha[a])));
  }
  return reports;
}

double GuaranteeLimit(double delta, int n_repeats) {
  return delta + 3.0 * std::sqrt(delta * (1.0 - delta) / n_repeats);
}

GuaranteeResult GuaranteeCheck(const SyntheticModel& model,
                               std::int64_t cal_size, int n_repeats,
                               const RiskConfig& config) {
  const double alpha = config.alpha;
  return GuaranteeSweep(model, cal_size, n_repeats, config,
                        std::span<const double>(&alpha, 1))
      .front();
}

std::vector<GuaranteeResult> GuaranteeSweep(const SyntheticModel& model,
                                            std::int64_t cal_size,
                                            int n_repeats,
                                            const RiskConfig& config,
                                            std::span<const double> alphas) {
  if (n_repeats < 100) {
    throw std::invalid_argument("guarantee check needs n_repeats >= 100");
  }
  if (cal_size < 1) throw std::invalid_argument("cal_size must be >= 1");
  for (double alpha : alphas) {
    RiskConfig probe = config;
    probe.alpha = alpha;
    probe.Validate();
  }
  std::vector<int> violations(alphas.size(), 0);
  std::vector<std::vector<double>> risks(alphas.size());
  const CounterRng seeds(config.seed, 0, StreamPurpose::kCalibrationSet);
  for (int r = 0; r < n_repeats; ++r) {
    const std::vector<ScoredRecord> cal = GeneratePopulation(
        cal_size, model, seeds.At(static_cast<std::uint64_t>(r)));
    const BoundCurve curve = BuildCurve(cal, config.delta, config.bound_method);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      const auto threshold = SelectThreshold(curve, alphas[a], config.selection);
      if (!threshold) continue;
      const double risk = TrueTcfr(model, *threshold);
      risks[a].push_back(risk);
      if (risk > alphas[a]) ++violations[a];
    }
  }
  std::vector<GuaranteeResult> results;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    GuaranteeResult g;
    g.alpha = alphas[a];
    g.n_repeats = n_repeats;
    g.violation_fraction = static_cast<double>(violations[a]) / n_repeats;
    g.mean_true_tcfr = Mean(risks[a]);
    g.n_with_threshold = static_cast<int>(risks[a].size());
    g.limit = GuaranteeLimit(config.delta, n_repeats);
    g.pass = g.violation_fraction <= g.limit;
    results.push_back(g);
  }
  return results;
}

}  // namespace riskgate
