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

#include "riskgate/bounds.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace riskgate {
namespace {

constexpr double kBisectionTolerance = 1e-10;
constexpr int kMaxBisectionIterations = 200;

void CheckCounts(std::int64_t w, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("bound requires m >= 1");
  if (w < 0 || w > m) {
    throw std::invalid_argument("failure count w=" + std::to_string(w) +
                                " outside [0, m=" + std::to_string(m) + "]");
  }
}

void CheckDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1)");
  }
}

// Kahan-compensated accumulator.
class CompensatedSum {
 public:
  void Add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double LogBinomialPmf(std::int64_t k, std::int64_t m, double log_p,
                      double log_q) {
  const double n = static_cast<double>(m);
  const double kk = static_cast<double>(k);
  return std::lgamma(n + 1.0) - std::lgamma(kk + 1.0) -
         std::lgamma(n - kk + 1.0) + kk * log_p + (n - kk) * log_q;
}

// Relative terms below this are dropped; they cannot change a double sum.
constexpr double kNegligibleTerm = 1e-18;

}  // namespace

double BinomialLogCdf(std::int64_t w, std::int64_t m, double rate) {
  CheckCounts(w, m);
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("rate must lie in [0,1]");
  }
  if (w == m || rate == 0.0) return 0.0;
  if (rate == 1.0) return -std::numeric_limits<double>::infinity();

  const double log_p = std::log(rate);
  const double log_q = std::log1p(-rate);
  const double odds = rate / (1.0 - rate);

  // The pmf is unimodal with its mode at floor((m + 1) * rate); the largest
  // term inside [0, w] sits at min(w, mode).
  const auto mode = static_cast<std::int64_t>(
      std::floor(static_cast<double>(m + 1) * rate));
  const std::int64_t peak = std::min(w, std::max<std::int64_t>(mode, 0));

  CompensatedSum sum;
  sum.Add(1.0);
  // Downward: pmf(k-1)/pmf(k) = k / ((m - k + 1) * odds).
  double term = 1.0;
  for (std::int64_t k = peak; k > 0; --k) {
    term *= static_cast<double>(k) /
            (static_cast<double>(m - k + 1) * odds);
    sum.Add(term);
    if (term < kNegligibleTerm * sum.value()) break;
  }
  // Upward: pmf(k+1)/pmf(k) = (m - k) * odds / (k + 1).
  term = 1.0;
  for (std::int64_t k = peak; k < w; ++k) {
    term *= static_cast<double>(m - k) * odds / static_cast<double>(k + 1);
    sum.Add(term);
    if (term < kNegligibleTerm * sum.value()) break;
  }
  const double log_cdf = LogBinomialPmf(peak, m, log_p, log_q) +
                         std::log(sum.value());
  return std::min(log_cdf, 0.0);
}

double ClopperPearsonUpper(std::int64_t w, std::int64_t m, double delta) {
  CheckCounts(w, m);
  CheckDelta(delta);
  if (w == m) return 1.0;

  // Pr(Bin(m, R) <= w) is strictly decreasing in R; find where it meets delta.
  const double log_delta = std::log(delta);
  double lo = static_cast<double>(w) / static_cast<double>(m);
  double hi = 1.0;
  if (BinomialLogCdf(w, m, lo) < log_delta) return lo;
  for (int it = 0; it < kMaxBisectionIterations && hi - lo > kBisectionTolerance;
       ++it) {
    const double mid = 0.5 * (lo + hi);
    if (BinomialLogCdf(w, m, mid) >= log_delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) {
    throw std::invalid_argument("incomplete beta needs positive shapes");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // Use the symmetry relation where the continued fraction converges fast.
  if (x > (a + 1.0) / (a + b + 2.0)) {
    return 1.0 - RegularizedIncompleteBeta(b, a, 1.0 - x);
  }
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);

  // Modified Lentz evaluation.
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double f = d;
  for (int i = 1; i <= 10000; ++i) {
    const double n = static_cast<double>(i);
    // Even step.
    double num = n * (b - n) * x / ((a + 2.0 * n - 1.0) * (a + 2.0 * n));
    d = 1.0 + num * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    f *= d * c;
    // Odd step.
    num = -(a + n) * (a + b + n) * x / ((a + 2.0 * n) * (a + 2.0 * n + 1.0));
    d = 1.0 + num * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double step = d * c;
    f *= step;
    if (std::fabs(step - 1.0) < kEps) break;
  }
  return std::exp(log_front) * f / a;
}

double BetaInvUpper(std::int64_t w, std::int64_t m, double delta) {
  CheckCounts(w, m);
  CheckDelta(delta);
  if (w == m) return 1.0;
  const double a = static_cast<double>(w + 1);
  const double b = static_cast<double>(m - w);
  const double target = 1.0 - delta;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < kMaxBisectionIterations && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (RegularizedIncompleteBeta(a, b, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double HoeffdingUpper(double r_hat, std::int64_t m, double delta) {
  if (m < 1) throw std::invalid_argument("bound requires m >= 1");
  CheckDelta(delta);
  if (!(r_hat >= 0.0 && r_hat <= 1.0)) {
    throw std::invalid_argument("r_hat must lie in [0,1]");
  }
  const double slack =
      std::sqrt(std::log(1.0 / delta) / (2.0 * static_cast<double>(m)));
  return std::min(1.0, r_hat + slack);
}

double UpperBound(const BoundInput& input, BoundMethod method) {
  switch (method) {
    case BoundMethod::kClopperPearson:
      return ClopperPearsonUpper(input.w, input.m, input.delta);
    case BoundMethod::kHoeffding:
      CheckCounts(input.w, input.m);
      return HoeffdingUpper(
          static_cast<double>(input.w) / static_cast<double>(input.m), input.m,
          input.delta);
  }
  throw std::invalid_argument("unknown bound method");
}

}  // namespace riskgate
