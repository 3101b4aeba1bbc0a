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

#ifndef RISKGATE_BOUNDS_H_
#define RISKGATE_BOUNDS_H_

#include <cstdint>

#include "riskgate/records.h"

namespace riskgate {

// Failure count `w` out of `m` selected trials.
struct BoundInput {
  std::int64_t w = 0;
  std::int64_t m = 0;
  double delta = 0.05;
};

// log Pr(Binomial(m, rate) <= w). Exactly 0 when w == m or rate == 0, and
// -infinity when w < m and rate == 1.
//
// The sum runs outward from the largest term in [0, w] using the pmf ratio
// recurrence with compensated summation, so it neither underflows nor
// overflows for m up to ~1e6. Throws std::invalid_argument on
// w < 0, w > m, m < 1 or rate outside [0, 1].
double BinomialLogCdf(std::int64_t w, std::int64_t m, double rate);

// One-sided exact (Clopper-Pearson) upper confidence bound: the largest R
// with Pr(Binomial(m, R) <= w) >= delta. Bisection on BinomialLogCdf over
// [w/m, 1] to 1e-10. Returns exactly 1.0 when w == m.
double ClopperPearsonUpper(std::int64_t w, std::int64_t m, double delta);

// The (1 - delta) quantile of Beta(w + 1, m - w), found by bisection on the
// regularized incomplete beta function. Mathematically identical to
// ClopperPearsonUpper but computed along an independent route. 1.0 when
// w == m.
double BetaInvUpper(std::int64_t w, std::int64_t m, double delta);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double RegularizedIncompleteBeta(double a, double b, double x);

// min(1, r_hat + sqrt(log(1/delta) / (2m))).
double HoeffdingUpper(double r_hat, std::int64_t m, double delta);

// Dispatches on `method`; Hoeffding receives r_hat = w / m.
double UpperBound(const BoundInput& input, BoundMethod method);

}  // namespace riskgate

#endif  // RISKGATE_BOUNDS_H_
