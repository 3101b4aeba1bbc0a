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

#ifndef RISKGATE_RANDOM_H_
#define RISKGATE_RANDOM_H_

#include <cstdint>
#include <utility>
#include <vector>

namespace riskgate {

// Separates independent uses of the same (seed, stream) pair.
enum class StreamPurpose : std::uint64_t {
  kPopulationUncertainty = 1,
  kPopulationLabel = 2,
  kTrialSplit = 3,
  kCalibrationSet = 4,
  kTestSet = 5,
};

// Counter-based generator: draw i is a pure function of
// (seed, stream, purpose, i), so results never depend on execution order or
// on how many draws other streams consumed. The mixing function is the
// SplitMix64 finalizer.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, StreamPurpose purpose);

  // Random access to draw `counter`.
  std::uint64_t At(std::uint64_t counter) const;
  // Uniform double in [0, 1) with 53 random bits, for draw `counter`.
  double UniformAt(std::uint64_t counter) const;

  std::uint64_t Next() { return At(counter_++); }
  double NextUniform() { return UniformAt(counter_++); }
  // Unbiased integer in [0, bound) (Lemire's multiply-and-reject).
  std::uint64_t NextBelow(std::uint64_t bound);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t Mix64(std::uint64_t z);

// Fisher-Yates shuffle driven by `rng`; identical on every platform.
template <typename T>
void Shuffle(std::vector<T>& items, CounterRng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.NextBelow(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace riskgate

#endif  // RISKGATE_RANDOM_H_
