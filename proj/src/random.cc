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

#include "riskgate/random.h"

namespace riskgate {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream,
                       StreamPurpose purpose) {
  std::uint64_t k = Mix64(seed + kGolden);
  k = Mix64(k ^ Mix64(stream + 2 * kGolden));
  k = Mix64(k ^ Mix64(static_cast<std::uint64_t>(purpose) + 3 * kGolden));
  key_ = k;
}

std::uint64_t CounterRng::At(std::uint64_t counter) const {
  return Mix64(key_ + (counter + 1) * kGolden);
}

double CounterRng::UniformAt(std::uint64_t counter) const {
  return static_cast<double>(At(counter) >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::NextBelow(std::uint64_t bound) {
  unsigned __int128 product =
      static_cast<unsigned __int128>(Next()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(Next()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

}  // namespace riskgate
