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

#include "riskgate/scorers.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.h"
#include "riskgate/random.h"

namespace riskgate {
namespace {

const double kLn2 = std::log(2.0);

// Perfect similarity: 1 inside a block, 0 across blocks.
std::vector<std::vector<double>> BlockMatrix(const std::vector<int>& sizes) {
  std::vector<int> label;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    label.insert(label.end(), sizes[b], static_cast<int>(b));
  }
  const std::size_t n = label.size();
  std::vector<std::vector<double>> w(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = label[i] == label[j] ? 1.0 : 0.0;
  }
  return w;
}

std::vector<std::vector<double>> Permute(const std::vector<std::vector<double>>& w,
                                         const std::vector<std::size_t>& perm) {
  const std::size_t n = w.size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = w[perm[i]][perm[j]];
  }
  return out;
}

std::vector<std::vector<double>> RandomSimilarity(CounterRng& rng, std::size_t n) {
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) w[i][j] = w[j][i] = rng.NextUniform();
  }
  return w;
}

TEST(ShannonEntropy, Examples) {
  EXPECT_NEAR(ShannonEntropy(std::vector<double>(5, 0.2)), std::log(5.0), 1e-12);
  EXPECT_EQ(ShannonEntropy(std::vector<double>{0, 1, 0}), 0.0);
  EXPECT_NEAR(ShannonEntropy(std::vector<double>{0.5, 0.25, 0.25}), 1.5 * kLn2,
              1e-15);
}

TEST(ShannonEntropy, RejectsInvalid) {
  EXPECT_THROW(ShannonEntropy(std::vector<double>{0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(ShannonEntropy(std::vector<double>{1.2, -0.2}),
               std::invalid_argument);
  EXPECT_THROW(ShannonEntropy(std::vector<double>{}), std::invalid_argument);
}

TEST(PredictiveEntropyWhite, AliasOfShannon) {
  EXPECT_NEAR(PredictiveEntropyWhite(std::vector<double>(5, 0.2)), std::log(5.0),
              1e-12);
  EXPECT_EQ(PredictiveEntropyWhite(std::vector<double>{1, 0}), 0.0);
  EXPECT_NEAR(PredictiveEntropyWhite(std::vector<double>{0.5, 0.25, 0.25}),
              1.5 * kLn2, 1e-15);
}

TEST(PredictiveEntropyBlack, Examples) {
  EXPECT_EQ(PredictiveEntropyBlack(std::vector<int>{0, 0, 0, 0}, 5), 0.0);
  EXPECT_NEAR(PredictiveEntropyBlack(std::vector<int>{0, 1}, 2), kLn2, 1e-15);
  EXPECT_NEAR(PredictiveEntropyBlack(std::vector<int>{0, 0, 1, 1, 2, 2, 2, 2}, 3),
              1.5 * kLn2, 1e-15);
}

TEST(PredictiveEntropyBlack, Errors) {
  EXPECT_THROW(PredictiveEntropyBlack(std::vector<int>{}, 3), std::invalid_argument);
  EXPECT_THROW(PredictiveEntropyBlack(std::vector<int>{0, 3}, 3),
               std::invalid_argument);
}

TEST(SemanticEntropyBlack, Examples) {
  EXPECT_NEAR(SemanticEntropyBlack(std::vector<int>{0, 0, 1, 1}), kLn2, 1e-15);
  EXPECT_EQ(SemanticEntropyBlack(std::vector<int>{3, 3, 3}), 0.0);
  const double expected =
      -(0.6 * std::log(0.6) + 2 * 0.2 * std::log(0.2));  // hand evaluation
  EXPECT_NEAR(SemanticEntropyBlack(std::vector<int>{0, 0, 0, 1, 2}), expected,
              1e-15);
  EXPECT_THROW(SemanticEntropyBlack(std::vector<int>{}), std::invalid_argument);
}

TEST(SemanticEntropyWhite, Examples) {
  EXPECT_NEAR(SemanticEntropyWhite(std::vector<int>{0, 1},
                                   std::vector<double>{0.3, 0.3}),
              kLn2, 1e-15);
  EXPECT_EQ(SemanticEntropyWhite(std::vector<int>{0, 0},
                                 std::vector<double>{0.4, 0.1}),
            0.0);
  EXPECT_NEAR(SemanticEntropyWhite(std::vector<int>{0, 0, 1},
                                   std::vector<double>{0.2, 0.2, 0.4}),
              kLn2, 1e-15);
}

TEST(SemanticEntropyWhite, Errors) {
  EXPECT_THROW(SemanticEntropyWhite(std::vector<int>{0, 1},
                                    std::vector<double>{0.3}),
               std::invalid_argument);
  EXPECT_THROW(SemanticEntropyWhite(std::vector<int>{0, 1},
                                    std::vector<double>{0.3, 0.0}),
               std::invalid_argument);
}

TEST(SimilarityMatrix, Normalize) {
  const auto id = SimilarityMatrix::Normalize(Matrix::Identity(3).ToRows());
  EXPECT_EQ(id.matrix().ToRows(), Matrix::Identity(3).ToRows());

  const auto clamped = SimilarityMatrix::Normalize({{1, 1.2}, {1.2, 1}});
  EXPECT_EQ(clamped.matrix()(0, 1), 1.0);

  const auto sym = SimilarityMatrix::Normalize({{1, 0.4}, {0.6, 1}});
  EXPECT_EQ(sym.matrix().ToRows(),
            (std::vector<std::vector<double>>{{1, 0.5}, {0.5, 1}}));

  const auto diag = SimilarityMatrix::Normalize({{0.3, -1}, {-1, 7}});
  EXPECT_EQ(diag.matrix().ToRows(),
            (std::vector<std::vector<double>>{{1, 0}, {0, 1}}));

  EXPECT_THROW(SimilarityMatrix::Normalize({{1, 0.5}}), std::invalid_argument);
}

TEST(LaplacianSpectrum, Examples) {
  const auto ones = LaplacianSpectrum(
      SimilarityMatrix::Normalize(std::vector<std::vector<double>>(4, {1, 1, 1, 1})));
  EXPECT_NEAR(ones[0], 0.0, 1e-12);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ones[i], 1.0, 1e-12);

  for (double x : LaplacianSpectrum(SimilarityMatrix::Normalize(Matrix::Identity(5)))) {
    EXPECT_EQ(x, 0.0);
  }

  const auto rows = BlockMatrix({2, 2});
  const auto block = LaplacianSpectrum(SimilarityMatrix::Normalize(rows));
  const auto oracle = testing::BruteForceEigenvalues(
      NormalizedLaplacian(SimilarityMatrix::Normalize(rows)).ToRows());
  const std::vector<double> expected{0, 0, 1, 1};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(block[i], expected[i], 1e-12);
    EXPECT_NEAR(oracle[i], expected[i], 1e-8);
  }
}

TEST(LaplacianSpectrum, RangeOnRandomInputs) {
  CounterRng rng(21, 0, StreamPurpose::kTestSet);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = SimilarityMatrix::Normalize(RandomSimilarity(rng, 2 + trial % 9));
    for (double x : LaplacianSpectrum(w)) {
      EXPECT_GE(x, -1e-9);
      EXPECT_LE(x, 2.0 + 1e-9);
    }
  }
}

TEST(EigenvalueUncertainty, Examples) {
  EXPECT_NEAR(EigenvalueUncertainty(SimilarityMatrix::Normalize(BlockMatrix({5, 5}))),
              2.0, 1e-8);
  EXPECT_NEAR(EigenvalueUncertainty(SimilarityMatrix::Normalize(BlockMatrix({6}))),
              1.0, 1e-8);
  EXPECT_EQ(EigenvalueUncertainty(SimilarityMatrix::Normalize(Matrix::Identity(4))),
            4.0);
}

TEST(EigenvalueUncertainty, CountsPerfectBlocks) {
  CounterRng rng(22, 0, StreamPurpose::kTestSet);
  for (int c = 1; c <= 3; ++c) {
    for (int n = c; n <= 12; ++n) {
      // Random block sizes summing to n, each at least 1.
      std::vector<int> sizes(c, 1);
      for (int extra = n - c; extra > 0; --extra) {
        ++sizes[rng.NextBelow(static_cast<std::uint64_t>(c))];
      }
      EXPECT_NEAR(EigenvalueUncertainty(SimilarityMatrix::Normalize(BlockMatrix(sizes))),
                  c, 1e-8)
          << "c=" << c << " n=" << n;
    }
  }
}

TEST(DegreeUncertainty, Examples) {
  EXPECT_EQ(DegreeUncertainty(SimilarityMatrix::Normalize(BlockMatrix({4}))), 0.0);
  EXPECT_EQ(DegreeUncertainty(SimilarityMatrix::Normalize(Matrix::Identity(2))), 0.5);
  EXPECT_EQ(DegreeUncertainty(SimilarityMatrix::Normalize(BlockMatrix({1, 1}))), 0.5);
}

TEST(EccentricityUncertainty, Examples) {
  EXPECT_NEAR(EccentricityUncertainty(SimilarityMatrix::Normalize(BlockMatrix({7}))),
              0.0, 1e-8);
  EXPECT_EQ(EccentricityUncertainty(SimilarityMatrix::Normalize(Matrix::Identity(1)), 1),
            0.0);
  const auto rows = BlockMatrix({5, 5});
  const double base = EccentricityUncertainty(SimilarityMatrix::Normalize(rows), 2);
  EXPECT_GT(base, 0.1);
  std::vector<std::size_t> perm(10);
  std::iota(perm.begin(), perm.end(), 0);
  CounterRng rng(23, 0, StreamPurpose::kTestSet);
  for (int i = 0; i < 20; ++i) {
    Shuffle(perm, rng);
    EXPECT_NEAR(EccentricityUncertainty(SimilarityMatrix::Normalize(Permute(rows, perm)), 2),
                base, 1e-8);
  }
}

TEST(EccentricityUncertainty, RejectsDimensionOutOfRange) {
  const auto w = SimilarityMatrix::Normalize(Matrix::Identity(3));
  EXPECT_THROW(EccentricityUncertainty(w, 0), std::invalid_argument);
  EXPECT_THROW(EccentricityUncertainty(w, 4), std::invalid_argument);
}

TEST(Scorers, PermutationInvarianceAndRanges) {
  CounterRng rng(24, 0, StreamPurpose::kTestSet);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + trial % 8;
    const auto rows = RandomSimilarity(rng, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Shuffle(perm, rng);
    const auto w = SimilarityMatrix::Normalize(rows);
    const auto wp = SimilarityMatrix::Normalize(Permute(rows, perm));

    const double eigv = EigenvalueUncertainty(w);
    const double deg = DegreeUncertainty(w);
    const double ecc = EccentricityUncertainty(w, 2);
    EXPECT_NEAR(EigenvalueUncertainty(wp), eigv, 1e-9);
    EXPECT_NEAR(DegreeUncertainty(wp), deg, 1e-12);
    EXPECT_NEAR(EccentricityUncertainty(wp, 2), ecc, 1e-8);
    EXPECT_GE(eigv, 0.0);
    EXPECT_LE(eigv, static_cast<double>(n) + 1e-9);
    EXPECT_GE(deg, 0.0);
    EXPECT_LE(deg, 1.0);
    EXPECT_GE(ecc, 0.0);

    // Entropies: permuting options / samples never changes the value.
    std::vector<int> labels(n);
    for (auto& l : labels) l = static_cast<int>(rng.NextBelow(4));
    const double se = SemanticEntropyBlack(labels);
    std::vector<int> shuffled = labels;
    Shuffle(shuffled, rng);
    EXPECT_NEAR(SemanticEntropyBlack(shuffled), se, 1e-12);
    EXPECT_LE(se, std::log(4.0) + 1e-12);

    std::vector<double> probs(5);
    double total = 0.0;
    for (auto& p : probs) total += (p = rng.NextUniform());
    for (auto& p : probs) p /= total;
    const double pe = PredictiveEntropyWhite(probs);
    std::reverse(probs.begin(), probs.end());
    EXPECT_NEAR(PredictiveEntropyWhite(probs), pe, 1e-12);
    EXPECT_LE(pe, std::log(5.0) + 1e-12);
  }
}

TEST(Scorers, ConstantSamplesHaveZeroEntropy) {
  for (int n = 1; n <= 20; ++n) {
    EXPECT_EQ(SemanticEntropyBlack(std::vector<int>(n, 9)), 0.0);
    EXPECT_EQ(PredictiveEntropyBlack(std::vector<int>(n, 2), 4), 0.0);
  }
}

}  // namespace
}  // namespace riskgate
