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
#include <map>
#include <stdexcept>
#include <string>

namespace riskgate {
namespace {

constexpr double kProbSumTolerance = 1e-6;

std::vector<double> NormalizeCounts(const std::map<int, double>& mass) {
  double total = 0.0;
  for (const auto& [key, m] : mass) total += m;
  std::vector<double> probs;
  probs.reserve(mass.size());
  for (const auto& [key, m] : mass) probs.push_back(m / total);
  return probs;
}

}  // namespace

double ShannonEntropy(std::span<const double> probs) {
  if (probs.empty()) throw std::invalid_argument("empty probability vector");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("probability vector has a negative entry");
    }
    sum += p;
  }
  if (std::fabs(sum - 1.0) > kProbSumTolerance) {
    throw std::invalid_argument("probability vector sums to " +
                                std::to_string(sum));
  }
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return std::max(h, 0.0);
}

double PredictiveEntropyWhite(std::span<const double> option_probs) {
  return ShannonEntropy(option_probs);
}

double PredictiveEntropyBlack(std::span<const int> sampled_option_ids,
                              int num_options) {
  if (sampled_option_ids.empty()) {
    throw std::invalid_argument("no sampled options");
  }
  if (num_options < 1) throw std::invalid_argument("num_options must be >= 1");
  std::vector<double> freq(static_cast<std::size_t>(num_options), 0.0);
  for (int id : sampled_option_ids) {
    if (id < 0 || id >= num_options) {
      throw std::invalid_argument("sampled option id " + std::to_string(id) +
                                  " outside [0," + std::to_string(num_options) +
                                  ")");
    }
    freq[static_cast<std::size_t>(id)] += 1.0;
  }
  for (double& f : freq) f /= static_cast<double>(sampled_option_ids.size());
  return ShannonEntropy(freq);
}

double SemanticEntropyBlack(std::span<const int> cluster_labels) {
  if (cluster_labels.empty()) throw std::invalid_argument("no cluster labels");
  std::map<int, double> counts;
  for (int c : cluster_labels) counts[c] += 1.0;
  return ShannonEntropy(NormalizeCounts(counts));
}

double SemanticEntropyWhite(std::span<const int> cluster_labels,
                            std::span<const double> sequence_probs) {
  if (cluster_labels.empty()) throw std::invalid_argument("no cluster labels");
  if (cluster_labels.size() != sequence_probs.size()) {
    throw std::invalid_argument(
        "cluster_labels and sequence_probs have different lengths");
  }
  std::map<int, double> mass;
  for (std::size_t i = 0; i < cluster_labels.size(); ++i) {
    const double p = sequence_probs[i];
    if (!(p > 0.0 && p <= 1.0)) {
      throw std::invalid_argument("sequence probability outside (0,1]");
    }
    mass[cluster_labels[i]] += p;
  }
  return ShannonEntropy(NormalizeCounts(mass));
}

SimilarityMatrix SimilarityMatrix::Normalize(const Matrix& raw) {
  const std::size_t n = raw.size();
  Matrix w(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double avg = 0.5 * (raw(i, j) + raw(j, i));
      w(i, j) = i == j ? 1.0 : std::clamp(avg, 0.0, 1.0);
    }
  }
  return SimilarityMatrix(std::move(w));
}

SimilarityMatrix SimilarityMatrix::Normalize(
    const std::vector<std::vector<double>>& raw) {
  return Normalize(Matrix::FromRows(raw));
}

Matrix NormalizedLaplacian(const SimilarityMatrix& sim) {
  const Matrix& w = sim.matrix();
  const std::size_t n = w.size();
  std::vector<double> inv_sqrt_degree(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) d += w(i, j);
    inv_sqrt_degree[i] = 1.0 / std::sqrt(d);  // d >= 1 from the unit diagonal
  }
  Matrix l(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      l(i, j) = (i == j ? 1.0 : 0.0) -
                inv_sqrt_degree[i] * w(i, j) * inv_sqrt_degree[j];
    }
  }
  return l;
}

std::vector<double> LaplacianSpectrum(const SimilarityMatrix& w) {
  return JacobiEigen(NormalizedLaplacian(w)).eigenvalues;
}

double EigenvalueUncertainty(const SimilarityMatrix& w) {
  double u = 0.0;
  for (double lambda : LaplacianSpectrum(w)) u += std::max(0.0, 1.0 - lambda);
  return u;
}

double DegreeUncertainty(const SimilarityMatrix& sim) {
  const Matrix& w = sim.matrix();
  const double n = static_cast<double>(w.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) total += w(i, j);
  }
  return std::clamp(1.0 - total / (n * n), 0.0, 1.0);
}

double EccentricityUncertainty(const SimilarityMatrix& w, int k) {
  const auto n = static_cast<int>(w.size());
  if (k < 1 || k > n) {
    throw std::invalid_argument("embedding dimension k=" + std::to_string(k) +
                                " outside [1," + std::to_string(n) + "]");
  }
  const EigenDecomposition eig = JacobiEigen(NormalizedLaplacian(w));
  double sq = 0.0;
  for (int j = 0; j < k; ++j) {
    const double weight = std::max(0.0, 1.0 - eig.eigenvalues[j]);
    const auto& v = eig.eigenvectors[j];
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    for (double x : v) sq += weight * weight * (x - mean) * (x - mean);
  }
  return std::sqrt(sq);
}

}  // namespace riskgate
