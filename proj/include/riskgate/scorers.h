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

#ifndef RISKGATE_SCORERS_H_
#define RISKGATE_SCORERS_H_

#include <span>
#include <vector>

#include "riskgate/spectral.h"

namespace riskgate {

// Shannon entropy in nats, with 0 ln 0 := 0. Rejects vectors with negative
// entries or a sum more than 1e-6 away from 1.
double ShannonEntropy(std::span<const double> probs);

// White-box predictive entropy over softmaxed option probabilities.
double PredictiveEntropyWhite(std::span<const double> option_probs);

// Black-box predictive entropy of the empirical option frequencies. Every id
// must lie in [0, num_options).
double PredictiveEntropyBlack(std::span<const int> sampled_option_ids,
                              int num_options);

// Semantic entropy with cluster probability = cluster size / sample count.
double SemanticEntropyBlack(std::span<const int> cluster_labels);

// Semantic entropy with cluster mass = sum of member sequence probabilities,
// renormalized over clusters before taking the entropy.
double SemanticEntropyWhite(std::span<const int> cluster_labels,
                            std::span<const double> sequence_probs);

// Symmetric similarity with entries in [0, 1] and a unit diagonal.
class SimilarityMatrix {
 public:
  // (W + W^T) / 2, clamped to [0, 1], diagonal forced to 1.
  static SimilarityMatrix Normalize(const Matrix& raw);
  static SimilarityMatrix Normalize(const std::vector<std::vector<double>>& raw);

  std::size_t size() const { return w_.size(); }
  const Matrix& matrix() const { return w_; }

 private:
  explicit SimilarityMatrix(Matrix w) : w_(std::move(w)) {}
  Matrix w_;
};

// L = I - D^{-1/2} W D^{-1/2}, D = diag(row sums).
Matrix NormalizedLaplacian(const SimilarityMatrix& w);

// Ascending eigenvalues of the normalized Laplacian.
std::vector<double> LaplacianSpectrum(const SimilarityMatrix& w);

// EigV: sum_k max(0, 1 - lambda_k). Counts perfectly separated clusters
// exactly and relaxes continuously in between.
double EigenvalueUncertainty(const SimilarityMatrix& w);

// Deg: 1 - sum_ij W_ij / n^2.
double DegreeUncertainty(const SimilarityMatrix& w);

// Ecc: embed response i as row i of V_k diag(max(0, 1 - lambda_j)), where V_k
// holds the eigenvectors of the k smallest Laplacian eigenvalues; return the
// Frobenius norm of the embedding after subtracting the mean row. The
// eigenvalue weighting zeroes directions that carry no cluster structure
// (lambda >= 1), which makes the value independent of the basis chosen
// inside those degenerate eigenspaces. Requires 1 <= k <= n.
double EccentricityUncertainty(const SimilarityMatrix& w, int k = 2);

}  // namespace riskgate

#endif  // RISKGATE_SCORERS_H_
