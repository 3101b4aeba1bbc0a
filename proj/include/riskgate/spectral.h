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

#ifndef RISKGATE_SPECTRAL_H_
#define RISKGATE_SPECTRAL_H_

#include <cstddef>
#include <vector>

namespace riskgate {

// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0)
      : n_(n), data_(n * n, fill) {}
  // Throws std::invalid_argument if `rows` is not square.
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);
  static Matrix Identity(std::size_t n);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }
  std::vector<std::vector<double>> ToRows() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Eigenvalues ascending; eigenvectors()[j] pairs with eigenvalues[j]. Each
// eigenvector is unit length with its largest-magnitude component positive.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
};

// Cyclic Jacobi rotations on a symmetric matrix until the off-diagonal
// Frobenius norm drops to 1e-10 (or 100 sweeps). Only the upper triangle is
// read.
EigenDecomposition JacobiEigen(const Matrix& symmetric);

}  // namespace riskgate

#endif  // RISKGATE_SPECTRAL_H_
