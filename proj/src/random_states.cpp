// Copyright 2026 The qround Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <stdexcept>

#include "qround/quantum_info.hpp"

namespace qround {

namespace {

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

}  // namespace

ComplexVector random_pure_vector(std::size_t dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
  ComplexVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  if (rows < cols || cols < 1) throw std::invalid_argument("isometry needs rows >= cols >= 1");
  const ComplexMatrix z = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  const ComplexMatrix& r = qr.matrixQR();
  // Fix the column phases so the distribution is Haar rather than QR-biased.
  for (std::size_t j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) { return random_isometry(dim, dim, rng); }

DensityMatrix random_density(std::size_t dim, Rng& rng) { return random_density(dim, dim, rng); }

DensityMatrix random_density(std::size_t dim, std::size_t env_dim, Rng& rng) {
  if (dim < 1 || env_dim < 1) throw std::invalid_argument("dimension must be at least 1");
  const ComplexVector psi = random_pure_vector(dim * env_dim, rng);
  const auto layout = RegisterLayout({{"S", dim}, {"E", env_dim}});
  const std::string keep[] = {"S"};
  return DensityMatrix(reduced_density(psi, layout, keep));
}

Superoperator random_cptp(std::size_t input_dim, std::size_t output_dim, std::size_t env_dim,
                          Rng& rng) {
  if (input_dim < 1 || output_dim < 1 || env_dim < 1 || output_dim * env_dim < input_dim)
    throw std::invalid_argument("random_cptp: need output_dim * env_dim >= input_dim");
  return Superoperator(input_dim, output_dim, env_dim,
                       random_isometry(output_dim * env_dim, input_dim, rng));
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  return (g + g.adjoint()) / 2.0;
}

std::vector<double> random_distribution(std::size_t size, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(size);
  double total = 0.0;
  for (auto& x : p) total += (x = expo(rng));
  for (auto& x : p) x /= total;
  return p;
}

}  // namespace qround
