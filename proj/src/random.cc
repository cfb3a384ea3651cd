// Copyright 2026 The chanbound Authors
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


#include "chanbound/random.h"

#include <stdexcept>

namespace chanbound {

namespace {

// Q factor with the phases of R's diagonal removed, so the result is Haar.
ComplexMatrix orthonormal_columns(const ComplexMatrix& g) {
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(g.rows(), g.cols());
  const ComplexMatrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

ComplexMatrix random_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(r, c) = Complex(re, im);
    }
  return g;
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("random_unitary: dimension must be positive");
  return orthonormal_columns(random_gaussian(dim, dim, rng));
}

DensityMatrix random_density(int dim, int rank, Rng& rng) {
  if (dim < 1 || rank < 1) throw std::invalid_argument("random_density: dimension and rank must be positive");
  const ComplexMatrix g = random_gaussian(dim, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

KrausChannel random_channel(int dim_in, int dim_out, int kraus_count, Rng& rng) {
  if (dim_in < 1 || dim_out < 1 || kraus_count < 1 || kraus_count * dim_out < dim_in) {
    throw std::invalid_argument("random_channel: need kraus_count * dim_out >= dim_in");
  }
  const ComplexMatrix v = orthonormal_columns(random_gaussian(kraus_count * dim_out, dim_in, rng));
  std::vector<ComplexMatrix> kraus;
  for (int e = 0; e < kraus_count; ++e) kraus.push_back(v.middleRows(e * dim_out, dim_out));
  return KrausChannel(dim_in, dim_out, std::move(kraus));
}

}  // namespace chanbound
