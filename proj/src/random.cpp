// Copyright 2026 The acausal Authors
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

#include "acausal/random.hpp"

#include <cmath>

namespace acausal {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index c = 0; c < g.cols(); ++c) {
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

Matrix random_isometry(Rng& rng, std::size_t rows, std::size_t cols) {
  if (rows < cols) {
    throw DimensionMismatch("isometry needs at least as many rows as columns");
  }
  Matrix g = ginibre(rng, rows, cols);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    const Complex diag = r(c, c);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(c) *= diag / mag;
  }
  return q;
}

Matrix haar_unitary(Rng& rng, std::size_t dim) { return random_isometry(rng, dim, dim); }

LabeledOperator random_density(Rng& rng, const Subsystems& subsystems) {
  const auto d = total_dim(subsystems);
  Matrix g = ginibre(rng, d, d);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return LabeledOperator(subsystems, std::move(rho));
}

StateVector random_state(Rng& rng, const Subsystems& subsystems) {
  Matrix g = ginibre(rng, total_dim(subsystems), 1);
  Vector v = g.col(0);
  return StateVector(subsystems, v / v.norm());
}

}  // namespace acausal
