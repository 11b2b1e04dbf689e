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

#pragma once

#include <cstdint>
#include <random>

#include "acausal/tensor.hpp"

namespace acausal {

/// Every randomized routine draws from an explicitly seeded engine.
using Rng = std::mt19937_64;

/// Seed for the `index`-th independent stream under `master` (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Matrix with i.i.d. standard complex Gaussian entries.
Matrix ginibre(Rng& rng, std::size_t rows, std::size_t cols);

/// rows x cols matrix with orthonormal columns (rows >= cols), Haar
/// distributed: QR of a Ginibre matrix with the phases of R's diagonal
/// absorbed into Q.
Matrix random_isometry(Rng& rng, std::size_t rows, std::size_t cols);

Matrix haar_unitary(Rng& rng, std::size_t dim);

/// Density operator rho = G G^dagger / tr(G G^dagger) with G Ginibre.
LabeledOperator random_density(Rng& rng, const Subsystems& subsystems);

/// Normalized Haar-random pure state.
StateVector random_state(Rng& rng, const Subsystems& subsystems);

}  // namespace acausal
