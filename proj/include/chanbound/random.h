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


#ifndef CHANBOUND_RANDOM_H_
#define CHANBOUND_RANDOM_H_

#include <random>

#include "chanbound/qmat.h"

namespace chanbound {

using Rng = std::mt19937_64;

/// Matrix with independent standard complex Gaussian entries.
ComplexMatrix random_gaussian(int rows, int cols, Rng& rng);

/// Haar-distributed unitary.
ComplexMatrix random_unitary(int dim, Rng& rng);

/// Density matrix G G^dagger / Tr(G G^dagger) with G of size dim x rank.
DensityMatrix random_density(int dim, int rank, Rng& rng);

/// Channel whose Stinespring isometry is the Q factor of a Gaussian matrix.
KrausChannel random_channel(int dim_in, int dim_out, int kraus_count, Rng& rng);

}  // namespace chanbound

#endif  // CHANBOUND_RANDOM_H_
