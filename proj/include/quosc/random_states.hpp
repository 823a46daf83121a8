// Copyright 2026 The quosc authors
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

#pragma once

#include <random>

#include "quosc/operator.hpp"

namespace quosc {

/// Deterministic generators for the random-battery checks. Dynamics are
/// never random; these feed only property tests and the selftest scenario,
/// always from an explicit seed.
using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 0x5eed0c0ffee5ULL;

/// Square matrix with i.i.d. standard complex Gaussian entries.
Matrix ginibre(Index n, Rng& rng);

/// GG^dag / Tr normalized full-rank state.
DensityMatrix random_density(Dims dims, Rng& rng);

/// Product state rho_qubit (x) rho_fock.
DensityMatrix random_product_state(Index fock_dim, Rng& rng);

/// (A + A^dag)/2 with Ginibre A.
Matrix random_hermitian(Index n, Rng& rng);

/// Haar-ish unitary via QR of a Ginibre matrix with phase fixing.
Matrix random_unitary(Index n, Rng& rng);

}  // namespace quosc
