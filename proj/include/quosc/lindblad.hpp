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

#include <span>
#include <utility>
#include <vector>

#include "quosc/channel.hpp"
#include "quosc/operator.hpp"

namespace quosc {

struct Jump {
  double rate;  // 1/time; folded in as sqrt(rate) E at assembly
  Operator op;
};

/// Time-independent Lindblad generator
///   rho' = -i[H, rho] + sum_i rate_i (E_i rho E_i^dag - {E_i^dag E_i, rho}/2).
/// H must be Hermitian to 1e-10 and every rate nonnegative.
struct LindbladGenerator {
  LindbladGenerator(Operator hamiltonian, std::vector<Jump> jump_ops);

  Operator H;
  std::vector<Jump> jumps;

  const Dims& dims() const { return H.dims(); }
};

/// Right-hand side of the master equation. Traceless and Hermitian to
/// 1e-12 by construction.
Operator rhs(const LindbladGenerator& gen, const DensityMatrix& rho);

/// Raw-matrix right-hand side (no state validation), the integrator's inner
/// loop.
Matrix rhs_matrix(const LindbladGenerator& gen, const Matrix& rho);

/// Matrix form of the generator: G vec(rho) = vec(rhs(rho)) on the full
/// matrix-unit basis. Assembled from the Kronecker identities, so it is an
/// independent route from extract_generator's column assembly.
Superoperator superoperator(const LindbladGenerator& gen);

/// Verdict on the strict separability hypothesis for Lindblad evolutions:
/// Hamiltonian a sum of strictly local terms M(x)I + I(x)N, every jump a
/// product operator, and sum rate E^dag E strictly local. A Hamiltonian that
/// factorizes with both factors non-identity (e.g. X sigma_z) is a genuinely
/// two-body coupling and fails the hypothesis even though its Schmidt rank
/// is 1; h_is_product reports the rank test separately for diagnostics.
struct SeparabilityReport {
  bool h_is_product;
  bool h_is_local;
  bool jumps_all_product;
  bool completeness_local;
  bool verdict;  // h_is_local && jumps_all_product && completeness_local
  std::vector<int> witnesses;  // -1 tags H, i >= 0 tags jumps[i]
};

SeparabilityReport check_c_prime(const LindbladGenerator& gen);

struct TrajectoryPoint {
  double t;
  DensityMatrix state;
};

using Trajectory = std::vector<TrajectoryPoint>;

struct EvolveOptions {
  int store_every = 0;             // 0: pick a stride targeting ~512 samples
  double stability_limit = 0.1;    // guard: dt * spectral radius below this
  double trace_tol = 1e-8;         // per-sample |Tr rho - 1| bound
  double positivity_floor = -1e-7; // per-sample smallest-eigenvalue bound
};

/// Classical fixed-step RK4 on the master equation. Each stored state is
/// hermitized by averaging with its dagger, then re-validated; positivity is
/// checked, never clipped. The step count is rounded so the grid lands on
/// t_max exactly.
Trajectory evolve(const LindbladGenerator& gen, const DensityMatrix& rho0,
                  double t_max, double dt, EvolveOptions opts = {});

/// Tr(rho(t) O) for a Hermitian observable. The imaginary residue must stay
/// below 1e-9; it is checked, then discarded.
std::vector<std::pair<double, double>> expectation_series(
    std::span<const TrajectoryPoint> trajectory, const Operator& observable);

/// Power-iteration estimate of the generator's spectral radius, used by the
/// evolve stability guard. Deterministic (fixed seed).
double spectral_radius_estimate(const LindbladGenerator& gen);

}  // namespace quosc
