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

#include "quosc/lindblad.hpp"

namespace quosc {

/// SI parameters of the pendulum-and-atom experiment. Defaults: CODATA
/// constants, a cesium atom, a 1 mg / 1 mHz oscillator at 1 mm with a
/// 0.1 mm arm separation.
struct PhysicalParams {
  double G_N = 6.67430e-11;        // m^3 / (kg s^2)
  double hbar = 1.054571817e-34;   // J s
  double m_atom = 2.20694650e-25;  // kg
  double M_osc = 1e-6;             // kg
  double ell = 1e-4;               // m, atom arm separation
  double d = 1e-3;                 // m, atom-oscillator distance
  double omega = 1e-3;             // rad/s
  long long n_atoms = 1;

  void validate() const;  // all strictly positive, d > ell
};

/// Dimensionless and SI couplings derived from PhysicalParams.
///
/// The measurement-feedback split puts the oscillator mass on the
/// oscillator-side coupling and the atom on the qubit side:
///   alpha = sqrt(G_N/hbar) M / d^{3/2}        [1/(m sqrt(s))]
///   beta  = sqrt(G_N/hbar) m ell / d^{3/2}    [1/sqrt(s)]
/// so alpha beta = G_N m M ell / (hbar d^3). With x = x0 (a + a^dag) the
/// coherent coupling is lambda = 2 alpha beta x0 and the heating rate is
/// gamma = (alpha x0)^2 = G_N M / (2 omega d^3). The tilde couplings are
/// the per-sqrt(second) numbers that multiply the dimensionless X and
/// sigma_z in the simulation; gamma = alpha_tilde^2 identically.
struct DerivedCouplings {
  double x0;           // m
  double alpha;        // 1/(m sqrt(s))
  double beta;         // 1/sqrt(s)
  double gamma;        // 1/s
  double lambda;       // rad/s
  double alpha_tilde;  // dimensionless per sqrt(s)
  double beta_tilde;   // dimensionless per sqrt(s)
};

DerivedCouplings derive_couplings(const PhysicalParams& p);

/// Purely stochastic gravitational force on the pendulum: position kicks
/// e^{+-i alpha_sf X} selected by the atom location, each at rate
/// gamma_rate. H = 0. Satisfies the strict separability hypothesis, and
/// drifts the momentum as d<P>/dt = 2 gamma_rate alpha_sf <sigma_z>
/// ([X, P] = 2i puts the factor 2 in).
LindbladGenerator stochastic_force_model(double alpha_sf, double gamma_rate,
                                         const FockParams& fock);

/// Stochastic force on the atoms: a Gaussian position measurement of the
/// oscillator (window `width` around each grid point z) followed by the
/// qubit phase kick e^{i beta_tilde z sigma_z} conditioned on the outcome.
/// The Gaussian family is normalized per X eigenvalue so the discrete POVM
/// is complete; a grid too coarse or narrow to support that normalization
/// throws ValidationError.
LindbladGenerator atom_noise_model(double beta_tilde,
                                   std::span<const double> z_grid,
                                   double width, const FockParams& fock);

/// Uniform grid helper for atom_noise_model.
std::vector<double> uniform_grid(double z_min, double z_max, int points);

/// One round of the measurement-feedback channel: Ramsey measurement of the
/// oscillator with feedback on the qubit,
///   K_+- = e^{+-i beta sigma_z sqrt(dt)} [cos(alpha X sqrt(dt))
///          +- sin(alpha X sqrt(dt))] / sqrt(2),
/// concatenated with the mirrored round K'_+-. Four Kraus operators
/// K'_a K_b, all products; product_form is populated. The 1/sqrt(2)
/// normalization makes each pair complete via (c+s)^2 + (c-s)^2 = 2.
/// Requires alpha sqrt(dt) ||X|| < pi/2 so the cos/sin branches stay
/// meaningful under truncation.
KrausChannel locc_channel(double alpha_t, double beta_t, double dt,
                          const FockParams& fock);

/// The generator the channel family converges to:
///   H = -2 alpha beta X sigma_z, E1 = i sqrt(2) alpha X,
///   E2 = sqrt(2) beta sigma_z, unit rates.
/// The jumps are separable but H is a genuine two-body coupling, so
/// check_c_prime fails with H as the witness.
LindbladGenerator locc_lindblad(double alpha_t, double beta_t,
                                const FockParams& fock);

/// Coherently coupled pair: H = omega_sim n + lambda_c X sigma_z, no jumps.
/// This is the entangling Hamiltonian whose conditional displacement loop
/// closes at t = 2 pi / omega_sim, producing full collapse and revival.
LindbladGenerator gravity_hamiltonian(double lambda_c, double omega_sim,
                                      const FockParams& fock);

}  // namespace quosc
