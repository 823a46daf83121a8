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

#include <optional>

#include "quosc/models.hpp"

namespace quosc {

enum class Model { gravity, locc, stochastic_force, atom_noise };

struct ProtocolConfig {
  Model model = Model::gravity;
  double alpha_t = 0.3;
  double beta_t = 0.3;
  double omega_sim = 1.0;
  Complex delta{1.0, 0.0};
  double t_max = -1.0;  // < 0: scenario default
  double dt = -1.0;     // < 0: 1e-3 / max(omega, gamma, |lambda|, 1)
  int n_cut = 40;
  long long n_atoms = 1;
  double gamma_rate = 1.0;  // stochastic-force jump rate
  // Boosted and heating runs drop the Hamiltonian by default ("noise only");
  // revival-type runs keep it. Set explicitly to override.
  std::optional<bool> include_hamiltonian;
  // atom-noise measurement grid
  double z_min = -10.0;
  double z_max = 10.0;
  int z_points = 81;
  double z_width = 1.0;
  int store_every = 0;  // 0: auto stride
};

/// Sampled observables along a protocol run. trace_error is |Tr rho - 1|.
struct TimeSeries {
  std::vector<double> t;
  std::vector<double> visibility;
  std::vector<double> negativity;
  std::vector<double> mean_n;
  std::vector<double> mean_X;
  std::vector<double> mean_P;
  std::vector<double> trace_error;

  std::size_t size() const { return t.size(); }
  /// Enforces the column bounds (visibility in [0, 1+1e-9], negativity
  /// >= -1e-10, trace_error <= 1e-8). Throws ValidationError.
  void check_invariants() const;
};

/// Interferometric fringe contrast: twice the magnitude of the reduced
/// qubit coherence, 2 |<0| Tr_osc rho |1>|.
double visibility(const DensityMatrix& rho);

/// Readout contrast of the boosted protocol: the |delta><-delta| component
/// of the qubit coherence block, 2 |<delta| <0|rho|1> |-delta>|. This is
/// what survives the boost-reversal pulse; the plain qubit visibility is
/// blind to oscillator-side dephasing (the trace of the coherence block is
/// conserved by the X dissipator), so the readout element is the observable
/// that carries the heating signature.
double cat_visibility(const DensityMatrix& rho, Complex delta,
                      const FockParams& fock);

/// |+> (x) vacuum evolved over one full oscillator period T = 2 pi / omega.
/// Gravity shows full revival at T; the measurement-feedback model shows a
/// noise-degraded revival; the stochastic force decays monotonically.
TimeSeries unboosted_revival(const ProtocolConfig& cfg);

struct BoostedResult {
  TimeSeries series;  // visibility column carries the readout contrast
  double fitted_decay;  // n_atoms * (fitted single-atom log-slope)
  double window_t_max;  // fit window actually used
};

/// Cat state (|delta,0> + |-delta,1>)/sqrt(2) prepared instantaneously and
/// dephased under the measurement-feedback noise (Hamiltonian off unless
/// requested). The decay rate is fitted on the early window where the
/// readout contrast stays above 0.95 of its initial value; at least 5
/// samples must land there. N-atom scaling is rate bookkeeping: the
/// reported rate is n_atoms times the single-atom fit.
BoostedResult boosted_protocol(const ProtocolConfig& cfg);

struct HeatingResult {
  TimeSeries series;
  double fitted_dn_dt;  // n_atoms * (fitted single-atom slope)
};

/// Vacuum start under the E1-type noise; least-squares slope of <n>(t).
/// The X dissipator alone gives d<n>/dt = 2 alpha_t^2 exactly. Aborts with
/// TruncationError if population reaches the guarded top of the ladder.
HeatingResult heating_series(const ProtocolConfig& cfg);

/// Negativity along a trajectory from a product start, any model.
TimeSeries entanglement_series(const ProtocolConfig& cfg);

struct MimicryReport {
  std::vector<double> t;
  std::vector<double> v_gravity;
  std::vector<double> v_locc;
  double deficit;  // v_gravity(T) - v_locc(T)
};

/// Gravity versus measurement-feedback at matched coherent coupling
/// lambda = 2 alpha_t beta_t, same period, same start.
MimicryReport mimicry_report(const ProtocolConfig& cfg);

/// Generator the config describes, free oscillator term included for the
/// revival-type scenarios (strictly local, so it never affects the
/// separability verdicts).
LindbladGenerator build_generator(const ProtocolConfig& cfg,
                                  bool with_free_oscillator,
                                  bool with_interaction_hamiltonian);

/// Scenario default step: 1e-3 / max(omega_sim, gamma_rate, |lambda|, 1).
double default_dt(const ProtocolConfig& cfg);

}  // namespace quosc
