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

#include "quosc/experiments.hpp"

#include <cmath>
#include <numbers>

#include "quosc/core.hpp"

namespace quosc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double ls_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw FitError("ls_slope: need at least 2 aligned points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw FitError("ls_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / det;
}

double real_expectation(const Matrix& rho, const Matrix& obs) {
  return (rho * obs).trace().real();
}

DensityMatrix plus_vacuum(const FockParams& fock) {
  const Index nc = fock.n_cut;
  Vector psi = Vector::Zero(2 * nc);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(nc) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(psi, Dims{2, nc});
}

DensityMatrix cat_state(Complex delta, const FockParams& fock) {
  const Index nc = fock.n_cut;
  const Vector up = coherent_amplitudes(delta, fock);
  const Vector down = coherent_amplitudes(-delta, fock);
  Vector psi(2 * nc);
  psi.head(nc) = up / std::sqrt(2.0);
  psi.tail(nc) = down / std::sqrt(2.0);
  return DensityMatrix::pure(psi, Dims{2, nc});
}

enum class VisibilityKind { plain, cat_readout };

TimeSeries sample_series(const Trajectory& traj, const FockParams& fock,
                         VisibilityKind kind, Complex delta) {
  const FockOperators f = fock_operators(fock);
  const Matrix n_full = kron(Matrix::Identity(2, 2), f.n.matrix()).matrix();
  const Matrix x_full = kron(Matrix::Identity(2, 2), f.X.matrix()).matrix();
  const Matrix p_full = kron(Matrix::Identity(2, 2), f.P.matrix()).matrix();
  TimeSeries s;
  for (const TrajectoryPoint& p : traj) {
    s.t.push_back(p.t);
    s.visibility.push_back(kind == VisibilityKind::plain
                               ? visibility(p.state)
                               : cat_visibility(p.state, delta, fock));
    s.negativity.push_back(negativity(p.state));
    s.mean_n.push_back(real_expectation(p.state.matrix(), n_full));
    s.mean_X.push_back(real_expectation(p.state.matrix(), x_full));
    s.mean_P.push_back(real_expectation(p.state.matrix(), p_full));
    s.trace_error.push_back(
        std::abs(p.state.matrix().trace() - Complex(1.0, 0.0)));
  }
  s.check_invariants();
  return s;
}

}  // namespace

void TimeSeries::check_invariants() const {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (visibility[i] < 0.0 || visibility[i] > 1.0 + 1e-9) {
      throw ValidationError("TimeSeries: visibility out of [0,1] at t=" +
                            std::to_string(t[i]));
    }
    if (negativity[i] < -1e-10) {
      throw ValidationError("TimeSeries: negativity below -1e-10 at t=" +
                            std::to_string(t[i]));
    }
    if (trace_error[i] > 1e-8) {
      throw ValidationError("TimeSeries: trace error above 1e-8 at t=" +
                            std::to_string(t[i]));
    }
  }
}

double visibility(const DensityMatrix& rho) {
  const DensityMatrix reduced = partial_trace(rho, Subsystem::qubit);
  return 2.0 * std::abs(reduced.matrix()(0, 1));
}

double cat_visibility(const DensityMatrix& rho, Complex delta,
                      const FockParams& fock) {
  const Index nc = fock.n_cut;
  if (rho.dims() != Dims{2, nc}) {
    throw DimensionError("cat_visibility: dimension mismatch");
  }
  const Vector up = coherent_amplitudes(delta, fock);
  const Vector down = coherent_amplitudes(-delta, fock);
  const auto block = rho.matrix().block(0, nc, nc, nc);  // <0|rho|1>
  const Complex elem = up.adjoint() * block * down;
  return 2.0 * std::abs(elem);
}

double default_dt(const ProtocolConfig& cfg) {
  const double lambda = std::abs(2.0 * cfg.alpha_t * cfg.beta_t);
  const double scale = std::max(
      {cfg.omega_sim, cfg.gamma_rate, lambda, 1.0});
  return 1e-3 / scale;
}

LindbladGenerator build_generator(const ProtocolConfig& cfg,
                                  bool with_free_oscillator,
                                  bool with_interaction_hamiltonian) {
  const FockParams fock(cfg.n_cut);
  const FockOperators f = fock_operators(fock);
  const Operator free_h =
      cfg.omega_sim * kron(Matrix::Identity(2, 2), f.n.matrix());
  const Operator zero = Operator::zero(Dims{2, cfg.n_cut});

  switch (cfg.model) {
    case Model::gravity: {
      const double lambda =
          with_interaction_hamiltonian ? 2.0 * cfg.alpha_t * cfg.beta_t : 0.0;
      return gravity_hamiltonian(lambda,
                                 with_free_oscillator ? cfg.omega_sim : 0.0,
                                 fock);
    }
    case Model::locc: {
      LindbladGenerator base = locc_lindblad(cfg.alpha_t, cfg.beta_t, fock);
      Operator h = with_interaction_hamiltonian ? base.H : zero;
      if (with_free_oscillator) h = h + free_h;
      return LindbladGenerator(std::move(h), std::move(base.jumps));
    }
    case Model::stochastic_force: {
      LindbladGenerator base =
          stochastic_force_model(cfg.alpha_t, cfg.gamma_rate, fock);
      Operator h = with_free_oscillator ? free_h : zero;
      return LindbladGenerator(std::move(h), std::move(base.jumps));
    }
    case Model::atom_noise: {
      const std::vector<double> grid =
          uniform_grid(cfg.z_min, cfg.z_max, cfg.z_points);
      LindbladGenerator base =
          atom_noise_model(cfg.beta_t, grid, cfg.z_width, fock);
      Operator h = with_free_oscillator ? free_h : zero;
      return LindbladGenerator(std::move(h), std::move(base.jumps));
    }
  }
  throw ValidationError("build_generator: unknown model");
}

TimeSeries unboosted_revival(const ProtocolConfig& cfg) {
  if (cfg.model == Model::atom_noise) {
    throw ValidationError(
        "unboosted_revival: supported models are gravity, locc, "
        "stochastic-force");
  }
  const FockParams fock(cfg.n_cut);
  const double t_max =
      cfg.t_max > 0.0 ? cfg.t_max : kTwoPi / cfg.omega_sim;
  const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(cfg);
  const LindbladGenerator gen = build_generator(
      cfg, true, cfg.include_hamiltonian.value_or(true));
  EvolveOptions opts;
  opts.store_every = cfg.store_every;
  const Trajectory traj = evolve(gen, plus_vacuum(fock), t_max, dt, opts);
  return sample_series(traj, fock, VisibilityKind::plain, cfg.delta);
}

BoostedResult boosted_protocol(const ProtocolConfig& cfg) {
  if (cfg.model != Model::locc) {
    throw ValidationError("boosted_protocol: requires the locc model");
  }
  const FockParams fock(cfg.n_cut);
  const double t_max = cfg.t_max > 0.0 ? cfg.t_max : 1.0;
  const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(cfg);
  const LindbladGenerator gen = build_generator(
      cfg, false, cfg.include_hamiltonian.value_or(false));
  EvolveOptions opts;
  opts.store_every = cfg.store_every;
  const Trajectory traj =
      evolve(gen, cat_state(cfg.delta, fock), t_max, dt, opts);
  TimeSeries s =
      sample_series(traj, fock, VisibilityKind::cat_readout, cfg.delta);

  // fit on the early window: contrast still above 95% of its initial value,
  // where the decay is exponential to well under the comparison tolerances
  const double v0 = s.visibility.front();
  std::vector<double> ts, logv;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.visibility[i] < 1e-6) break;
    if (s.visibility[i] < 0.95 * v0 && ts.size() >= 5) break;
    ts.push_back(s.t[i]);
    logv.push_back(std::log(s.visibility[i]));
  }
  if (ts.size() < 5) {
    throw FitError(
        "boosted_protocol: visibility floor reached before 5 samples");
  }
  const double rate = -ls_slope(ts, logv);
  return BoostedResult{std::move(s), static_cast<double>(cfg.n_atoms) * rate,
                       ts.back()};
}

HeatingResult heating_series(const ProtocolConfig& cfg) {
  if (cfg.model != Model::locc) {
    throw ValidationError(
        "heating_series: requires a generator carrying the oscillator noise "
        "operator (locc model)");
  }
  const FockParams fock(cfg.n_cut);
  const double t_max = cfg.t_max > 0.0 ? cfg.t_max : 1.0;
  const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(cfg);
  const LindbladGenerator gen = build_generator(
      cfg, false, cfg.include_hamiltonian.value_or(false));
  EvolveOptions opts;
  opts.store_every = cfg.store_every;
  const Trajectory traj = evolve(gen, plus_vacuum(fock), t_max, dt, opts);

  // truncation guard: the fit is only meaningful while the ladder top stays
  // empty
  const Index nc = fock.n_cut;
  for (const TrajectoryPoint& p : traj) {
    const DensityMatrix osc = partial_trace(p.state, Subsystem::fock);
    double top = 0.0;
    for (Index k = std::max<Index>(nc - 4, 0); k < nc; ++k) {
      top += osc.matrix()(k, k).real();
    }
    if (top > 1e-8) {
      throw TruncationError(
          "heating_series: population " + std::to_string(top) +
          " above level n_cut-5 at t=" + std::to_string(p.t) +
          "; raise n_cut or shorten the run");
    }
  }

  TimeSeries s = sample_series(traj, fock, VisibilityKind::plain, cfg.delta);
  const double slope = ls_slope(s.t, s.mean_n);
  return HeatingResult{std::move(s),
                       static_cast<double>(cfg.n_atoms) * slope};
}

TimeSeries entanglement_series(const ProtocolConfig& cfg) {
  const FockParams fock(cfg.n_cut);
  const double t_max =
      cfg.t_max > 0.0 ? cfg.t_max : kTwoPi / cfg.omega_sim;
  const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(cfg);
  const LindbladGenerator gen = build_generator(
      cfg, true, cfg.include_hamiltonian.value_or(true));
  EvolveOptions opts;
  opts.store_every = cfg.store_every;
  const Trajectory traj = evolve(gen, plus_vacuum(fock), t_max, dt, opts);
  return sample_series(traj, fock, VisibilityKind::plain, cfg.delta);
}

MimicryReport mimicry_report(const ProtocolConfig& cfg) {
  ProtocolConfig grav = cfg;
  grav.model = Model::gravity;
  grav.include_hamiltonian = true;
  ProtocolConfig locc = cfg;
  locc.model = Model::locc;
  locc.include_hamiltonian = true;

  const TimeSeries g = unboosted_revival(grav);
  const TimeSeries l = unboosted_revival(locc);
  if (g.size() != l.size()) {
    throw ValidationError("mimicry_report: runs sampled differently");
  }
  MimicryReport rep;
  rep.t = g.t;
  rep.v_gravity = g.visibility;
  rep.v_locc = l.visibility;
  rep.deficit = g.visibility.back() - l.visibility.back();
  return rep;
}

}  // namespace quosc
