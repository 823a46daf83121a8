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

#include "quosc/selftest.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "quosc/core.hpp"
#include "quosc/experiments.hpp"
#include "quosc/random_states.hpp"

namespace quosc {

namespace {

struct Harness {
  std::ostream& out;
  int failures = 0;

  void run(const std::string& name,
           const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    out << (ok ? "[ok]   " : "[FAIL] ") << name;
    if (!ok && !detail.empty()) out << " (" << detail << ")";
    out << '\n';
    if (!ok) ++failures;
  }
};

const Matrix kSz = (Matrix(2, 2) << 1, 0, 0, -1).finished();

DensityMatrix embedded_bell(int nc) {
  Vector psi = Vector::Zero(2 * nc);
  psi(0) = 1.0 / std::sqrt(2.0);       // |0>|0>
  psi(nc + 1) = 1.0 / std::sqrt(2.0);  // |1>|1>
  return DensityMatrix::pure(psi, Dims{2, nc});
}

}  // namespace

int run_selftest(std::ostream& out) {
  Harness h{out};
  Rng rng(kDefaultSeed);

  h.run("trace duality Tr(tr_B(rho) M) = Tr(rho (M x I))", [&](std::string& d) {
    const int nc = 8;
    double worst = 0.0;
    for (int it = 0; it < 100; ++it) {
      const DensityMatrix rho = random_density(Dims{2, nc}, rng);
      const Matrix m = ginibre(2, rng);
      const Complex lhs =
          (partial_trace(rho, Subsystem::qubit).matrix() * m).trace();
      const Complex rhs =
          (rho.matrix() * kron(m, Matrix::Identity(nc, nc)).matrix()).trace();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    d = "worst " + std::to_string(worst);
    return worst <= 1e-10;
  });

  h.run("negativity: 0 on product states, 1/2 on Bell", [&](std::string& d) {
    const int nc = 8;
    double worst = 0.0;
    for (int it = 0; it < 100; ++it) {
      worst = std::max(worst, negativity(random_product_state(nc, rng)));
    }
    const double bell = negativity(embedded_bell(nc));
    d = "product worst " + std::to_string(worst) + ", bell " +
        std::to_string(bell);
    return worst <= 1e-10 && std::abs(bell - 0.5) <= 1e-9;
  });

  h.run("propagator unitarity over 50 random generators", [&](std::string& d) {
    double worst = 0.0;
    for (int it = 0; it < 50; ++it) {
      const Matrix hmat = random_hermitian(12, rng);
      const Matrix u = expm_hermitian(hmat, 0.37);
      worst = std::max(worst, (u.adjoint() * u - Matrix::Identity(12, 12))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
    d = "worst " + std::to_string(worst);
    return worst <= 1e-10;
  });

  h.run("coherent overlap and occupation", [&](std::string& d) {
    const FockParams fock(40);
    const Vector plus = coherent_amplitudes(1.0, fock);
    const Vector minus = coherent_amplitudes(-1.0, fock);
    const double overlap2 = std::norm(Complex(plus.adjoint() * minus));
    const double err1 = std::abs(overlap2 - std::exp(-4.0));
    const Vector amp = coherent_amplitudes(1.5, fock);
    const FockOperators f = fock_operators(fock);
    const double nbar = Complex(amp.adjoint() * f.n.matrix() * amp).real();
    const double err2 = std::abs(nbar - 2.25);
    d = "overlap err " + std::to_string(err1) + ", <n> err " +
        std::to_string(err2);
    return err1 <= 1e-8 && err2 <= 1e-6;
  });

  h.run("measurement-feedback channel completeness", [&](std::string& d) {
    const double resid = validate(locc_channel(0.3, 0.2, 1e-3, FockParams(12)));
    d = "residual " + std::to_string(resid);
    return resid <= 1e-12;
  });

  h.run("Choi invariance under Kraus mixing", [&](std::string& d) {
    const KrausChannel ch = locc_channel(0.3, 0.2, 1e-2, FockParams(6));
    const Matrix c0 = choi(ch);
    double worst = 0.0;
    bool nonproduct_seen = false;
    for (int it = 0; it < 5; ++it) {
      const KrausChannel mixed = mix_kraus(ch, random_unitary(4, rng));
      worst = std::max(worst, (choi(mixed) - c0).cwiseAbs().maxCoeff());
      for (const Operator& k : mixed.kraus) {
        if (!is_product_operator(k).is_product) nonproduct_seen = true;
      }
    }
    d = "worst Choi drift " + std::to_string(worst);
    return worst <= 1e-10 && nonproduct_seen;
  });

  h.run("compose agrees with sequential apply", [&](std::string& d) {
    const FockParams fock(8);
    const KrausChannel a = locc_channel(0.2, 0.4, 2e-3, fock);
    const KrausChannel b = locc_channel(0.5, 0.1, 1e-3, fock);
    const DensityMatrix rho = random_density(Dims{2, 8}, rng);
    const Matrix lhs = apply(compose(a, b), rho).matrix();
    const Matrix rhs_m = apply(a, apply(b, rho)).matrix();
    const double err = (lhs - rhs_m).cwiseAbs().maxCoeff();
    d = "difference " + std::to_string(err);
    return err <= 1e-12;
  });

  h.run("channel generator matches the Lindblad form", [&](std::string& d) {
    const FockParams fock(10);
    const ChannelFamily family = [&](double dt) {
      return locc_channel(0.3, 0.2, dt, fock);
    };
    const Superoperator target = superoperator(locc_lindblad(0.3, 0.2, fock));
    const Superoperator g = extract_generator(family, 1e-4);
    const double resid = (g.matrix - target.matrix).cwiseAbs().maxCoeff();
    d = "residual " + std::to_string(resid);
    return resid <= 0.02;
  });

  h.run("superoperator preserves hermiticity", [&](std::string& d) {
    const Superoperator s = superoperator(locc_lindblad(0.3, 0.2, FockParams(6)));
    const double defect = s.hermiticity_defect();
    d = "defect " + std::to_string(defect);
    return defect <= 1e-12;
  });

  h.run("separability verdicts", [&](std::string& d) {
    const FockParams fock(12);
    const auto sf = check_c_prime(stochastic_force_model(0.2, 1.0, fock));
    const auto grid = uniform_grid(-10, 10, 81);
    const auto an = check_c_prime(atom_noise_model(0.3, grid, 1.0, fock));
    const auto lc = check_c_prime(locc_lindblad(0.3, 0.2, fock));
    const bool lc_expected = !lc.verdict && lc.h_is_product && !lc.h_is_local &&
                             lc.witnesses == std::vector<int>{-1};
    d = "sf " + std::to_string(sf.verdict) + ", an " +
        std::to_string(an.verdict) + ", locc " + std::to_string(lc.verdict);
    return sf.verdict && an.verdict && lc_expected;
  });

  h.run("sigma_z conserved by every model generator", [&](std::string& d) {
    const FockParams fock(10);
    const Matrix sz_full = kron(kSz, Matrix::Identity(10, 10)).matrix();
    std::vector<LindbladGenerator> gens;
    gens.push_back(stochastic_force_model(0.2, 1.0, fock));
    gens.push_back(locc_lindblad(0.3, 0.2, fock));
    gens.push_back(gravity_hamiltonian(0.25, 1.0, fock));
    const auto grid = uniform_grid(-8, 8, 33);
    gens.push_back(atom_noise_model(0.3, grid, 1.0, fock));
    double worst = 0.0;
    for (const auto& gen : gens) {
      for (int it = 0; it < 5; ++it) {
        const DensityMatrix rho = random_density(Dims{2, 10}, rng);
        const double drift =
            std::abs((rhs(gen, rho).matrix() * sz_full).trace());
        worst = std::max(worst, drift);
      }
    }
    d = "worst d<sz>/dt " + std::to_string(worst);
    return worst <= 1e-9;
  });

  h.run("RK4 order on a damped oscillator", [&](std::string& d) {
    const FockParams fock(16);
    const FockOperators f = fock_operators(fock);
    std::vector<Jump> jumps;
    jumps.push_back({0.4, kron(Matrix::Identity(2, 2), f.a.matrix())});
    const LindbladGenerator gen(
        kron(Matrix::Identity(2, 2), f.n.matrix()), std::move(jumps));
    Vector psi = Vector::Zero(32);
    const Vector amp = coherent_amplitudes(1.0, fock);
    psi.head(16) = amp;
    const DensityMatrix rho0 = DensityMatrix::pure(psi, Dims{2, 16});
    std::vector<double> logdt, logdiff;
    for (double dt : {4e-3, 2e-3, 1e-3, 5e-4}) {
      EvolveOptions opts;
      opts.store_every = 1 << 20;  // endpoint only
      const Matrix r1 = evolve(gen, rho0, 1.0, dt, opts).back().state.matrix();
      const Matrix r2 =
          evolve(gen, rho0, 1.0, dt / 2, opts).back().state.matrix();
      logdt.push_back(std::log(dt));
      logdiff.push_back(std::log((r1 - r2).cwiseAbs().maxCoeff()));
    }
    const double n = static_cast<double>(logdt.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < logdt.size(); ++i) {
      sx += logdt[i];
      sy += logdiff[i];
      sxx += logdt[i] * logdt[i];
      sxy += logdt[i] * logdiff[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    d = "slope " + std::to_string(slope);
    return slope >= 3.5;
  });

  h.run("stochastic force law d<P>/dt = 2 gamma alpha <sz>",
        [&](std::string& d) {
    const FockParams fock(30);
    const FockOperators f = fock_operators(fock);
    const Matrix p_full = kron(Matrix::Identity(2, 2), f.P.matrix()).matrix();
    const Matrix sz_full =
        kron(kSz, Matrix::Identity(30, 30)).matrix();
    const LindbladGenerator gen = stochastic_force_model(0.2, 0.7, fock);
    double worst = 0.0;
    for (int qubit = 0; qubit < 3; ++qubit) {
      Vector q = Vector::Zero(2);
      if (qubit == 0) q(0) = 1.0;
      else if (qubit == 1) q(1) = 1.0;
      else q = Vector::Constant(2, 1.0 / std::sqrt(2.0));
      Vector psi = Vector::Zero(60);
      const Vector amp = coherent_amplitudes(0.5, fock);
      psi.head(30) = q(0) * amp;
      psi.tail(30) = q(1) * amp;
      const DensityMatrix rho = DensityMatrix::pure(psi, Dims{2, 30});
      const double dp = (rhs(gen, rho).matrix() * p_full).trace().real();
      const double sz = (rho.matrix() * sz_full).trace().real();
      worst = std::max(worst, std::abs(dp - 2.0 * 0.7 * 0.2 * sz));
    }
    d = "worst " + std::to_string(worst);
    return worst <= 1e-6;
  });

  h.run("heating rate 2 alpha^2", [&](std::string& d) {
    ProtocolConfig cfg;
    cfg.model = Model::locc;
    cfg.alpha_t = 0.3;
    cfg.beta_t = 0.2;
    cfg.n_cut = 25;
    cfg.t_max = 0.5;
    const HeatingResult r = heating_series(cfg);
    const double expected = 2.0 * cfg.alpha_t * cfg.alpha_t;
    const double rel = std::abs(r.fitted_dn_dt - expected) / expected;
    d = "relative error " + std::to_string(rel);
    return rel <= 0.01;
  });

  h.run("gravity revival and mid-period entanglement", [&](std::string& d) {
    const FockParams fock(20);
    const LindbladGenerator gen = gravity_hamiltonian(0.25, 1.0, fock);
    Vector psi = Vector::Zero(40);
    psi(0) = 1.0 / std::sqrt(2.0);
    psi(20) = 1.0 / std::sqrt(2.0);
    const DensityMatrix rho0 = DensityMatrix::pure(psi, Dims{2, 20});
    EvolveOptions opts;
    opts.store_every = 0;
    const Trajectory traj =
        evolve(gen, rho0, 2.0 * std::numbers::pi, 1e-3, opts);
    const double v_final = visibility(traj.back().state);
    double neg_mid = 0.0;
    for (const TrajectoryPoint& p : traj) {
      if (std::abs(p.t - std::numbers::pi) < 0.05) {
        neg_mid = std::max(neg_mid, negativity(p.state));
      }
    }
    d = "v(T) " + std::to_string(v_final) + ", N(T/2) " +
        std::to_string(neg_mid);
    return v_final >= 1.0 - 1e-5 && neg_mid > 0.01;
  });

  return h.failures;
}

}  // namespace quosc
