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
//
// End-to-end acceptance suite. Each criterion prints one pass/fail line;
// the process exits nonzero if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include "quosc/cli.hpp"
#include "quosc/core.hpp"
#include "quosc/experiments.hpp"
#include "quosc/models.hpp"
#include "quosc/random_states.hpp"

using namespace quosc;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Matrix kI2m = Matrix::Identity(2, 2);
const Matrix kSzm = (Matrix(2, 2) << 1, 0, 0, -1).finished();

struct Suite {
  int failures = 0;
  double worst_trace_error = 0.0;

  void criterion(int number, const std::string& name,
                 const std::function<bool(std::string&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::ostringstream line;
    line << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": "
         << name;
    if (!detail.empty()) line << " -- " << detail;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " (" << secs << " s)";
    std::cout << line.str() << std::endl;
    if (!ok) ++failures;
  }

  void track_trace(const TimeSeries& s) {
    for (double e : s.trace_error) {
      worst_trace_error = std::max(worst_trace_error, e);
    }
  }
};

DensityMatrix plus_vacuum(int nc) {
  Vector psi = Vector::Zero(2 * nc);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(nc) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(psi, Dims{2, nc});
}

std::string fmt_sci(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

int main() {
  Suite suite;

  suite.criterion(1, "coupling benchmark gamma ~ 3e-5 Hz", [&](std::string& d) {
    PhysicalParams p;
    p.M_osc = 1e-6;
    p.omega = 1e-3;
    p.d = 1e-3;
    const auto t0 = std::chrono::steady_clock::now();
    const DerivedCouplings c = derive_couplings(p);
    const double us = std::chrono::duration<double, std::micro>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    d = "gamma = " + fmt_sci(c.gamma) + " 1/s in [3.0e-5, 3.5e-5], " +
        fmt_sci(us) + " us";
    return c.gamma >= 3.0e-5 && c.gamma <= 3.5e-5 && us < 1000.0;
  });

  suite.criterion(2, "N-atom benchmark N*gamma ~ 1 Hz", [&](std::string& d) {
    PhysicalParams p;
    p.M_osc = 1e-6;
    p.omega = 1.0;
    p.d = 1e-3;
    p.n_atoms = 100000000;
    const auto t0 = std::chrono::steady_clock::now();
    const DerivedCouplings c = derive_couplings(p);
    const double us = std::chrono::duration<double, std::micro>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    const double ngamma = static_cast<double>(p.n_atoms) * c.gamma;
    d = "N*gamma = " + fmt_sci(ngamma) + " 1/s in [3.0, 3.7], " +
        fmt_sci(us) + " us";
    return ngamma >= 3.0 && ngamma <= 3.7 && us < 1000.0;
  });

  suite.criterion(3, "channel converges to the Lindblad generator",
                  [&](std::string& d) {
    const FockParams fock(25);
    const double a = 0.3, b = 0.2;
    const ChannelFamily family = [&](double dt) {
      return locc_channel(a, b, dt, fock);
    };
    const Superoperator target = superoperator(locc_lindblad(a, b, fock));
    std::vector<double> logdt, logres;
    double resid_finest = 0.0;
    for (double dt : {1e-3, 1e-4, 1e-5, 1e-6}) {
      const Superoperator g = extract_generator(family, dt);
      const double r = (g.matrix - target.matrix).cwiseAbs().maxCoeff();
      logdt.push_back(std::log(dt));
      logres.push_back(std::log(r));
      resid_finest = r;
    }
    const double n = 4.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < 4; ++i) {
      sx += logdt[i];
      sy += logres[i];
      sxx += logdt[i] * logdt[i];
      sxy += logdt[i] * logres[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    d = "slope = " + fmt_sci(slope) + " (>= 0.5), residual(1e-6) = " +
        fmt_sci(resid_finest) + " (< 1e-4)";
    return slope >= 0.5 && resid_finest < 1e-4;
  });

  suite.criterion(4, "non-entangling property of the separable models",
                  [&](std::string& d) {
    const int nc = 30;
    Rng rng(kDefaultSeed);
    double worst = 0.0;
    // 20 random product starts, 1000 channel steps each
    const KrausChannel ch = locc_channel(0.3, 0.3, 1e-3, FockParams(nc));
    for (int run = 0; run < 20; ++run) {
      DensityMatrix rho = random_product_state(nc, rng);
      for (int step = 0; step < 1000; ++step) {
        rho = apply(ch, rho);
        worst = std::max(worst, negativity(rho));
        if (worst > 1e-8) break;
      }
      if (worst > 1e-8) break;
    }
    // full Lindblad trajectories of the two stochastic models
    ProtocolConfig cfg;
    cfg.n_cut = nc;
    cfg.t_max = 2.0;
    cfg.dt = 2e-3;
    cfg.store_every = 50;
    for (Model m : {Model::stochastic_force, Model::atom_noise}) {
      cfg.model = m;
      const TimeSeries s = entanglement_series(cfg);
      suite.track_trace(s);
      for (double neg : s.negativity) worst = std::max(worst, neg);
    }
    d = "max negativity = " + fmt_sci(worst) + " (<= 1e-8)";
    return worst <= 1e-8;
  });

  suite.criterion(5, "revival against monotone decay", [&](std::string& d) {
    ProtocolConfig cfg;
    cfg.alpha_t = 0.3;
    cfg.beta_t = 0.3;
    cfg.n_cut = 40;
    cfg.store_every = 50;

    cfg.model = Model::gravity;
    const TimeSeries grav = unboosted_revival(cfg);
    suite.track_trace(grav);
    const double v_grav = grav.visibility.back();

    cfg.model = Model::locc;
    const TimeSeries locc = unboosted_revival(cfg);
    suite.track_trace(locc);
    const double deficit = v_grav - locc.visibility.back();

    cfg.model = Model::stochastic_force;
    cfg.gamma_rate = 1.0;
    const TimeSeries sf = unboosted_revival(cfg);
    suite.track_trace(sf);
    bool monotone = true;
    for (std::size_t i = 1; i < sf.size(); ++i) {
      if (sf.visibility[i] > sf.visibility[i - 1] + 1e-9) monotone = false;
    }
    d = "v_grav(T) = " + fmt_sci(v_grav) + " (>= 1-1e-5), deficit = " +
        fmt_sci(deficit) + " (> 0), stochastic monotone = " +
        (monotone ? "yes" : "no");
    return v_grav >= 1.0 - 1e-5 && deficit > 0.0 && monotone;
  });

  suite.criterion(6, "heating law d<n>/dt = 2 alpha^2", [&](std::string& d) {
    ProtocolConfig cfg;
    cfg.model = Model::locc;
    cfg.beta_t = 0.2;
    cfg.n_cut = 30;
    double worst_rel = 0.0;
    for (double a : {0.1, 0.3}) {
      cfg.alpha_t = a;
      const HeatingResult r = heating_series(cfg);
      suite.track_trace(r.series);
      worst_rel = std::max(
          worst_rel, std::abs(r.fitted_dn_dt - 2.0 * a * a) / (2.0 * a * a));
    }
    d = "worst relative error = " + fmt_sci(worst_rel) + " (<= 0.01)";
    return worst_rel <= 0.01;
  });

  suite.criterion(7, "stochastic force law d<P>/dt = 2 gamma alpha <sz>",
                  [&](std::string& d) {
    const int nc = 30;
    const FockParams fock(nc);
    const FockOperators f = fock_operators(fock);
    const Matrix p_full = kron(kI2m, f.P.matrix()).matrix();
    const Matrix sz_full = kron(kSzm, Matrix::Identity(nc, nc)).matrix();
    const double alpha = 0.2;
    double worst = 0.0;
    for (double gamma : {0.5, 2.0}) {
      const LindbladGenerator gen = stochastic_force_model(alpha, gamma, fock);
      for (int which = 0; which < 3; ++which) {
        Vector psi = Vector::Zero(2 * nc);
        if (which == 0) psi(0) = 1.0;
        else if (which == 1) psi(nc) = 1.0;
        else {
          psi(0) = 1.0 / std::sqrt(2.0);
          psi(nc) = 1.0 / std::sqrt(2.0);
        }
        EvolveOptions opts;
        opts.store_every = 100;
        const Trajectory traj =
            evolve(gen, DensityMatrix::pure(psi, Dims{2, nc}), 1.0, 1e-3,
                   opts);
        for (const TrajectoryPoint& p : traj) {
          const double dp =
              (rhs_matrix(gen, p.state.matrix()) * p_full).trace().real();
          const double sz = (p.state.matrix() * sz_full).trace().real();
          worst = std::max(worst, std::abs(dp - 2.0 * gamma * alpha * sz));
          suite.worst_trace_error =
              std::max(suite.worst_trace_error,
                       std::abs(p.state.matrix().trace() - Complex(1, 0)));
        }
      }
    }
    d = "worst deviation = " + fmt_sci(worst) + " (<= 1e-6)";
    return worst <= 1e-6;
  });

  suite.criterion(8, "Kraus mixing hides the product structure",
                  [&](std::string& d) {
    Rng rng(kDefaultSeed + 1);
    const KrausChannel ch = locc_channel(0.3, 0.2, 1e-2, FockParams(15));
    const Matrix c0 = choi(ch);
    double worst_drift = 0.0;
    int mixes_with_nonproduct = 0;
    for (int it = 0; it < 20; ++it) {
      const KrausChannel mixed = mix_kraus(ch, random_unitary(4, rng));
      worst_drift =
          std::max(worst_drift, (choi(mixed) - c0).cwiseAbs().maxCoeff());
      for (const Operator& k : mixed.kraus) {
        if (!is_product_operator(k).is_product) {
          ++mixes_with_nonproduct;
          break;
        }
      }
    }
    d = "worst Choi drift = " + fmt_sci(worst_drift) +
        " (<= 1e-10), non-product in " +
        std::to_string(mixes_with_nonproduct) + "/20 mixes";
    return worst_drift <= 1e-10 && mixes_with_nonproduct == 20;
  });

  suite.criterion(9, "boosted dephasing matches the coherence-block rate",
                  [&](std::string& d) {
    ProtocolConfig cfg;
    cfg.model = Model::locc;
    cfg.beta_t = 0.0;
    cfg.n_cut = 40;
    cfg.store_every = 2;
    double worst_rel = 0.0;
    for (double a : {0.1, 0.3}) {
      for (double delta : {1.0, 2.0}) {
        cfg.alpha_t = a;
        cfg.delta = Complex(delta, 0.0);
        const double oracle = 2.0 * a * a * (1.0 + 8.0 * delta * delta);
        cfg.t_max = 0.1 / oracle;
        cfg.dt = cfg.t_max / 2000.0;
        const BoostedResult r = boosted_protocol(cfg);
        suite.track_trace(r.series);
        worst_rel = std::max(worst_rel,
                             std::abs(r.fitted_decay - oracle) / oracle);
      }
    }
    // exact N bookkeeping
    cfg.alpha_t = 0.1;
    cfg.delta = Complex(1.0, 0.0);
    cfg.t_max = 0.5;
    cfg.dt = -1.0;
    cfg.n_atoms = 1;
    const double single = boosted_protocol(cfg).fitted_decay;
    cfg.n_atoms = 2;
    const double doubled = boosted_protocol(cfg).fitted_decay;
    const bool exact_doubling = doubled == 2.0 * single;
    d = "worst fitted-vs-oracle = " + fmt_sci(worst_rel) +
        " (<= 0.02), doubling exact = " + (exact_doubling ? "yes" : "no");
    return worst_rel <= 0.02 && exact_doubling;
  });

  suite.criterion(10, "numerics hygiene", [&](std::string& d) {
    // RK4 step-halving order on a damped oscillator
    const FockParams fock(16);
    const FockOperators f = fock_operators(fock);
    std::vector<Jump> jumps;
    jumps.push_back({0.4, kron(kI2m, f.a.matrix())});
    const LindbladGenerator gen(kron(kI2m, f.n.matrix()), jumps);
    Vector psi = Vector::Zero(32);
    psi.head(16) = coherent_amplitudes(1.0, fock);
    const DensityMatrix rho0 = DensityMatrix::pure(psi, Dims{2, 16});
    EvolveOptions opts;
    opts.store_every = 1 << 20;
    std::vector<double> logdt, logdiff;
    for (double dt : {4e-3, 2e-3, 1e-3, 5e-4}) {
      const Matrix r1 = evolve(gen, rho0, 1.0, dt, opts).back().state.matrix();
      const Matrix r2 =
          evolve(gen, rho0, 1.0, dt / 2, opts).back().state.matrix();
      logdt.push_back(std::log(dt));
      logdiff.push_back(std::log((r1 - r2).cwiseAbs().maxCoeff()));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < 4; ++i) {
      sx += logdt[i];
      sy += logdiff[i];
      sxx += logdt[i] * logdt[i];
      sxy += logdt[i] * logdiff[i];
    }
    const double slope = (4.0 * sxy - sx * sy) / (4.0 * sxx - sx * sx);

    // selftest scenario through the shipped binary
    int selftest_code = -1;
#ifdef QUOSC_CLI_PATH
    const std::string cmd =
        std::string(QUOSC_CLI_PATH) + " --scenario=selftest > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status != -1 && WIFEXITED(status)) {
      selftest_code = WEXITSTATUS(status);
    }
#endif
    d = "RK4 slope = " + fmt_sci(slope) +
        " (>= 3.5), worst trace drift = " + fmt_sci(suite.worst_trace_error) +
        " (<= 1e-8), selftest exit = " + std::to_string(selftest_code);
    return slope >= 3.5 && suite.worst_trace_error <= 1e-8 &&
           selftest_code == 0;
  });

  std::cout << (suite.failures == 0 ? "acceptance: all criteria passed"
                                    : "acceptance: " +
                                          std::to_string(suite.failures) +
                                          " criterion(s) failed")
            << std::endl;
  return suite.failures == 0 ? 0 : 1;
}
