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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quosc/cli.hpp"
#include "quosc/core.hpp"
#include "quosc/experiments.hpp"
#include "quosc/models.hpp"
#include "quosc/selftest.hpp"

namespace py = pybind11;
using namespace quosc;

namespace {

Dims infer_dims(const Matrix& m) {
  if (m.rows() % 2 != 0 || m.rows() < 4 || m.rows() != m.cols()) {
    throw DimensionError(
        "expected a square matrix on the composite space (rows = 2 n_cut)");
  }
  return Dims{2, m.rows() / 2};
}

Operator as_operator(const Matrix& m) { return Operator(m, infer_dims(m)); }

DensityMatrix as_state(const Matrix& m) {
  return DensityMatrix(as_operator(m));
}

Subsystem subsystem_of(const std::string& name) {
  if (name == "qubit") return Subsystem::qubit;
  if (name == "fock") return Subsystem::fock;
  throw ValidationError("subsystem must be 'qubit' or 'fock'");
}

Model model_of(const std::string& name) {
  if (name == "gravity") return Model::gravity;
  if (name == "locc") return Model::locc;
  if (name == "stochastic-force") return Model::stochastic_force;
  if (name == "atom-noise") return Model::atom_noise;
  throw ValidationError("unknown model '" + name + "'");
}

KrausChannel channel_of(const std::vector<Matrix>& kraus) {
  KrausChannel ch;
  for (const Matrix& k : kraus) ch.kraus.push_back(as_operator(k));
  return ch;
}

LindbladGenerator generator_of(
    const Matrix& h, const std::vector<std::pair<double, Matrix>>& jumps) {
  std::vector<Jump> js;
  for (const auto& [rate, e] : jumps) js.push_back({rate, as_operator(e)});
  return LindbladGenerator(as_operator(h), std::move(js));
}

ProtocolConfig config_of(const py::kwargs& kw) {
  ProtocolConfig cfg;
  for (const auto& item : kw) {
    const std::string key = py::cast<std::string>(item.first);
    if (key == "model") cfg.model = model_of(py::cast<std::string>(item.second));
    else if (key == "alpha_t") cfg.alpha_t = py::cast<double>(item.second);
    else if (key == "beta_t") cfg.beta_t = py::cast<double>(item.second);
    else if (key == "omega_sim") cfg.omega_sim = py::cast<double>(item.second);
    else if (key == "delta") cfg.delta = py::cast<Complex>(item.second);
    else if (key == "t_max") cfg.t_max = py::cast<double>(item.second);
    else if (key == "dt") cfg.dt = py::cast<double>(item.second);
    else if (key == "n_cut") cfg.n_cut = py::cast<int>(item.second);
    else if (key == "n_atoms") cfg.n_atoms = py::cast<long long>(item.second);
    else if (key == "gamma_rate") cfg.gamma_rate = py::cast<double>(item.second);
    else if (key == "include_hamiltonian")
      cfg.include_hamiltonian = py::cast<bool>(item.second);
    else if (key == "z_min") cfg.z_min = py::cast<double>(item.second);
    else if (key == "z_max") cfg.z_max = py::cast<double>(item.second);
    else if (key == "z_points") cfg.z_points = py::cast<int>(item.second);
    else if (key == "z_width") cfg.z_width = py::cast<double>(item.second);
    else if (key == "store_every")
      cfg.store_every = py::cast<int>(item.second);
    else throw ValidationError("unknown protocol key '" + key + "'");
  }
  return cfg;
}

py::dict series_dict(const TimeSeries& s) {
  py::dict d;
  d["t"] = s.t;
  d["visibility"] = s.visibility;
  d["negativity"] = s.negativity;
  d["mean_n"] = s.mean_n;
  d["mean_X"] = s.mean_X;
  d["mean_P"] = s.mean_P;
  d["trace_error"] = s.trace_error;
  return d;
}

py::dict couplings_dict(const DerivedCouplings& c) {
  py::dict d;
  d["x0"] = c.x0;
  d["alpha"] = c.alpha;
  d["beta"] = c.beta;
  d["gamma"] = c.gamma;
  d["lambda"] = c.lambda;
  d["alpha_tilde"] = c.alpha_tilde;
  d["beta_tilde"] = c.beta_tilde;
  return d;
}

}  // namespace

PYBIND11_MODULE(_quosc, m) {
  m.doc() = "Qubit-oscillator open dynamics: Kraus channels, Lindblad "
            "evolution, measurement-feedback models, revival protocols.";

  py::register_exception<Error>(m, "QuoscError");

  // core
  m.def("fock_operators", [](int n_cut) {
    const FockOperators f = fock_operators(FockParams(n_cut));
    py::dict d;
    d["a"] = f.a.matrix();
    d["adag"] = f.adag.matrix();
    d["n"] = f.n.matrix();
    d["X"] = f.X.matrix();
    d["P"] = f.P.matrix();
    return d;
  }, py::arg("n_cut"));
  m.def("coherent_amplitudes", [](Complex delta, int n_cut) {
    return Vector(coherent_amplitudes(delta, FockParams(n_cut)));
  }, py::arg("delta"), py::arg("n_cut"));
  m.def("kron", [](const Matrix& q, const Matrix& f) {
    return kron(q, f).matrix();
  }, py::arg("qubit_factor"), py::arg("fock_factor"));
  m.def("partial_trace", [](const Matrix& rho, const std::string& keep) {
    return partial_trace(as_state(rho), subsystem_of(keep)).matrix();
  }, py::arg("rho"), py::arg("keep"));
  m.def("partial_transpose", [](const Matrix& rho, const std::string& sub) {
    return partial_transpose(as_state(rho), subsystem_of(sub)).matrix();
  }, py::arg("rho"), py::arg("subsystem") = "qubit");
  m.def("negativity", [](const Matrix& rho) { return negativity(as_state(rho)); },
        py::arg("rho"));
  m.def("expm_hermitian", [](const Matrix& h, double t) {
    return expm_hermitian(h, t);
  }, py::arg("H"), py::arg("t"));
  m.def("visibility", [](const Matrix& rho) { return visibility(as_state(rho)); },
        py::arg("rho"));

  // channels
  m.def("validate_channel", [](const std::vector<Matrix>& kraus) {
    return validate(channel_of(kraus));
  }, py::arg("kraus"));
  m.def("apply_channel", [](const std::vector<Matrix>& kraus, const Matrix& rho) {
    return apply(channel_of(kraus), as_state(rho)).matrix();
  }, py::arg("kraus"), py::arg("rho"));
  m.def("compose_channels", [](const std::vector<Matrix>& outer,
                               const std::vector<Matrix>& inner) {
    std::vector<Matrix> out;
    for (const Operator& k : compose(channel_of(outer), channel_of(inner)).kraus) {
      out.push_back(k.matrix());
    }
    return out;
  }, py::arg("outer"), py::arg("inner"));
  m.def("choi", [](const std::vector<Matrix>& kraus) {
    return choi(channel_of(kraus));
  }, py::arg("kraus"));
  m.def("mix_kraus", [](const std::vector<Matrix>& kraus, const Matrix& u) {
    std::vector<Matrix> out;
    for (const Operator& k : mix_kraus(channel_of(kraus), u).kraus) {
      out.push_back(k.matrix());
    }
    return out;
  }, py::arg("kraus"), py::arg("U"));
  m.def("is_product_operator", [](const Matrix& a) {
    const ProductReport r = is_product_operator(as_operator(a));
    return py::make_tuple(r.is_product, r.schmidt_rank, r.gap);
  }, py::arg("A"));

  // lindblad
  m.def("lindblad_rhs", [](const Matrix& h,
                           const std::vector<std::pair<double, Matrix>>& jumps,
                           const Matrix& rho) {
    return rhs(generator_of(h, jumps), as_state(rho)).matrix();
  }, py::arg("H"), py::arg("jumps"), py::arg("rho"));
  m.def("superoperator", [](const Matrix& h,
                            const std::vector<std::pair<double, Matrix>>& jumps) {
    return superoperator(generator_of(h, jumps)).matrix;
  }, py::arg("H"), py::arg("jumps"));
  m.def("check_c_prime", [](const Matrix& h,
                            const std::vector<std::pair<double, Matrix>>& jumps) {
    const SeparabilityReport r = check_c_prime(generator_of(h, jumps));
    py::dict d;
    d["h_is_product"] = r.h_is_product;
    d["h_is_local"] = r.h_is_local;
    d["jumps_all_product"] = r.jumps_all_product;
    d["completeness_local"] = r.completeness_local;
    d["verdict"] = r.verdict;
    d["witnesses"] = r.witnesses;
    return d;
  }, py::arg("H"), py::arg("jumps"));
  m.def("evolve", [](const Matrix& h,
                     const std::vector<std::pair<double, Matrix>>& jumps,
                     const Matrix& rho0, double t_max, double dt,
                     int store_every) {
    EvolveOptions opts;
    opts.store_every = store_every;
    const Trajectory traj =
        evolve(generator_of(h, jumps), as_state(rho0), t_max, dt, opts);
    std::vector<std::pair<double, Matrix>> out;
    for (const TrajectoryPoint& p : traj) out.emplace_back(p.t, p.state.matrix());
    return out;
  }, py::arg("H"), py::arg("jumps"), py::arg("rho0"), py::arg("t_max"),
     py::arg("dt"), py::arg("store_every") = 0);

  // models
  m.def("derive_couplings", [](double M_kg, double omega_rad_s, double d_m,
                               double m_kg, double ell_m, double G_N,
                               double hbar, long long n_atoms) {
    PhysicalParams p;
    p.M_osc = M_kg;
    p.omega = omega_rad_s;
    p.d = d_m;
    p.m_atom = m_kg;
    p.ell = ell_m;
    p.G_N = G_N;
    p.hbar = hbar;
    p.n_atoms = n_atoms;
    return couplings_dict(derive_couplings(p));
  }, py::arg("M_kg"), py::arg("omega_rad_s"), py::arg("d_m"),
     py::arg("m_kg") = 2.20694650e-25, py::arg("ell_m") = 1e-4,
     py::arg("G_N") = 6.67430e-11, py::arg("hbar") = 1.054571817e-34,
     py::arg("n_atoms") = 1);
  m.def("locc_channel", [](double alpha_t, double beta_t, double dt, int n_cut) {
    std::vector<Matrix> out;
    for (const Operator& k :
         locc_channel(alpha_t, beta_t, dt, FockParams(n_cut)).kraus) {
      out.push_back(k.matrix());
    }
    return out;
  }, py::arg("alpha_t"), py::arg("beta_t"), py::arg("dt"), py::arg("n_cut"));
  auto gen_tuple = [](const LindbladGenerator& g) {
    std::vector<std::pair<double, Matrix>> jumps;
    for (const Jump& j : g.jumps) jumps.emplace_back(j.rate, j.op.matrix());
    return py::make_tuple(g.H.matrix(), jumps);
  };
  m.def("locc_lindblad", [=](double alpha_t, double beta_t, int n_cut) {
    return gen_tuple(locc_lindblad(alpha_t, beta_t, FockParams(n_cut)));
  }, py::arg("alpha_t"), py::arg("beta_t"), py::arg("n_cut"));
  m.def("stochastic_force_model", [=](double alpha_sf, double gamma_rate,
                                      int n_cut) {
    return gen_tuple(stochastic_force_model(alpha_sf, gamma_rate,
                                            FockParams(n_cut)));
  }, py::arg("alpha_sf"), py::arg("gamma_rate"), py::arg("n_cut"));
  m.def("atom_noise_model", [=](double beta_tilde, std::vector<double> z_grid,
                                double width, int n_cut) {
    return gen_tuple(atom_noise_model(beta_tilde, z_grid, width,
                                      FockParams(n_cut)));
  }, py::arg("beta_tilde"), py::arg("z_grid"), py::arg("width"),
     py::arg("n_cut"));
  m.def("gravity_hamiltonian", [=](double lambda_c, double omega_sim,
                                   int n_cut) {
    return gen_tuple(gravity_hamiltonian(lambda_c, omega_sim,
                                         FockParams(n_cut)));
  }, py::arg("lambda_c"), py::arg("omega_sim"), py::arg("n_cut"));

  // experiments
  m.def("unboosted_revival", [](const py::kwargs& kw) {
    return series_dict(unboosted_revival(config_of(kw)));
  });
  m.def("boosted_protocol", [](const py::kwargs& kw) {
    const BoostedResult r = boosted_protocol(config_of(kw));
    py::dict d = series_dict(r.series);
    d["fitted_decay"] = r.fitted_decay;
    d["window_t_max"] = r.window_t_max;
    return d;
  });
  m.def("heating_series", [](const py::kwargs& kw) {
    const HeatingResult r = heating_series(config_of(kw));
    py::dict d = series_dict(r.series);
    d["fitted_dn_dt"] = r.fitted_dn_dt;
    return d;
  });
  m.def("entanglement_series", [](const py::kwargs& kw) {
    return series_dict(entanglement_series(config_of(kw)));
  });
  m.def("mimicry_report", [](const py::kwargs& kw) {
    const MimicryReport r = mimicry_report(config_of(kw));
    py::dict d;
    d["t"] = r.t;
    d["v_gravity"] = r.v_gravity;
    d["v_locc"] = r.v_locc;
    d["deficit"] = r.deficit;
    return d;
  });

  m.def("selftest", []() {
    std::ostringstream os;
    const int failures = run_selftest(os);
    return py::make_tuple(failures, os.str());
  });
}
