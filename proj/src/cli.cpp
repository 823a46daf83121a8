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

#include "quosc/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "quosc/core.hpp"
#include "quosc/selftest.hpp"

namespace quosc {

namespace {

std::string fmt(double v) {
  char buf[48];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (begin != end && *begin == '+') ++begin;  // from_chars rejects '+'
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end && begin != end;
}

bool parse_int(const std::string& s, long long& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "1" || s == "true") {
    out = true;
    return true;
  }
  if (s == "0" || s == "false") {
    out = false;
    return true;
  }
  return false;
}

// accepts "a", "bi", "a+bi", "a-bi" with bare "i" meaning 1i
bool parse_complex(const std::string& s, Complex& out) {
  if (s.empty()) return false;
  if (s.back() != 'i' && s.back() != 'I') {
    double re;
    if (!parse_double(s, re)) return false;
    out = Complex(re, 0.0);
    return true;
  }
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' &&
        body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](const std::string& part, double& im) {
    if (part.empty() || part == "+") {
      im = 1.0;
      return true;
    }
    if (part == "-") {
      im = -1.0;
      return true;
    }
    return parse_double(part, im);
  };
  if (split == std::string::npos) {
    double im;
    if (!imag_of(body, im)) return false;
    out = Complex(0.0, im);
    return true;
  }
  double re, im;
  if (!parse_double(body.substr(0, split), re)) return false;
  if (!imag_of(body.substr(split), im)) return false;
  out = Complex(re, im);
  return true;
}

bool parse_model(const std::string& s, Model& out) {
  if (s == "gravity") out = Model::gravity;
  else if (s == "locc") out = Model::locc;
  else if (s == "stochastic-force") out = Model::stochastic_force;
  else if (s == "atom-noise") out = Model::atom_noise;
  else return false;
  return true;
}

bool parse_scenario(const std::string& s, Scenario& out) {
  if (s == "revival") out = Scenario::revival;
  else if (s == "boosted") out = Scenario::boosted;
  else if (s == "heating") out = Scenario::heating;
  else if (s == "entanglement") out = Scenario::entanglement;
  else if (s == "mimic") out = Scenario::mimic;
  else if (s == "converge") out = Scenario::converge;
  else if (s == "couplings") out = Scenario::couplings;
  else if (s == "selftest") out = Scenario::selftest;
  else return false;
  return true;
}

struct Assignment {
  std::string key;
  std::string value;
};

// Applies one key=value pair; returns an error string on failure.
std::optional<std::string> apply_pair(const Assignment& kv, RunConfig& cfg,
                                      bool& scenario_set, bool& model_set) {
  const std::string& k = kv.key;
  const std::string& v = kv.value;
  auto bad_value = [&]() -> std::optional<std::string> {
    return "unparseable value for --" + k + ": '" + v + "'";
  };

  if (k == "scenario") {
    if (!parse_scenario(v, cfg.scenario)) return bad_value();
    scenario_set = true;
    return std::nullopt;
  }
  if (k == "output") {
    cfg.output_path = v;
    return std::nullopt;
  }
  if (k == "model") {
    if (!parse_model(v, cfg.protocol.model)) return bad_value();
    model_set = true;
    return std::nullopt;
  }
  if (k == "delta") {
    if (!parse_complex(v, cfg.protocol.delta)) return bad_value();
    return std::nullopt;
  }
  if (k == "include_h") {
    bool b;
    if (!parse_bool(v, b)) return bad_value();
    cfg.protocol.include_hamiltonian = b;
    return std::nullopt;
  }
  if (k == "n_cut" || k == "z_points" || k == "store_every" ||
      k == "n_atoms") {
    long long n;
    if (!parse_int(v, n)) return bad_value();
    if (k == "n_cut") cfg.protocol.n_cut = static_cast<int>(n);
    else if (k == "z_points") cfg.protocol.z_points = static_cast<int>(n);
    else if (k == "store_every")
      cfg.protocol.store_every = static_cast<int>(n);
    else {
      cfg.protocol.n_atoms = n;
      cfg.physical.n_atoms = n;
    }
    return std::nullopt;
  }

  double* target = nullptr;
  if (k == "alpha_t") target = &cfg.protocol.alpha_t;
  else if (k == "beta_t") target = &cfg.protocol.beta_t;
  else if (k == "omega_sim") target = &cfg.protocol.omega_sim;
  else if (k == "t_max") target = &cfg.protocol.t_max;
  else if (k == "dt") target = &cfg.protocol.dt;
  else if (k == "gamma_rate") target = &cfg.protocol.gamma_rate;
  else if (k == "z_min") target = &cfg.protocol.z_min;
  else if (k == "z_max") target = &cfg.protocol.z_max;
  else if (k == "z_width") target = &cfg.protocol.z_width;
  else if (k == "G_N_m3_kg_s2") target = &cfg.physical.G_N;
  else if (k == "hbar_J_s") target = &cfg.physical.hbar;
  else if (k == "m_kg") target = &cfg.physical.m_atom;
  else if (k == "M_kg") target = &cfg.physical.M_osc;
  else if (k == "ell_m") target = &cfg.physical.ell;
  else if (k == "d_m") target = &cfg.physical.d;
  else if (k == "omega_rad_s") target = &cfg.physical.omega;
  if (target == nullptr) return "unknown key '" + k + "'";
  if (!parse_double(v, *target)) return bad_value();
  return std::nullopt;
}

}  // namespace

std::string usage_text() {
  std::ostringstream os;
  os << "usage: quosc --scenario=NAME [--key=value ...] [--config=FILE]\n"
     << "\n"
     << "scenarios:\n"
     << "  revival       |+> (x) vacuum over one oscillator period; CSV series\n"
     << "  boosted       cat-state dephasing; CSV series + '# fitted_decay='\n"
     << "  heating       vacuum heating under the feedback noise; CSV series\n"
     << "                + '# fitted_dn_dt='\n"
     << "  entanglement  negativity along a trajectory; CSV series\n"
     << "  mimic         gravity vs locc revival; 't,v_gravity,v_locc' CSV\n"
     << "                + '# deficit='\n"
     << "  converge      channel-to-generator residuals; 'dt,residual' CSV\n"
     << "                + '# slope='\n"
     << "  couplings     SI coupling calculator; 'key=value' lines\n"
     << "  selftest      invariant battery; exit 0/1\n"
     << "\n"
     << "protocol keys (dimensionless simulation units):\n"
     << "  model=gravity|locc|stochastic-force|atom-noise   (default gravity;\n"
     << "                    boosted and heating default to locc)\n"
     << "  alpha_t, beta_t   couplings per sqrt(unit time)  (default 0.3)\n"
     << "  omega_sim         oscillator frequency           (default 1)\n"
     << "  delta             cat displacement, e.g. 1.5 or 1+0.5i (default 1)\n"
     << "  t_max, dt         run length and step (defaults per scenario)\n"
     << "  n_cut             Fock truncation                (default 40)\n"
     << "  n_atoms           rate-bookkeeping atom count    (default 1)\n"
     << "  gamma_rate        stochastic-force jump rate     (default 1)\n"
     << "  include_h=0|1     keep the interaction Hamiltonian\n"
     << "  z_min, z_max, z_points, z_width   atom-noise measurement grid\n"
     << "  store_every       sample stride (0 = auto)\n"
     << "\n"
     << "physical keys (SI, for --scenario=couplings):\n"
     << "  M_kg, m_kg, ell_m, d_m, omega_rad_s, G_N_m3_kg_s2, hbar_J_s\n"
     << "\n"
     << "other:\n"
     << "  output=PATH       write CSV to PATH instead of standard output\n"
     << "  config=FILE       key=value lines, '#' comments; flags override\n";
  return os.str();
}

ParseResult parse_config(const std::vector<std::string>& args) {
  ParseResult result;
  auto usage_error = [&](const std::string& msg) {
    result.exit_code = 2;
    result.show_usage = true;
    result.message = msg;
    return result;
  };

  if (args.empty()) return usage_error("no arguments");

  std::vector<Assignment> flags;
  std::string config_path;
  for (const std::string& arg : args) {
    if (arg == "--help" || arg == "-h") {
      result.exit_code = 0;
      result.show_usage = true;
      return result;
    }
    if (arg.rfind("--", 0) != 0) {
      return usage_error("expected --key=value, got '" + arg + "'");
    }
    const std::size_t eq = arg.find('=');
    if (eq == std::string::npos || eq == 2) {
      return usage_error("expected --key=value, got '" + arg + "'");
    }
    Assignment kv{arg.substr(2, eq - 2), arg.substr(eq + 1)};
    if (kv.key == "config") {
      config_path = kv.value;
    } else {
      flags.push_back(std::move(kv));
    }
  }

  std::vector<Assignment> file_pairs;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) return usage_error("cannot open config file '" + config_path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const auto last = line.find_last_not_of(" \t\r");
      line = line.substr(first, last - first + 1);
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos || eq == 0) {
        return usage_error("config line " + std::to_string(lineno) +
                           ": expected key=value");
      }
      file_pairs.push_back({line.substr(0, eq), line.substr(eq + 1)});
    }
  }

  RunConfig cfg{};
  cfg.scenario = Scenario::selftest;  // placeholder until set
  bool scenario_set = false;
  bool model_set = false;
  for (const auto& pairs : {file_pairs, flags}) {
    for (const Assignment& kv : pairs) {
      if (auto err = apply_pair(kv, cfg, scenario_set, model_set)) {
        return usage_error(*err);
      }
    }
  }
  if (!scenario_set) return usage_error("missing --scenario");
  // these protocols only run on the measurement-feedback model
  if (!model_set && (cfg.scenario == Scenario::boosted ||
                     cfg.scenario == Scenario::heating)) {
    cfg.protocol.model = Model::locc;
  }

  result.config.push_back(std::move(cfg));
  return result;
}

namespace {

void write_series_csv(const TimeSeries& s, std::ostream& os) {
  os << "t,visibility,negativity,mean_n,mean_X,mean_P,trace_error\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << fmt(s.t[i]) << ',' << fmt(s.visibility[i]) << ','
       << fmt(s.negativity[i]) << ',' << fmt(s.mean_n[i]) << ','
       << fmt(s.mean_X[i]) << ',' << fmt(s.mean_P[i]) << ','
       << fmt(s.trace_error[i]) << '\n';
  }
}

int run_scenario(const RunConfig& config, std::ostream& os) {
  const ProtocolConfig& p = config.protocol;
  switch (config.scenario) {
    case Scenario::revival: {
      write_series_csv(unboosted_revival(p), os);
      return 0;
    }
    case Scenario::boosted: {
      const BoostedResult r = boosted_protocol(p);
      write_series_csv(r.series, os);
      os << "# fitted_decay=" << fmt(r.fitted_decay) << '\n';
      return 0;
    }
    case Scenario::heating: {
      const HeatingResult r = heating_series(p);
      write_series_csv(r.series, os);
      os << "# fitted_dn_dt=" << fmt(r.fitted_dn_dt) << '\n';
      return 0;
    }
    case Scenario::entanglement: {
      write_series_csv(entanglement_series(p), os);
      return 0;
    }
    case Scenario::mimic: {
      const MimicryReport r = mimicry_report(p);
      os << "t,v_gravity,v_locc\n";
      for (std::size_t i = 0; i < r.t.size(); ++i) {
        os << fmt(r.t[i]) << ',' << fmt(r.v_gravity[i]) << ','
           << fmt(r.v_locc[i]) << '\n';
      }
      os << "# deficit=" << fmt(r.deficit) << '\n';
      return 0;
    }
    case Scenario::converge: {
      const FockParams fock(p.n_cut);
      const ChannelFamily family = [&](double dt) {
        return locc_channel(p.alpha_t, p.beta_t, dt, fock);
      };
      const Superoperator target =
          superoperator(locc_lindblad(p.alpha_t, p.beta_t, fock));
      os << "dt,residual\n";
      std::vector<double> logdt, logres;
      for (double dt : config.converge_dts) {
        const Superoperator g = extract_generator(family, dt);
        const double r = (g.matrix - target.matrix).cwiseAbs().maxCoeff();
        os << fmt(dt) << ',' << fmt(r) << '\n';
        logdt.push_back(std::log(dt));
        logres.push_back(std::log(std::max(r, 1e-300)));
      }
      const double n = static_cast<double>(logdt.size());
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < logdt.size(); ++i) {
        sx += logdt[i];
        sy += logres[i];
        sxx += logdt[i] * logdt[i];
        sxy += logdt[i] * logres[i];
      }
      os << "# slope=" << fmt((n * sxy - sx * sy) / (n * sxx - sx * sx))
         << '\n';
      return 0;
    }
    case Scenario::couplings: {
      const DerivedCouplings c = derive_couplings(config.physical);
      os << "x0=" << fmt(c.x0) << '\n'
         << "alpha=" << fmt(c.alpha) << '\n'
         << "beta=" << fmt(c.beta) << '\n'
         << "gamma=" << fmt(c.gamma) << '\n'
         << "lambda=" << fmt(c.lambda) << '\n'
         << "alpha_tilde=" << fmt(c.alpha_tilde) << '\n'
         << "beta_tilde=" << fmt(c.beta_tilde) << '\n'
         << "n_gamma="
         << fmt(static_cast<double>(config.physical.n_atoms) * c.gamma)
         << '\n';
      return 0;
    }
    case Scenario::selftest: {
      const int failures = run_selftest(os);
      return failures == 0 ? 0 : 1;
    }
  }
  return 1;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!config.output_path.empty()) {
      std::ofstream file(config.output_path, std::ios::binary);
      if (!file) {
        err << "quosc: cannot open output file '" << config.output_path
            << "'\n";
        return 1;
      }
      return run_scenario(config, file);
    }
    return run_scenario(config, out);
  } catch (const std::exception& e) {
    err << "quosc: " << e.what() << '\n';
    return 1;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const ParseResult parsed = parse_config(args);
  if (parsed.show_usage || parsed.exit_code != 0) {
    if (!parsed.message.empty()) err << "quosc: " << parsed.message << '\n';
    (parsed.exit_code == 0 ? out : err) << usage_text();
    return parsed.exit_code;
  }
  return run(parsed.config.front(), out, err);
}

}  // namespace quosc
