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

#include "quosc/models.hpp"

#include <cmath>

#include "quosc/core.hpp"

namespace quosc {

namespace {

const Matrix kSigmaZ = (Matrix(2, 2) << 1, 0, 0, -1).finished();
const Matrix kI2 = Matrix::Identity(2, 2);

Matrix projector(int level) {
  Matrix p = Matrix::Zero(2, 2);
  p(level, level) = 1.0;
  return p;
}

}  // namespace

void PhysicalParams::validate() const {
  const double fields[] = {G_N, hbar, m_atom, M_osc, ell, d, omega};
  for (double f : fields) {
    if (!(f > 0.0)) {
      throw ValidationError("PhysicalParams: all parameters must be > 0");
    }
  }
  if (n_atoms < 1) throw ValidationError("PhysicalParams: n_atoms must be >= 1");
  if (!(d > ell)) {
    throw ValidationError("PhysicalParams: need d > ell (geometry)");
  }
}

DerivedCouplings derive_couplings(const PhysicalParams& p) {
  p.validate();
  DerivedCouplings c{};
  c.x0 = std::sqrt(p.hbar / (2.0 * p.M_osc * p.omega));
  const double root = std::sqrt(p.G_N / p.hbar) / std::pow(p.d, 1.5);
  c.alpha = root * p.M_osc;
  c.beta = root * p.m_atom * p.ell;
  c.gamma = p.G_N * p.M_osc / (2.0 * p.omega * p.d * p.d * p.d);
  c.lambda = 2.0 * c.alpha * c.beta * c.x0;
  c.alpha_tilde = c.alpha * c.x0;  // per sqrt(second)
  c.beta_tilde = c.beta;           // per sqrt(second)
  return c;
}

LindbladGenerator stochastic_force_model(double alpha_sf, double gamma_rate,
                                         const FockParams& fock) {
  if (!(gamma_rate > 0.0)) {
    throw ValidationError("stochastic_force_model: gamma_rate must be > 0");
  }
  const FockOperators f = fock_operators(fock);
  // kick direction follows the atom site so that d<P>/dt = 2 gamma alpha <sz>
  const Matrix up = expm_hermitian(f.X.matrix(), -alpha_sf);   // e^{+i a X}
  const Matrix down = expm_hermitian(f.X.matrix(), alpha_sf);  // e^{-i a X}
  std::vector<Jump> jumps;
  jumps.push_back({gamma_rate, kron(projector(0), up)});
  jumps.push_back({gamma_rate, kron(projector(1), down)});
  return LindbladGenerator(Operator::zero(Dims{2, fock.n_cut}),
                           std::move(jumps));
}

std::vector<double> uniform_grid(double z_min, double z_max, int points) {
  if (points < 2 || !(z_max > z_min)) {
    throw ValidationError("uniform_grid: need points >= 2 and z_max > z_min");
  }
  std::vector<double> grid(points);
  const double step = (z_max - z_min) / (points - 1);
  for (int i = 0; i < points; ++i) grid[i] = z_min + step * i;
  return grid;
}

LindbladGenerator atom_noise_model(double beta_tilde,
                                   std::span<const double> z_grid,
                                   double width, const FockParams& fock) {
  if (!(width > 0.0)) {
    throw ValidationError("atom_noise_model: width must be > 0");
  }
  if (z_grid.size() < 2) {
    throw ValidationError("atom_noise_model: need at least 2 grid points");
  }
  const FockOperators f = fock_operators(fock);
  Eigen::SelfAdjointEigenSolver<Matrix> es(f.X.matrix());
  const auto& xs = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  const Index nc = fock.n_cut;

  // weight w_z(x_k) = exp(-(x_k - z)^2 / width^2), normalized per
  // eigenvalue so the POVM sum_z G_z^2 = I holds exactly
  Eigen::MatrixXd w2(static_cast<Index>(z_grid.size()), nc);
  for (Index iz = 0; iz < w2.rows(); ++iz) {
    for (Index k = 0; k < nc; ++k) {
      const double u = (xs(k) - z_grid[iz]) / width;
      w2(iz, k) = std::exp(-u * u);
    }
  }
  const Eigen::VectorXd norms = w2.colwise().sum();
  // a grid that leaves some eigenvalue essentially unweighted cannot carry a
  // complete measurement; amplifying it would be numerically meaningless
  if (norms.minCoeff() < 1e-12) {
    throw ValidationError(
        "atom_noise_model: grid too coarse or narrow, completeness residual "
        "above 1e-6");
  }

  std::vector<Jump> jumps;
  jumps.reserve(z_grid.size());
  for (Index iz = 0; iz < w2.rows(); ++iz) {
    Vector diag(nc);
    for (Index k = 0; k < nc; ++k) {
      diag(k) = std::sqrt(w2(iz, k) / norms(k));
    }
    const Matrix gz = v * diag.asDiagonal() * v.adjoint();
    Matrix phase = Matrix::Zero(2, 2);
    phase(0, 0) = std::exp(Complex(0.0, beta_tilde * z_grid[iz]));
    phase(1, 1) = std::exp(Complex(0.0, -beta_tilde * z_grid[iz]));
    jumps.push_back({1.0, kron(phase, gz)});
  }

  LindbladGenerator gen(Operator::zero(Dims{2, nc}), std::move(jumps));
  // discrete POVM completeness, checked on the assembled operators
  Matrix comp = Matrix::Zero(2 * nc, 2 * nc);
  for (const Jump& j : gen.jumps) {
    comp += j.op.matrix().adjoint() * j.op.matrix();
  }
  const double resid =
      (comp - Matrix::Identity(2 * nc, 2 * nc)).cwiseAbs().maxCoeff();
  if (resid > 1e-6) {
    throw ValidationError("atom_noise_model: completeness residual " +
                          std::to_string(resid) + " exceeds 1e-6");
  }
  return gen;
}

KrausChannel locc_channel(double alpha_t, double beta_t, double dt,
                          const FockParams& fock) {
  if (!(dt > 0.0)) throw ValidationError("locc_channel: dt must be > 0");
  const FockOperators f = fock_operators(fock);
  const double s = std::sqrt(dt);

  Eigen::SelfAdjointEigenSolver<Matrix> es(f.X.matrix());
  const double x_norm = es.eigenvalues().cwiseAbs().maxCoeff();
  if (!(std::abs(alpha_t) * s * x_norm < M_PI_2)) {
    throw ValidationError(
        "locc_channel: alpha sqrt(dt) ||X|| >= pi/2; the measurement "
        "branches are not meaningful at this truncation");
  }

  const auto& xs = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  auto x_function = [&](auto&& fn) {
    Vector diag(xs.size());
    for (Index k = 0; k < xs.size(); ++k) diag(k) = fn(xs(k));
    return Matrix(v * diag.asDiagonal() * v.adjoint());
  };

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Matrix cosX =
      x_function([&](double x) { return std::cos(alpha_t * s * x); });
  const Matrix sinX =
      x_function([&](double x) { return std::sin(alpha_t * s * x); });
  const Matrix expX_plus = x_function(
      [&](double x) { return std::exp(Complex(0.0, alpha_t * s * x)); });
  const Matrix expX_minus = expX_plus.adjoint();

  // measurement of the oscillator, feedback phase on the qubit
  KrausChannel osc_measure;
  osc_measure.product_form.emplace();
  for (int sign : {+1, -1}) {
    Matrix uq = Matrix::Zero(2, 2);
    uq(0, 0) = std::exp(Complex(0.0, sign * beta_t * s));
    uq(1, 1) = std::exp(Complex(0.0, -sign * beta_t * s));
    const Matrix branch =
        inv_sqrt2 * (cosX + static_cast<double>(sign) * sinX);
    osc_measure.kraus.push_back(kron(uq, branch));
    osc_measure.product_form->push_back(ProductFactors{uq, branch});
  }

  // measurement of the qubit, feedback displacement on the oscillator
  KrausChannel qubit_measure;
  qubit_measure.product_form.emplace();
  const double cb = std::cos(beta_t * s);
  const double sb = std::sin(beta_t * s);
  for (int sign : {+1, -1}) {
    const Matrix cq = inv_sqrt2 * (cb * kI2 + sign * sb * kSigmaZ);
    const Matrix& uf = sign > 0 ? expX_plus : expX_minus;
    qubit_measure.kraus.push_back(kron(cq, uf));
    qubit_measure.product_form->push_back(ProductFactors{cq, uf});
  }

  return compose(qubit_measure, osc_measure);
}

LindbladGenerator locc_lindblad(double alpha_t, double beta_t,
                                const FockParams& fock) {
  const FockOperators f = fock_operators(fock);
  const Dims dims{2, fock.n_cut};
  Operator h = -2.0 * alpha_t * beta_t * kron(kSigmaZ, f.X.matrix());
  std::vector<Jump> jumps;
  jumps.push_back(
      {1.0, Complex(0.0, std::sqrt(2.0) * alpha_t) *
                kron(kI2, f.X.matrix())});
  jumps.push_back({1.0, std::sqrt(2.0) * beta_t *
                            kron(kSigmaZ, Matrix::Identity(fock.n_cut,
                                                           fock.n_cut))});
  return LindbladGenerator(std::move(h), std::move(jumps));
}

LindbladGenerator gravity_hamiltonian(double lambda_c, double omega_sim,
                                      const FockParams& fock) {
  const FockOperators f = fock_operators(fock);
  Operator h = omega_sim * kron(kI2, f.n.matrix()) +
               lambda_c * kron(kSigmaZ, f.X.matrix());
  return LindbladGenerator(std::move(h), {});
}

}  // namespace quosc
