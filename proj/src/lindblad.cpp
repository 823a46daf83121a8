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

#include "quosc/lindblad.hpp"

#include <cmath>

#include "quosc/core.hpp"
#include "quosc/random_states.hpp"

namespace quosc {

namespace {

Matrix kron_square(const Matrix& a, const Matrix& b) {
  const Index na = a.rows(), nb = b.rows();
  Matrix out(na * nb, na * nb);
  for (Index i = 0; i < na; ++i) {
    for (Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a(i, j) * b;
    }
  }
  return out;
}

/// Drift matrix A = -iH - (1/2) sum rate E^dag E, so the right-hand side is
/// A rho + rho A^dag + sum rate E rho E^dag.
struct FastRhs {
  explicit FastRhs(const LindbladGenerator& gen) {
    const Index d = gen.dims().total();
    drift = Complex(0, -1) * gen.H.matrix();
    for (const Jump& j : gen.jumps) {
      ops.push_back(std::sqrt(j.rate) * j.op.matrix());
      drift -= 0.5 * (ops.back().adjoint() * ops.back());
    }
    dim = d;
  }

  Matrix operator()(const Matrix& rho) const {
    Matrix out = drift * rho;
    out.noalias() += rho * drift.adjoint();
    for (const Matrix& e : ops) {
      out.noalias() += e * rho * e.adjoint();
    }
    return out;
  }

  Matrix drift;
  std::vector<Matrix> ops;
  Index dim = 0;
};

/// Residual of R against the strictly-local subspace
/// span{M (x) I_f, I_2 (x) N}, computed on the reshuffled coefficient
/// matrix: the subspace is {x a^T + b y^T} with a = vec(I_f), b = vec(I_2),
/// and the residual is the Frobenius norm of (1-P_b) R (1-P_a).
double local_subspace_residual(const Operator& A) {
  const Dims d = A.dims();
  const Index nf = d.fock;
  Matrix r(4, nf * nf);
  const Matrix& m = A.matrix();
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      const Matrix block = m.block(i * nf, j * nf, nf, nf);
      r.row(2 * i + j) = vec(block.transpose()).transpose();
    }
  }
  // b = vec(I_2) over rows (indices 0 and 3), a = vec(I_f) over columns
  Vector b = Vector::Zero(4);
  b(0) = 1.0;
  b(3) = 1.0;
  Vector a = Vector::Zero(nf * nf);
  for (Index k = 0; k < nf; ++k) a(k * nf + k) = 1.0;
  const Matrix rp = r - (b * (b.adjoint() * r)) / b.squaredNorm();
  const Matrix rpp = rp - ((rp * a) * a.adjoint()) / a.squaredNorm();
  return rpp.norm();
}

}  // namespace

LindbladGenerator::LindbladGenerator(Operator hamiltonian,
                                     std::vector<Jump> jump_ops)
    : H(std::move(hamiltonian)), jumps(std::move(jump_ops)) {
  if (!H.is_hermitian(1e-10)) {
    throw ValidationError("LindbladGenerator: Hamiltonian not Hermitian");
  }
  for (const Jump& j : jumps) {
    if (j.rate < 0.0) {
      throw ValidationError("LindbladGenerator: negative jump rate");
    }
    if (j.op.dims() != H.dims()) {
      throw DimensionError("LindbladGenerator: jump dimension mismatch");
    }
  }
}

Matrix rhs_matrix(const LindbladGenerator& gen, const Matrix& rho) {
  const Index d = gen.dims().total();
  if (rho.rows() != d || rho.cols() != d) {
    throw DimensionError("rhs: state dimension mismatch");
  }
  return FastRhs(gen)(rho);
}

Operator rhs(const LindbladGenerator& gen, const DensityMatrix& rho) {
  if (rho.dims() != gen.dims()) {
    throw DimensionError("rhs: state dimension mismatch");
  }
  Matrix out = rhs_matrix(gen, rho.matrix());
  return Operator(std::move(out), gen.dims());
}

Superoperator superoperator(const LindbladGenerator& gen) {
  const Index d = gen.dims().total();
  const Matrix id = Matrix::Identity(d, d);
  Matrix g = Complex(0, -1) * (kron_square(id, gen.H.matrix()) -
                               kron_square(gen.H.matrix().transpose(), id));
  for (const Jump& j : gen.jumps) {
    const Matrix& e = j.op.matrix();
    const Matrix ede = e.adjoint() * e;
    g += j.rate * (kron_square(e.conjugate(), e) -
                   0.5 * kron_square(id, ede) -
                   0.5 * kron_square(ede.transpose(), id));
  }
  return Superoperator{std::move(g), gen.dims()};
}

SeparabilityReport check_c_prime(const LindbladGenerator& gen) {
  SeparabilityReport rep{};
  const double scale_h = std::max(1.0, gen.H.matrix().norm());
  rep.h_is_product = is_product_operator(gen.H).schmidt_rank <= 1;
  rep.h_is_local = local_subspace_residual(gen.H) <= 1e-10 * scale_h;
  if (!rep.h_is_local) rep.witnesses.push_back(-1);

  rep.jumps_all_product = true;
  for (std::size_t i = 0; i < gen.jumps.size(); ++i) {
    if (is_product_operator(gen.jumps[i].op).schmidt_rank > 1) {
      rep.jumps_all_product = false;
      rep.witnesses.push_back(static_cast<int>(i));
    }
  }

  const Index d = gen.dims().total();
  Matrix comp = Matrix::Zero(d, d);
  for (const Jump& j : gen.jumps) {
    comp += j.rate * (j.op.matrix().adjoint() * j.op.matrix());
  }
  Operator comp_op(std::move(comp), gen.dims());
  const double scale_c = std::max(1.0, comp_op.matrix().norm());
  rep.completeness_local =
      local_subspace_residual(comp_op) <= 1e-10 * scale_c;

  rep.verdict =
      rep.h_is_local && rep.jumps_all_product && rep.completeness_local;
  return rep;
}

double spectral_radius_estimate(const LindbladGenerator& gen) {
  const Index d = gen.dims().total();
  const FastRhs f(gen);
  Rng rng(kDefaultSeed);
  Matrix v = ginibre(d, rng);
  double norm = v.norm();
  if (norm == 0.0) return 0.0;
  v /= norm;
  double radius = 0.0;
  for (int it = 0; it < 30; ++it) {
    Matrix w = f(v);
    radius = w.norm();
    if (radius < 1e-300) return 0.0;
    v = w / radius;
  }
  return radius;
}

Trajectory evolve(const LindbladGenerator& gen, const DensityMatrix& rho0,
                  double t_max, double dt, EvolveOptions opts) {
  if (!(dt > 0.0)) throw ValidationError("evolve: dt must be > 0");
  if (!(t_max >= 0.0)) throw ValidationError("evolve: t_max must be >= 0");
  if (rho0.dims() != gen.dims()) {
    throw DimensionError("evolve: state dimension mismatch");
  }
  const double radius = spectral_radius_estimate(gen);
  if (dt * radius >= opts.stability_limit) {
    throw StabilityError("evolve: dt * spectral radius = " +
                         std::to_string(dt * radius) + " exceeds the guard " +
                         std::to_string(opts.stability_limit));
  }
  const long long nsteps =
      t_max == 0.0 ? 0 : std::max(1LL, std::llround(t_max / dt));
  const double h = nsteps == 0 ? 0.0 : t_max / static_cast<double>(nsteps);
  long long stride = opts.store_every > 0 ? opts.store_every
                                          : std::max(1LL, nsteps / 512);

  DensityMatrix::Tolerances tol;
  tol.hermitian = 1e-12;  // states are hermitized before validation
  tol.trace = opts.trace_tol;
  tol.positivity = -opts.positivity_floor;

  const FastRhs f(gen);
  Matrix rho = rho0.matrix();
  Trajectory out;
  out.push_back({0.0, rho0});
  for (long long i = 0; i < nsteps; ++i) {
    const Matrix k1 = f(rho);
    const Matrix k2 = f(rho + (0.5 * h) * k1);
    const Matrix k3 = f(rho + (0.5 * h) * k2);
    const Matrix k4 = f(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + rho.adjoint().eval());
    if ((i + 1) % stride == 0 || i + 1 == nsteps) {
      const double t = h * static_cast<double>(i + 1);
      out.push_back({t, DensityMatrix(Operator(rho, gen.dims()), tol)});
    }
  }
  return out;
}

std::vector<std::pair<double, double>> expectation_series(
    std::span<const TrajectoryPoint> trajectory, const Operator& observable) {
  if (!observable.is_hermitian(1e-10)) {
    throw ValidationError("expectation_series: observable not Hermitian");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(trajectory.size());
  for (const TrajectoryPoint& p : trajectory) {
    const Complex v = (p.state.matrix() * observable.matrix()).trace();
    if (std::abs(v.imag()) > 1e-9) {
      throw ValidationError("expectation_series: imaginary residue " +
                            std::to_string(v.imag()));
    }
    out.emplace_back(p.t, v.real());
  }
  return out;
}

}  // namespace quosc
