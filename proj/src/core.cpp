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

#include "quosc/core.hpp"

#include <algorithm>
#include <cmath>

namespace quosc {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix is not square (" +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ")");
  }
}

}  // namespace

Operator::Operator(Matrix m, Dims dims) : mat_(std::move(m)), dims_(dims) {
  require_square(mat_, "Operator");
  if (mat_.rows() != dims_.total()) {
    throw DimensionError("Operator: shape " + std::to_string(mat_.rows()) +
                         " does not equal qubit*fock = " +
                         std::to_string(dims_.total()));
  }
}

Operator Operator::zero(Dims dims) {
  return Operator(Matrix::Zero(dims.total(), dims.total()), dims);
}

Operator Operator::identity(Dims dims) {
  return Operator(Matrix::Identity(dims.total(), dims.total()), dims);
}

Operator Operator::operator+(const Operator& o) const {
  if (dims_ != o.dims_) throw DimensionError("Operator+: dims mismatch");
  return Operator(mat_ + o.mat_, dims_);
}

Operator Operator::operator-(const Operator& o) const {
  if (dims_ != o.dims_) throw DimensionError("Operator-: dims mismatch");
  return Operator(mat_ - o.mat_, dims_);
}

Operator Operator::operator*(const Operator& o) const {
  if (dims_ != o.dims_) throw DimensionError("Operator*: dims mismatch");
  return Operator(mat_ * o.mat_, dims_);
}

Operator kron(const Matrix& qubit_factor, const Matrix& fock_factor) {
  if (qubit_factor.rows() != 2 || qubit_factor.cols() != 2) {
    throw DimensionError("kron: qubit factor must be 2x2");
  }
  require_square(fock_factor, "kron fock factor");
  const Index nf = fock_factor.rows();
  Matrix out(2 * nf, 2 * nf);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      out.block(i * nf, j * nf, nf, nf) = qubit_factor(i, j) * fock_factor;
    }
  }
  return Operator(std::move(out), Dims{2, nf});
}

FockParams::FockParams(int n_cut_, double x0_) : n_cut(n_cut_), x0(x0_) {
  if (n_cut < 2) throw ValidationError("FockParams: n_cut must be >= 2");
  if (!(x0 > 0.0)) throw ValidationError("FockParams: x0 must be positive");
}

DensityMatrix::DensityMatrix(Operator op)
    : DensityMatrix(std::move(op), Tolerances{}) {}

DensityMatrix::DensityMatrix(Operator op, Tolerances tol)
    : op_(std::move(op)), eig_min_(0.0) {
  const Matrix& m = op_.matrix();
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermitian) {
    throw ValidationError("DensityMatrix: not Hermitian, residual " +
                          std::to_string(herm));
  }
  const double tr_err = std::abs(m.trace() - Complex(1.0, 0.0));
  if (tr_err > tol.trace) {
    throw ValidationError("DensityMatrix: trace deviates from 1 by " +
                          std::to_string(tr_err));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()),
                                           Eigen::EigenvaluesOnly);
  eig_min_ = es.eigenvalues().minCoeff();
  if (eig_min_ < -tol.positivity) {
    throw ValidationError("DensityMatrix: negative eigenvalue " +
                          std::to_string(eig_min_));
  }
}

DensityMatrix DensityMatrix::pure(const Vector& psi, Dims dims) {
  if (psi.size() != dims.total()) {
    throw DimensionError("DensityMatrix::pure: vector length mismatch");
  }
  const double norm = psi.norm();
  if (norm <= 0.0) throw ValidationError("DensityMatrix::pure: zero vector");
  Vector unit = psi / norm;
  return DensityMatrix(Operator(unit * unit.adjoint(), dims));
}

FockOperators fock_operators(const FockParams& p) {
  const Index nc = p.n_cut;
  Matrix a = Matrix::Zero(nc, nc);
  for (Index n = 1; n < nc; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  Matrix adag = a.adjoint();
  Matrix num = adag * a;
  Matrix X = a + adag;
  Matrix P = Complex(0, 1) * (adag - a);
  const Dims dims{1, nc};
  return FockOperators{Operator(std::move(a), dims),
                       Operator(std::move(adag), dims),
                       Operator(std::move(num), dims),
                       Operator(std::move(X), dims),
                       Operator(std::move(P), dims)};
}

Vector coherent_amplitudes(Complex delta, const FockParams& p) {
  const Index nc = p.n_cut;
  Vector amps(nc);
  // recursion in n avoids explicit factorials
  const double a2 = std::norm(delta);
  amps(0) = std::exp(-0.5 * a2);
  for (Index n = 1; n < nc; ++n) {
    amps(n) = amps(n - 1) * delta / std::sqrt(static_cast<double>(n));
  }
  // untruncated Poisson weight strictly above the guard level n_cut - 5
  const Index guard = std::max<Index>(nc - 4, 1);
  double below = 0.0;
  double w = std::exp(-a2);
  for (Index n = 0; n < guard; ++n) {
    below += w;
    w *= a2 / static_cast<double>(n + 1);
  }
  const double tail = 1.0 - below;
  if (tail >= 1e-8) {
    throw TruncationError(
        "coherent_state: population above level n_cut-5 is " +
        std::to_string(tail) + "; raise n_cut");
  }
  amps /= amps.norm();
  return amps;
}

DensityMatrix coherent_state(Complex delta, const FockParams& p) {
  return DensityMatrix::pure(coherent_amplitudes(delta, p),
                             Dims{1, p.n_cut});
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  const Dims d = rho.dims();
  if (d.qubit != 2) {
    throw DimensionError("partial_trace: state is not on the composite space");
  }
  const Matrix& m = rho.matrix();
  const Index nf = d.fock;
  if (keep == Subsystem::qubit) {
    Matrix out = Matrix::Zero(2, 2);
    for (Index i = 0; i < 2; ++i) {
      for (Index j = 0; j < 2; ++j) {
        out(i, j) = m.block(i * nf, j * nf, nf, nf).trace();
      }
    }
    return DensityMatrix(Operator(std::move(out), Dims{2, 1}));
  }
  Matrix out = Matrix::Zero(nf, nf);
  for (Index i = 0; i < 2; ++i) {
    out += m.block(i * nf, i * nf, nf, nf);
  }
  return DensityMatrix(Operator(std::move(out), Dims{1, nf}));
}

Operator partial_transpose(const DensityMatrix& rho, Subsystem subsystem) {
  const Dims d = rho.dims();
  if (d.qubit != 2) {
    throw DimensionError(
        "partial_transpose: state is not on the composite space");
  }
  const Matrix& m = rho.matrix();
  const Index nf = d.fock;
  Matrix out(m.rows(), m.cols());
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      if (subsystem == Subsystem::qubit) {
        out.block(i * nf, j * nf, nf, nf) = m.block(j * nf, i * nf, nf, nf);
      } else {
        out.block(i * nf, j * nf, nf, nf) =
            m.block(i * nf, j * nf, nf, nf).transpose();
      }
    }
  }
  return Operator(std::move(out), d);
}

double negativity(const DensityMatrix& rho) {
  const Operator pt = partial_transpose(rho, Subsystem::qubit);
  // The partial transpose of a Hermitian matrix is Hermitian, so the trace
  // norm is the sum of absolute eigenvalues.
  Eigen::SelfAdjointEigenSolver<Matrix> es(pt.matrix(),
                                           Eigen::EigenvaluesOnly);
  const double trace_norm = es.eigenvalues().cwiseAbs().sum();
  return 0.5 * (trace_norm - 1.0);
}

Matrix expm_hermitian(const Matrix& H, double t, double tol) {
  require_square(H, "expm_hermitian");
  const double herm = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    throw ValidationError("expm_hermitian: generator not Hermitian, residual " +
                          std::to_string(herm));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  Vector phases(H.rows());
  for (Index k = 0; k < H.rows(); ++k) {
    phases(k) = std::exp(Complex(0.0, -es.eigenvalues()(k) * t));
  }
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

Operator expm_hermitian_generator(const Operator& H, double t) {
  return Operator(expm_hermitian(H.matrix(), t), H.dims());
}

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, Index dim) {
  if (v.size() != dim * dim) throw DimensionError("unvec: length mismatch");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

}  // namespace quosc
