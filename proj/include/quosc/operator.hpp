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

#include "quosc/types.hpp"

namespace quosc {

/// Dense operator on the composite qubit (x) Fock space, tagged with its
/// subsystem dimensions. Immutable after construction; all algebra returns
/// new values.
class Operator {
 public:
  Operator(Matrix m, Dims dims);

  static Operator zero(Dims dims);
  static Operator identity(Dims dims);

  const Matrix& matrix() const { return mat_; }
  const Dims& dims() const { return dims_; }
  Index size() const { return mat_.rows(); }

  Operator dagger() const { return Operator(mat_.adjoint(), dims_); }
  Operator hermitized() const {
    return Operator(0.5 * (mat_ + mat_.adjoint()), dims_);
  }

  Complex trace() const { return mat_.trace(); }
  double max_abs() const { return mat_.cwiseAbs().maxCoeff(); }
  bool is_hermitian(double tol) const {
    return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }

  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator operator*(const Operator& o) const;
  Operator operator*(Complex s) const { return Operator(s * mat_, dims_); }
  Operator operator-() const { return Operator(-mat_, dims_); }

 private:
  Matrix mat_;
  Dims dims_;
};

inline Operator operator*(Complex s, const Operator& a) { return a * s; }
inline Operator operator*(double s, const Operator& a) {
  return a * Complex(s, 0.0);
}

/// Kronecker product of a qubit factor (2x2) and a Fock factor (square).
Operator kron(const Matrix& qubit_factor, const Matrix& fock_factor);

/// Fock truncation parameters. x0 is the zero-point length in meters and is
/// used only at the SI boundary; the simulation works with the dimensionless
/// quadrature X = a + a^dag.
struct FockParams {
  explicit FockParams(int n_cut, double x0 = 1.0);

  int n_cut;
  double x0;
};

/// Hermitian, unit-trace, positive operator. Construction validates all
/// three properties; validation is check-only and never projects or clips.
class DensityMatrix {
 public:
  struct Tolerances {
    double hermitian = 1e-12;
    double trace = 1e-10;
    double positivity = 1e-10;  // smallest eigenvalue >= -positivity
  };

  explicit DensityMatrix(Operator op);
  DensityMatrix(Operator op, Tolerances tol);

  /// Rank-one state |psi><psi| from a (not necessarily normalized) vector.
  static DensityMatrix pure(const Vector& psi, Dims dims);

  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const Dims& dims() const { return op_.dims(); }
  double eig_min() const { return eig_min_; }

 private:
  Operator op_;
  double eig_min_;
};

}  // namespace quosc
