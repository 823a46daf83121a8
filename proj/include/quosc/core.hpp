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

#include "quosc/operator.hpp"

namespace quosc {

enum class Subsystem { qubit, fock };

/// Truncated ladder and quadrature operators on the bare Fock space
/// (dims {1, n_cut}). Conventions: a|n> = sqrt(n)|n-1>, X = a + a^dag,
/// P = i(a^dag - a), so [X, P] = 2i away from the truncation corner.
struct FockOperators {
  Operator a;
  Operator adag;
  Operator n;
  Operator X;
  Operator P;
};

FockOperators fock_operators(const FockParams& p);

/// Normalized amplitudes <n|delta> of a truncated coherent state. Throws
/// TruncationError if the untruncated Poisson weight at or above level
/// n_cut - 5 reaches 1e-8.
Vector coherent_amplitudes(Complex delta, const FockParams& p);

/// Pure coherent state |delta><delta| on the bare oscillator space.
DensityMatrix coherent_state(Complex delta, const FockParams& p);

/// Reduced state on the kept subsystem. Requires a composite (qubit dim 2)
/// input.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

/// Transpose applied to one subsystem's indices. Hermiticity is preserved;
/// positivity generally is not, which is the point.
Operator partial_transpose(const DensityMatrix& rho, Subsystem subsystem);

/// Entanglement negativity N(rho) = (||rho^{T_qubit}||_1 - 1)/2. Zero on
/// every separable state.
double negativity(const DensityMatrix& rho);

/// Unitary e^{-iHt} via Hermitian eigendecomposition. H must be Hermitian
/// to 1e-10.
Operator expm_hermitian_generator(const Operator& H, double t);

/// Raw-matrix version of the above for internal plumbing.
Matrix expm_hermitian(const Matrix& H, double t, double tol = 1e-10);

/// Column-major vectorization and its inverse.
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Index dim);

}  // namespace quosc
