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

#include "quosc/random_states.hpp"

#include "quosc/core.hpp"

namespace quosc {

Matrix ginibre(Index n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return m;
}

DensityMatrix random_density(Dims dims, Rng& rng) {
  const Matrix g = ginibre(dims.total(), rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(Operator(0.5 * (rho + rho.adjoint()), dims));
}

DensityMatrix random_product_state(Index fock_dim, Rng& rng) {
  const DensityMatrix rq = random_density(Dims{1, 2}, rng);
  const DensityMatrix rf = random_density(Dims{1, fock_dim}, rng);
  return DensityMatrix(kron(rq.matrix(), rf.matrix()));
}

Matrix random_hermitian(Index n, Rng& rng) {
  const Matrix g = ginibre(n, rng);
  return 0.5 * (g + g.adjoint());
}

Matrix random_unitary(Index n, Rng& rng) {
  const Matrix g = ginibre(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phase convention so Q is drawn uniformly
  for (Index k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    q.col(k) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace quosc
