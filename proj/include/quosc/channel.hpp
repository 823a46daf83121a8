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

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "quosc/operator.hpp"

namespace quosc {

/// Channels are accepted when ||sum K^dag K - I||_max is at or below this.
inline constexpr double kCompletenessTol = 1e-10;

/// Product factorization K_i = qubit_factor (x) fock_factor, carried only
/// when the channel was constructed from local pieces. Mixing the Kraus
/// basis drops it: a unitarily equivalent basis generally has no product
/// structure even though the channel is unchanged.
struct ProductFactors {
  Matrix qubit;  // 2x2
  Matrix fock;   // n_cut x n_cut
};

struct KrausChannel {
  std::vector<Operator> kraus;
  std::optional<std::vector<ProductFactors>> product_form;

  const Dims& dims() const { return kraus.front().dims(); }
};

/// Completeness residual ||sum K^dag K - I||_max. Throws DimensionError on
/// an empty list or ragged dimensions.
double validate(const KrausChannel& ch);

/// sum_i K_i rho K_i^dag. The channel must validate; the output is a checked
/// DensityMatrix.
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// Same sum on a raw matrix, no completeness gate. Used by the Choi and
/// generator machinery which feeds non-state basis elements through.
Matrix apply_matrix(const KrausChannel& ch, const Matrix& m);

/// Concatenation: Kraus list {outer_a inner_b}. Product form propagates
/// factor-wise when both inputs carry it, and is dropped otherwise.
KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner);

/// Choi matrix sum_ij |i><j| (x) L[|i><j|], the representation-independent
/// channel fingerprint. D^2 x D^2.
Matrix choi(const KrausChannel& ch);

/// New Kraus basis K'_i = sum_j U_ij K_j. U must be unitary to 1e-10 and
/// sized len(kraus). The Choi matrix is unchanged; product_form is dropped.
KrausChannel mix_kraus(const KrausChannel& ch, const Matrix& U);

struct ProductReport {
  bool is_product;   // exactly one singular value above 1e-10 * sigma_max
  int schmidt_rank;  // count of singular values above that threshold
  double gap;        // sigma_2 / sigma_1 (0 when fewer than 2 values)
};

/// Operator Schmidt decomposition across the qubit/Fock split, via SVD of
/// the index-reshuffled coefficient matrix.
ProductReport is_product_operator(const Operator& A);

/// Superoperator on column-vectorized density matrices, D^2 x D^2.
struct Superoperator {
  Matrix matrix;
  Dims dims;

  /// Largest deviation from Hermiticity preservation, probed on the
  /// Hermitian matrix-unit basis.
  double hermiticity_defect() const;
};

using ChannelFamily = std::function<KrausChannel(double)>;

/// Finite-difference generator G(dt)[rho] = (L_dt[rho] - rho)/dt, assembled
/// column by column on the matrix-unit basis. This route never expands the
/// Kraus operators themselves: a given Kraus basis may not admit a
/// lowest-order expansion without a basis rotation.
Superoperator extract_generator(const ChannelFamily& family, double dt);

/// Least-squares slope of log ||G(dt) - target||_max against log dt.
/// Requires at least 4 decreasing dt values; throws FitError when every
/// residual sits below 1e-13.
double convergence_order(const ChannelFamily& family,
                         const Superoperator& target,
                         std::span<const double> dts);

}  // namespace quosc
