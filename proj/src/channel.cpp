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

#include "quosc/channel.hpp"

#include <cmath>

#include "quosc/core.hpp"

namespace quosc {

namespace {

void require_uniform(const KrausChannel& ch) {
  if (ch.kraus.empty()) {
    throw DimensionError("KrausChannel: empty operator list");
  }
  const Dims d = ch.kraus.front().dims();
  for (const Operator& k : ch.kraus) {
    if (k.dims() != d) {
      throw DimensionError("KrausChannel: ragged operator dimensions");
    }
  }
  if (ch.product_form) {
    if (ch.product_form->size() != ch.kraus.size()) {
      throw DimensionError("KrausChannel: product_form length mismatch");
    }
  }
}

void require_validated(const KrausChannel& ch, const char* what) {
  const double resid = validate(ch);
  if (resid > kCompletenessTol) {
    throw ValidationError(std::string(what) +
                          ": channel incomplete, residual " +
                          std::to_string(resid));
  }
}

}  // namespace

double validate(const KrausChannel& ch) {
  require_uniform(ch);
  const Index d = ch.dims().total();
  Matrix sum = Matrix::Zero(d, d);
  for (const Operator& k : ch.kraus) {
    sum += k.matrix().adjoint() * k.matrix();
  }
  return (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

Matrix apply_matrix(const KrausChannel& ch, const Matrix& m) {
  const Index d = ch.dims().total();
  if (m.rows() != d || m.cols() != d) {
    throw DimensionError("apply: operand dimension mismatch");
  }
  Matrix out = Matrix::Zero(d, d);
  for (const Operator& k : ch.kraus) {
    out += k.matrix() * m * k.matrix().adjoint();
  }
  return out;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  require_validated(ch, "apply");
  if (rho.dims() != ch.dims()) {
    throw DimensionError("apply: state dimension mismatch");
  }
  Matrix out = apply_matrix(ch, rho.matrix());
  // completeness keeps the trace and positivity; round-off is all that is
  // left for the state validator to absorb
  DensityMatrix::Tolerances tol;
  tol.hermitian = 1e-11;
  tol.positivity = 1e-9;
  return DensityMatrix(Operator(0.5 * (out + out.adjoint()), ch.dims()), tol);
}

KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner) {
  require_validated(outer, "compose(outer)");
  require_validated(inner, "compose(inner)");
  if (outer.dims() != inner.dims()) {
    throw DimensionError("compose: dimension mismatch");
  }
  KrausChannel out;
  out.kraus.reserve(outer.kraus.size() * inner.kraus.size());
  const bool carry_factors =
      outer.product_form.has_value() && inner.product_form.has_value();
  if (carry_factors) out.product_form.emplace();
  for (std::size_t a = 0; a < outer.kraus.size(); ++a) {
    for (std::size_t b = 0; b < inner.kraus.size(); ++b) {
      out.kraus.push_back(outer.kraus[a] * inner.kraus[b]);
      if (carry_factors) {
        out.product_form->push_back(ProductFactors{
            (*outer.product_form)[a].qubit * (*inner.product_form)[b].qubit,
            (*outer.product_form)[a].fock * (*inner.product_form)[b].fock});
      }
    }
  }
  return out;
}

Matrix choi(const KrausChannel& ch) {
  require_validated(ch, "choi");
  const Index d = ch.dims().total();
  Matrix c = Matrix::Zero(d * d, d * d);
  // C[(i,a),(j,b)] = sum_k K[a,i] conj(K[b,j]) = sum_k v_k v_k^dag with
  // v_k the column-major vectorization of K_k
  for (const Operator& k : ch.kraus) {
    const Vector v = vec(k.matrix());
    c.noalias() += v * v.adjoint();
  }
  return c;
}

KrausChannel mix_kraus(const KrausChannel& ch, const Matrix& U) {
  require_uniform(ch);
  const Index n = static_cast<Index>(ch.kraus.size());
  if (U.rows() != n || U.cols() != n) {
    throw DimensionError("mix_kraus: mixer size must equal the Kraus count");
  }
  const double unit_resid =
      (U.adjoint() * U - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (unit_resid > 1e-10) {
    throw ValidationError("mix_kraus: mixer not unitary, residual " +
                          std::to_string(unit_resid));
  }
  KrausChannel out;
  out.kraus.reserve(ch.kraus.size());
  for (Index i = 0; i < n; ++i) {
    Matrix ki = Matrix::Zero(ch.dims().total(), ch.dims().total());
    for (Index j = 0; j < n; ++j) {
      ki += U(i, j) * ch.kraus[j].matrix();
    }
    out.kraus.emplace_back(std::move(ki), ch.dims());
  }
  return out;
}

ProductReport is_product_operator(const Operator& A) {
  const Dims d = A.dims();
  if (d.qubit != 2) {
    throw DimensionError("is_product_operator: not a composite operator");
  }
  const Index nf = d.fock;
  // reshuffle A[(i,k),(j,l)] -> R[(i,j),(k,l)]: qubit indices label rows,
  // Fock indices label columns
  Matrix r(4, nf * nf);
  const Matrix& m = A.matrix();
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      const Matrix block = m.block(i * nf, j * nf, nf, nf);
      r.row(2 * i + j) = vec(block.transpose()).transpose();
    }
  }
  Eigen::JacobiSVD<Matrix> svd(r);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double thresh = 1e-10 * smax;
  int rank = 0;
  for (Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > thresh && sv(k) > 0.0) ++rank;
  }
  const double gap = sv.size() > 1 && smax > 0.0 ? sv(1) / smax : 0.0;
  return ProductReport{rank == 1, rank, gap};
}

double Superoperator::hermiticity_defect() const {
  const Index d = dims.total();
  double worst = 0.0;
  // Hermitian units: E_kk, (E_kl + E_lk)/sqrt2, i(E_kl - E_lk)/sqrt2. The
  // image of each must be Hermitian.
  for (Index k = 0; k < d; ++k) {
    for (Index l = k; l < d; ++l) {
      Matrix basis = Matrix::Zero(d, d);
      if (k == l) {
        basis(k, k) = 1.0;
      } else {
        basis(k, l) = Complex(M_SQRT1_2, 0);
        basis(l, k) = Complex(M_SQRT1_2, 0);
      }
      Matrix img = unvec(matrix * vec(basis), d);
      worst = std::max(worst, (img - img.adjoint()).cwiseAbs().maxCoeff());
      if (k != l) {
        basis(k, l) = Complex(0, M_SQRT1_2);
        basis(l, k) = Complex(0, -M_SQRT1_2);
        img = unvec(matrix * vec(basis), d);
        worst = std::max(worst, (img - img.adjoint()).cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

Superoperator extract_generator(const ChannelFamily& family, double dt) {
  if (!(dt > 0.0)) throw ValidationError("extract_generator: dt must be > 0");
  KrausChannel ch = family(dt);
  require_validated(ch, "extract_generator");
  const Dims dims = ch.dims();
  const Index d = dims.total();
  Matrix g(d * d, d * d);
  Matrix unit = Matrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      unit(i, j) = 1.0;
      Matrix col = apply_matrix(ch, unit);
      col(i, j) -= 1.0;
      g.col(j * d + i) = vec(col) / dt;
      unit(i, j) = 0.0;
    }
  }
  return Superoperator{std::move(g), dims};
}

double convergence_order(const ChannelFamily& family,
                         const Superoperator& target,
                         std::span<const double> dts) {
  if (dts.size() < 4) {
    throw ValidationError("convergence_order: need at least 4 dt values");
  }
  for (std::size_t i = 1; i < dts.size(); ++i) {
    if (!(dts[i] < dts[i - 1])) {
      throw ValidationError("convergence_order: dts must decrease");
    }
  }
  std::vector<double> logdt, logres;
  bool any_above = false;
  for (double dt : dts) {
    const Superoperator g = extract_generator(family, dt);
    if (g.dims != target.dims) {
      throw DimensionError("convergence_order: target dimension mismatch");
    }
    const double r = (g.matrix - target.matrix).cwiseAbs().maxCoeff();
    if (r > 1e-13) any_above = true;
    logdt.push_back(std::log(dt));
    logres.push_back(std::log(std::max(r, 1e-300)));
  }
  if (!any_above) {
    throw FitError(
        "convergence_order: all residuals below 1e-13, fit is degenerate");
  }
  // least-squares slope
  const double n = static_cast<double>(logdt.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < logdt.size(); ++i) {
    sx += logdt[i];
    sy += logres[i];
    sxx += logdt[i] * logdt[i];
    sxy += logdt[i] * logres[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace quosc
