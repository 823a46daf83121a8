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

#include <catch2/catch_amalgamated.hpp>

#include "quosc/channel.hpp"
#include "quosc/core.hpp"
#include "quosc/lindblad.hpp"
#include "quosc/models.hpp"
#include "test_support.hpp"

using namespace quosc;
using namespace quosc::test;

namespace {

/// Ramsey-measurement pair built from scratch, with a selectable overall
/// normalization, independent of the models module.
KrausChannel measurement_pair(double alpha, double beta, double dt, int nc,
                              double norm) {
  const FockOperators f = fock_operators(FockParams(nc));
  const double s = std::sqrt(dt);
  const Matrix cosX = 0.5 * (expm_hermitian(f.X.matrix(), alpha * s) +
                             expm_hermitian(f.X.matrix(), -alpha * s));
  const Matrix sinX = Complex(0, 0.5) *
                      (expm_hermitian(f.X.matrix(), alpha * s) -
                       expm_hermitian(f.X.matrix(), -alpha * s));
  KrausChannel ch;
  for (int sign : {+1, -1}) {
    const Matrix uq = expm_hermitian(kSz, -sign * beta * s);  // e^{+i b sz s}
    ch.kraus.push_back(
        norm * kron(uq, cosX + static_cast<double>(sign) * sinX));
  }
  return ch;
}

KrausChannel identity_channel(int nc) {
  KrausChannel ch;
  ch.kraus.push_back(Operator::identity(Dims{2, nc}));
  ch.product_form = std::vector<ProductFactors>{
      {Matrix::Identity(2, 2), Matrix::Identity(nc, nc)}};
  return ch;
}

}  // namespace

TEST_CASE("a single unitary Kraus operator validates exactly") {
  Rng rng(21);
  KrausChannel ch;
  ch.kraus.push_back(Operator(random_unitary(8, rng), Dims{2, 4}));
  REQUIRE(validate(ch) < 1e-13);
}

TEST_CASE("the printed 1/2 normalization does not validate") {
  // (c+s)^2 + (c-s)^2 = 2, so with 1/2 the sum K^dag K is I/2
  const KrausChannel half = measurement_pair(0.4, 0.3, 1e-2, 8, 0.5);
  REQUIRE(validate(half) == Catch::Approx(0.5).margin(1e-12));
  Rng rng(22);
  REQUIRE_THROWS_AS(apply(half, random_density(Dims{2, 8}, rng)),
                    ValidationError);
}

TEST_CASE("the 1/sqrt(2) normalization is complete") {
  const KrausChannel good = measurement_pair(0.4, 0.3, 1e-2, 8, M_SQRT1_2);
  REQUIRE(validate(good) <= 1e-12);
}

TEST_CASE("apply: identity channel leaves the state alone") {
  Rng rng(23);
  const DensityMatrix rho = random_density(Dims{2, 5}, rng);
  REQUIRE(max_diff(apply(identity_channel(5), rho).matrix(), rho.matrix()) <
          1e-14);
}

TEST_CASE("apply: projective dephasing kills qubit coherence") {
  const int nc = 4;
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  KrausChannel ch;
  ch.kraus.push_back(kron(p0, Matrix::Identity(nc, nc)));
  ch.kraus.push_back(kron(p1, Matrix::Identity(nc, nc)));
  const DensityMatrix out = apply(ch, plus_vacuum(nc));
  REQUIRE(max_abs(out.matrix().block(0, nc, nc, nc)) < 1e-14);
  REQUIRE(out.matrix()(0, 0).real() == Catch::Approx(0.5));
  REQUIRE(out.matrix()(nc, nc).real() == Catch::Approx(0.5));
}

TEST_CASE("apply: one measurement-feedback step cannot entangle") {
  Rng rng(24);
  const KrausChannel ch = locc_channel(0.3, 0.2, 1e-2, FockParams(10));
  for (int it = 0; it < 5; ++it) {
    const DensityMatrix out = apply(ch, random_product_state(10, rng));
    REQUIRE(negativity(out) <= 1e-10);
  }
}

TEST_CASE("apply preserves trace and positivity on random states") {
  Rng rng(kDefaultSeed + 3);
  const KrausChannel ch = locc_channel(0.5, 0.4, 5e-3, FockParams(6));
  for (int it = 0; it < 100; ++it) {
    const DensityMatrix rho = random_density(Dims{2, 6}, rng);
    const DensityMatrix out = apply(ch, rho);
    REQUIRE(std::abs(out.matrix().trace() - Complex(1, 0)) <= 1e-10);
    REQUIRE(out.eig_min() >= -1e-9);
  }
}

TEST_CASE("compose with the identity reproduces the channel") {
  const KrausChannel ch = locc_channel(0.3, 0.2, 1e-2, FockParams(5));
  const KrausChannel composed = compose(identity_channel(5), ch);
  REQUIRE(max_diff(choi(composed), choi(ch)) < 1e-12);
}

TEST_CASE("composing the two measurement rounds gives four Kraus operators") {
  const KrausChannel ch = locc_channel(0.3, 0.2, 1e-3, FockParams(12));
  REQUIRE(ch.kraus.size() == 4);
  REQUIRE(validate(ch) <= 1e-12);
  REQUIRE(ch.product_form.has_value());
}

TEST_CASE("composing two unitary channels multiplies them") {
  Rng rng(25);
  KrausChannel u, v;
  const Matrix um = random_unitary(6, rng), vm = random_unitary(6, rng);
  u.kraus.push_back(Operator(um, Dims{2, 3}));
  v.kraus.push_back(Operator(vm, Dims{2, 3}));
  const KrausChannel uv = compose(u, v);
  REQUIRE(uv.kraus.size() == 1);
  REQUIRE(max_diff(uv.kraus[0].matrix(), um * vm) < 1e-14);
}

TEST_CASE("compose agrees with sequential application") {
  Rng rng(26);
  const FockParams fock(8);
  const KrausChannel a = locc_channel(0.2, 0.4, 2e-3, fock);
  const KrausChannel b = locc_channel(0.5, 0.1, 1e-3, fock);
  const DensityMatrix rho = random_density(Dims{2, 8}, rng);
  REQUIRE(max_diff(apply(compose(a, b), rho).matrix(),
                   apply(a, apply(b, rho)).matrix()) <= 1e-12);
}

TEST_CASE("Choi matrix of the identity channel") {
  const int nc = 3;
  const Index d = 2 * nc;
  const Matrix c = choi(identity_channel(nc));
  // sum_ij |i><j| (x) |i><j| = vec(I) vec(I)^dag
  const Vector v = vec(Matrix::Identity(d, d));
  REQUIRE(max_diff(c, Matrix(v * v.adjoint())) < 1e-14);
}

TEST_CASE("Choi matrix of a unitary mixture is positive semidefinite") {
  Rng rng(27);
  const int nc = 4;
  KrausChannel ch;
  ch.kraus.push_back(Operator(std::sqrt(0.5) * random_unitary(8, rng),
                              Dims{2, nc}));
  ch.kraus.push_back(Operator(std::sqrt(0.3) * random_unitary(8, rng),
                              Dims{2, nc}));
  ch.kraus.push_back(Operator(std::sqrt(0.2) * random_unitary(8, rng),
                              Dims{2, nc}));
  REQUIRE(validate(ch) < 1e-12);
  const Matrix c = choi(ch);
  Eigen::SelfAdjointEigenSolver<Matrix> es(c, Eigen::EigenvaluesOnly);
  REQUIRE(es.eigenvalues().minCoeff() >= -1e-10);
  // partial trace over the output factor returns the identity
  const Index dd = 2 * nc;
  Matrix in_marginal = Matrix::Zero(dd, dd);
  for (Index i = 0; i < dd; ++i) {
    for (Index j = 0; j < dd; ++j) {
      in_marginal(i, j) = c.block(i * dd, j * dd, dd, dd).trace();
    }
  }
  REQUIRE(max_diff(in_marginal, Matrix::Identity(dd, dd)) < 1e-10);
}

TEST_CASE("Kraus mixing leaves the Choi matrix invariant") {
  Rng rng(kDefaultSeed + 4);
  const KrausChannel ch = locc_channel(0.3, 0.2, 1e-2, FockParams(6));
  const Matrix c0 = choi(ch);
  SECTION("identity mixer") {
    const KrausChannel mixed = mix_kraus(ch, Matrix::Identity(4, 4));
    for (std::size_t k = 0; k < 4; ++k) {
      REQUIRE(max_diff(mixed.kraus[k].matrix(), ch.kraus[k].matrix()) == 0.0);
    }
  }
  SECTION("swap mixer") {
    Matrix swap = Matrix::Identity(4, 4);
    swap.col(0).swap(swap.col(1));
    REQUIRE(max_diff(choi(mix_kraus(ch, swap)), c0) < 1e-12);
  }
  SECTION("20 random mixers, product form destroyed") {
    for (int it = 0; it < 20; ++it) {
      const KrausChannel mixed = mix_kraus(ch, random_unitary(4, rng));
      REQUIRE(max_diff(choi(mixed), c0) <= 1e-10);
      REQUIRE_FALSE(mixed.product_form.has_value());
      int nonproduct = 0;
      for (const Operator& k : mixed.kraus) {
        if (!is_product_operator(k).is_product) ++nonproduct;
      }
      REQUIRE(nonproduct >= 1);
    }
  }
  SECTION("non-unitary mixer is rejected") {
    Matrix bad = Matrix::Identity(4, 4);
    bad(0, 0) = 1.5;
    REQUIRE_THROWS_AS(mix_kraus(ch, bad), ValidationError);
  }
}

TEST_CASE("operator Schmidt rank detection") {
  const int nc = 7;
  const FockOperators f = fock_operators(FockParams(nc));
  SECTION("sigma_z (x) X is a rank-1 product") {
    const auto rep = is_product_operator(kron(kSz, f.X.matrix()));
    REQUIRE(rep.is_product);
    REQUIRE(rep.schmidt_rank == 1);
    REQUIRE(rep.gap < 1e-12);
  }
  SECTION("sigma_z (x) X + I (x) I has rank 2") {
    const Operator sum = kron(kSz, f.X.matrix()) +
                         kron(kI2, Matrix::Identity(nc, nc));
    const auto rep = is_product_operator(sum);
    REQUIRE_FALSE(rep.is_product);
    REQUIRE(rep.schmidt_rank == 2);
  }
  SECTION("the two-body coupling X sigma_z still factorizes") {
    // rank 1 despite generating entanglement as a Hamiltonian; the
    // separability predicate has to look past factorizability
    const auto rep = is_product_operator(kron(kSz, f.X.matrix()));
    REQUIRE(rep.schmidt_rank == 1);
  }
  SECTION("rank is scalar-invariant") {
    Rng rng(28);
    const Operator a(ginibre(2 * nc, rng), Dims{2, nc});
    const auto r1 = is_product_operator(a);
    const auto r2 = is_product_operator(a * Complex(2.7, -1.3));
    REQUIRE(r1.schmidt_rank == r2.schmidt_rank);
    REQUIRE(r1.is_product == r2.is_product);
  }
}

TEST_CASE("generator extraction") {
  Rng rng(kDefaultSeed + 5);
  const int nc = 4;
  const Index d = 2 * nc;
  const Matrix h = random_hermitian(d, rng);
  const ChannelFamily unitary_family = [&](double dt) {
    KrausChannel ch;
    ch.kraus.push_back(Operator(expm_hermitian(h, dt), Dims{2, nc}));
    return ch;
  };
  // commutator superoperator assembled independently from the Kronecker
  // identity vec(-i[H,rho]) = -i (I (x) H - H^T (x) I) vec(rho)
  Matrix target = Matrix::Zero(d * d, d * d);
  const Matrix id = Matrix::Identity(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      target.block(i * d, j * d, d, d) =
          Complex(0, -1) * (id(i, j) * h - h.transpose()(i, j) * id);
    }
  }

  SECTION("unitary family converges to the commutator") {
    const Superoperator g = extract_generator(unitary_family, 1e-5);
    REQUIRE((g.matrix - target).cwiseAbs().maxCoeff() < 1e-3);
  }
  SECTION("state-level remainder is second order in dt") {
    const DensityMatrix rho = random_density(Dims{2, nc}, rng);
    std::vector<double> logdt, logres;
    for (double dt : {1e-2, 1e-3, 1e-4, 1e-5}) {
      const KrausChannel ch = unitary_family(dt);
      const Matrix drho = apply_matrix(ch, rho.matrix()) - rho.matrix();
      const Matrix lin = unvec(Vector(target * vec(rho.matrix())), d);
      logdt.push_back(std::log(dt));
      logres.push_back(std::log((drho - dt * lin).cwiseAbs().maxCoeff()));
    }
    REQUIRE(slope_of(logdt, logres) == Catch::Approx(2.0).margin(0.1));
  }
  SECTION("generator-level convergence order is one") {
    // the finite difference picks up the dt/2 [H,[H,.]] term, so the
    // generator residual itself scales linearly
    const std::vector<double> dts{1e-2, 1e-3, 1e-4, 1e-5};
    const double slope =
        convergence_order(unitary_family, Superoperator{target, Dims{2, nc}},
                          dts);
    REQUIRE(slope == Catch::Approx(1.0).margin(0.1));
  }
  SECTION("identity family gives the zero superoperator") {
    const ChannelFamily id_family = [&](double) {
      KrausChannel ch;
      ch.kraus.push_back(Operator::identity(Dims{2, nc}));
      return ch;
    };
    const Superoperator g = extract_generator(id_family, 1e-3);
    REQUIRE(max_abs(g.matrix) == 0.0);
  }
  SECTION("dt must be positive") {
    REQUIRE_THROWS_AS(extract_generator(unitary_family, 0.0),
                      ValidationError);
  }
  SECTION("degenerate fit is reported") {
    const ChannelFamily id_family = [&](double) {
      KrausChannel ch;
      ch.kraus.push_back(Operator::identity(Dims{2, nc}));
      return ch;
    };
    const Superoperator zero{Matrix::Zero(d * d, d * d), Dims{2, nc}};
    const std::vector<double> dts{1e-2, 1e-3, 1e-4, 1e-5};
    REQUIRE_THROWS_AS(convergence_order(id_family, zero, dts), FitError);
  }
  SECTION("dt grid must decrease and hold at least 4 points") {
    const std::vector<double> short_grid{1e-2, 1e-3, 1e-4};
    REQUIRE_THROWS_AS(
        convergence_order(unitary_family, Superoperator{target, Dims{2, nc}},
                          short_grid),
        ValidationError);
  }
}

TEST_CASE("separable channels keep product inputs separable") {
  Rng rng(kDefaultSeed + 6);
  const KrausChannel ch = locc_channel(0.4, 0.3, 2e-3, FockParams(8));
  REQUIRE(ch.product_form.has_value());
  for (int it = 0; it < 20; ++it) {
    DensityMatrix rho = random_product_state(8, rng);
    for (int step = 0; step < 5; ++step) rho = apply(ch, rho);
    REQUIRE(negativity(rho) <= 1e-9);
  }
}

TEST_CASE("extraction refuses an incomplete family") {
  const ChannelFamily bad = [](double dt) {
    return measurement_pair(0.3, 0.2, dt, 6, 0.5);
  };
  REQUIRE_THROWS_AS(extract_generator(bad, 1e-3), ValidationError);
}
