// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "expact/problems.hpp"
#include "expact/random.hpp"

using namespace expact;

TEST_CASE("poisson2d(2) has the 5-point stencil pattern") {
  const Eigen::MatrixXd A = poisson2d(2).to_dense();
  REQUIRE(A.rows() == 4);
  for (int i = 0; i < 4; ++i) CHECK(A(i, i) == 4.0);
  // Grid (0,0),(0,1),(1,0),(1,1): neighbors differ in one coordinate.
  CHECK(A(0, 1) == -1.0);
  CHECK(A(0, 2) == -1.0);
  CHECK(A(0, 3) == 0.0);
  CHECK(A(1, 2) == 0.0);
  CHECK((A - A.transpose()).norm() == 0.0);
}

TEST_CASE("poisson2d(3) eigenvalues lie in (0,8)") {
  const Eigen::MatrixXd A = poisson2d(3).to_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  CHECK(es.eigenvalues().maxCoeff() < 8.0);
}

TEST_CASE("poisson2d row sums reflect boundary truncation") {
  const int k = 5;
  const Eigen::MatrixXd A = poisson2d(k).to_dense();
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double rowsum = A.row(i * k + j).sum();
      const int interior_neighbors = (i > 0) + (i < k - 1) + (j > 0) + (j < k - 1);
      CHECK(rowsum == 4.0 - interior_neighbors);
      CHECK(rowsum >= 0.0);
    }
  }
  CHECK_THROWS_AS(poisson2d(1), ParameterError);
}

TEST_CASE("Grunwald weights: closed forms and recurrence") {
  const double beta = 1.7;
  const GrunwaldWeights g = grunwald_weights(beta, 50);
  CHECK(g.weights[0] == 1.0);
  CHECK(g.weights[1] == -beta);
  CHECK(g.weights[2] == Catch::Approx(beta * (beta - 1.0) / 2.0).epsilon(1e-15));
  // Recurrence holds bit-for-bit as specified, positivity for k >= 2.
  for (int k = 1; k <= 50; ++k) {
    CHECK(g.weights[k] == (1.0 - (beta + 1.0) / k) * g.weights[k - 1]);
    if (k >= 2) CHECK(g.weights[k] > 0.0);
  }
  CHECK_THROWS_AS(grunwald_weights(1.0, 5), ParameterError);
  CHECK_THROWS_AS(grunwald_weights(2.0, 5), ParameterError);
}

TEST_CASE("one-sided operator structure") {
  const int n = 4;
  const double beta = 1.7;
  const Eigen::MatrixXd A = fde_onesided(n, beta).to_dense();
  const double h = 1.0 / (n + 1);
  // Superdiagonal entries are d(x_i) h^{-beta} g_0 with g_0 = 1.
  for (int i = 0; i + 1 < n; ++i) {
    const double expected = std::pow(h, -beta) * fde_coefficient(beta, (i + 1) * h);
    CHECK(A(i, i + 1) == Catch::Approx(expected).epsilon(1e-14));
  }
  // Lower Hessenberg: zero above the superdiagonal.
  CHECK(A(0, 2) == 0.0);
  CHECK(A(0, 3) == 0.0);
  CHECK(A(1, 3) == 0.0);
}

TEST_CASE("one-sided spectrum lies in the open left half-plane") {
  const Eigen::MatrixXd A = fde_onesided(50, 1.7).to_dense();
  Eigen::EigenSolver<Eigen::MatrixXd> es(A);
  for (int i = 0; i < 50; ++i) CHECK(es.eigenvalues()(i).real() < 0.0);
}

TEST_CASE("one-sided conditioning grows with n") {
  auto cond2 = [](int n) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(fde_onesided(n, 1.7).to_dense());
    return svd.singularValues()(0) / svd.singularValues()(n - 1);
  };
  const double c50 = cond2(50), c100 = cond2(100), c200 = cond2(200);
  CHECK(c50 < c100);
  CHECK(c100 < c200);
}

TEST_CASE("two-sided operator: symmetry, cross-construction, diagonal sign") {
  SECTION("d1 = d2 gives a symmetric operator") {
    const ToeplitzOperator T = fde_twosided_toeplitz(16, 1.8, 2.0, 2.0);
    CHECK((T.first_col() - T.first_row()).norm() == 0.0);
  }
  SECTION("Toeplitz and CSR constructions agree elementwise") {
    const Eigen::MatrixXd Td =
        fde_twosided_toeplitz(64, 1.8, 1.0, 3.0).to_dense();
    const Eigen::MatrixXd Cd = fde_twosided_csr(64, 1.8, 1.0, 3.0).to_dense();
    CHECK((Td - Cd).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("diagonal entry is negative") {
    const ToeplitzOperator T = fde_twosided_toeplitz(16, 1.8, 1.0, 3.0);
    const int n = 16;
    const double h = 1.0 / (n + 1);
    CHECK(T.first_col()(0) ==
          Catch::Approx(std::pow(h, -1.8) * 4.0 * (-1.8)).epsilon(1e-13));
    CHECK(T.first_col()(0) < 0.0);
  }
}

TEST_CASE("dense exponential: exact special cases") {
  SECTION("zero matrix") {
    const Eigen::MatrixXd E = dense_expm(Eigen::MatrixXd::Zero(5, 5), 1.0);
    CHECK((E - Eigen::MatrixXd::Identity(5, 5)).norm() == 0.0);
  }
  SECTION("diagonal matrix") {
    Eigen::VectorXd d(4);
    d << -1.0, 0.5, -3.0, 2.0;
    const Eigen::MatrixXd E = dense_expm(d.asDiagonal().toDenseMatrix(), 0.7);
    for (int i = 0; i < 4; ++i)
      CHECK(E(i, i) == Catch::Approx(std::exp(0.7 * d(i))).epsilon(1e-14));
  }
  SECTION("nilpotent 2x2") {
    Eigen::MatrixXd N(2, 2);
    N << 0, 1, 0, 0;
    const Eigen::MatrixXd E = dense_expm(N, 1.0);
    CHECK(E(0, 0) == 1.0);
    CHECK(E(0, 1) == 1.0);
    CHECK(E(1, 0) == 0.0);
    CHECK(E(1, 1) == 1.0);
  }
}

TEST_CASE("dense exponential: semigroup property on stable matrices") {
  const Eigen::MatrixXd A =
      -3.0 * Eigen::MatrixXd::Identity(50, 50) + 0.5 * randn(50, 50, 13);
  const Eigen::MatrixXd E1 = dense_expm(A, 1.0);
  const Eigen::MatrixXd Eh = dense_expm(A, 0.5);
  CHECK((E1 - Eh * Eh).norm() <= 1e-10 * E1.norm());
}

TEST_CASE("dense exponential matches an eigendecomposition on symmetric input") {
  Eigen::MatrixXd S = randn(40, 40, 14);
  S = -(S + S.transpose()) / 2.0 - 5.0 * Eigen::MatrixXd::Identity(40, 40);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  const Eigen::MatrixXd Eref =
      es.eigenvectors() *
      es.eigenvalues().array().exp().matrix().asDiagonal() *
      es.eigenvectors().transpose();
  CHECK((dense_expm(S, 1.0) - Eref).norm() <= 1e-13 * Eref.norm());
}

TEST_CASE("ill-conditioned test vector is finite and O(1)") {
  const Eigen::VectorXd bhat = fde_onesided_rhs(100, 1.7);
  REQUIRE(bhat.allFinite());
  CHECK(bhat.norm() > 0.1);
  CHECK(bhat.norm() < 100.0);
}
