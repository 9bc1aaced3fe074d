// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <complex>

#include "expact/cf_table_nu14.hpp"
#include "expact/problems.hpp"
#include "expact/random.hpp"
#include "expact/sparse_lu.hpp"
#include "expact/verify.hpp"

using namespace expact;
using cplx = std::complex<double>;

namespace {

Eigen::MatrixXd hessenberg_like(int mp, int p, std::uint64_t seed) {
  // A generic (mp+p) x mp projection block for identity checks.
  Eigen::MatrixXd H = randn(mp + p, mp, seed) / 4.0;
  for (int j = 0; j < mp; ++j)
    for (int i = mp; i < mp + p; ++i)
      if (j < mp - p) H(i, j) = 0.0;
  return H;
}

}  // namespace

TEST_CASE("projected least squares: special cases") {
  const int mp = 10, p = 1;
  const Eigen::MatrixXd Hbar = hessenberg_like(mp, p, 3);
  const Eigen::MatrixXcd rhs = randn(mp + p, 1, 4).cast<cplx>();
  SECTION("tau = 0 returns the top block of the rhs") {
    const Eigen::MatrixXcd Z = gmres_projected_seed(Hbar, cplx(0, 0), rhs);
    CHECK((Z - rhs.topRows(mp)).norm() < 1e-13);
  }
  SECTION("zero coupling block reduces to the square solve") {
    Eigen::MatrixXd H0 = Hbar;
    H0.bottomRows(p).setZero();
    Eigen::MatrixXcd r0 = rhs;
    r0.bottomRows(p).setZero();
    const cplx tau(0.4, 0.9);
    const Eigen::MatrixXcd Z = gmres_projected_seed(H0, tau, r0);
    const Eigen::MatrixXcd M =
        Eigen::MatrixXcd::Identity(mp, mp) -
        tau * H0.topRows(mp).cast<cplx>();
    CHECK((M * Z - r0.topRows(mp)).norm() < 1e-12);
  }
  SECTION("normal equations are satisfied") {
    const cplx tau(0.3, -0.8);
    const Eigen::MatrixXcd Z = gmres_projected_seed(Hbar, tau, rhs);
    Eigen::MatrixXcd M = -tau * Hbar.cast<cplx>();
    M.topRows(mp) += Eigen::MatrixXcd::Identity(mp, mp);
    CHECK((M.adjoint() * (rhs - M * Z)).norm() < 1e-12);
  }
}

TEST_CASE("FOM/GMRES correction identity on random projections") {
  const int mp = 12, p = 2;
  const Eigen::MatrixXd Hbar = hessenberg_like(mp, p, 7);
  const std::vector<cplx> shifts{{0.5, 1.2}, {-0.7, 0.4}, {1.1, -0.3}};
  std::vector<Eigen::MatrixXcd> rhat;
  for (int i = 0; i < 3; ++i) rhat.push_back(randn(p, p, 20 + i).cast<cplx>());
  const WoodburyCheckResult res = check_theorem_4_1(Hbar, shifts, rhat);
  for (size_t i = 0; i < shifts.size(); ++i) REQUIRE(res.applicable[i]);
  CHECK(res.max_deviation <= 1e-10);
}

TEST_CASE("zero coupling block makes the corrections vanish") {
  const int mp = 8, p = 2;
  Eigen::MatrixXd Hbar = hessenberg_like(mp, p, 9);
  Hbar.bottomRows(p).setZero();
  std::vector<Eigen::MatrixXcd> rhat{randn(p, p, 30).cast<cplx>()};
  const WoodburyCheckResult res =
      check_theorem_4_1(Hbar, {cplx(0.6, 0.7)}, rhat);
  CHECK(res.max_deviation <= 1e-12);
}

TEST_CASE("single-shift case matches a direct Woodbury identity") {
  const int mp = 9, p = 1;
  const Eigen::MatrixXd Hbar = hessenberg_like(mp, p, 11);
  std::vector<Eigen::MatrixXcd> rhat{randn(p, p, 31).cast<cplx>()};
  const WoodburyCheckResult res =
      check_theorem_4_1(Hbar, {cplx(0.2, 0.9)}, rhat);
  CHECK(res.max_deviation <= 1e-11);
}

TEST_CASE("Ritz-residual expansion on an inverse-Laplacian Krylov space") {
  CsrMatrix A = poisson2d(8).scaled(-30.0);
  InverseOperator inv = as_inverse_operator(sparse_lu(A));
  auto [V1, R0] = qr_block(randn(A.n, 1, 40));
  ArnoldiState s = arnoldi_init(V1);
  arnoldi_extend(inv, s, 6);

  std::vector<cplx> shifts;
  for (const cd& t : cf_default14().poles)
    if (t.imag() >= 0.0) shifts.push_back(t);
  const RitzResidualCheckResult res =
      check_theorem_4_2(inv, s, shifts, R0.cast<cplx>());
  CHECK(res.max_deviation <= 1e-8 * res.cond_P);
}

TEST_CASE("Ritz-residual expansion: scalar and zero-shift cases") {
  SECTION("mp = 1 is exact") {
    DenseOperator op(0.5 * randn(3, 3, 44));
    auto [V1, R0] = qr_block(randn(3, 1, 41));
    ArnoldiState s = arnoldi_init(V1);
    arnoldi_extend(op, s, 1);
    const RitzResidualCheckResult res =
        check_theorem_4_2(op, s, {cplx(0.3, 0.1)}, R0.cast<cplx>());
    CHECK(res.max_deviation <= 1e-12);
  }
  SECTION("tau = 0 gives zero residual on both sides") {
    DenseOperator op(-2.0 * Eigen::MatrixXd::Identity(10, 10) +
                     0.2 * randn(10, 10, 42));
    auto [V1, R0] = qr_block(randn(10, 1, 43));
    ArnoldiState s = arnoldi_init(V1);
    arnoldi_extend(op, s, 4);
    const RitzResidualCheckResult res =
        check_theorem_4_2(op, s, {cplx(0.0, 0.0)}, R0.cast<cplx>());
    CHECK(res.max_deviation == 0.0);
  }
}

TEST_CASE("inexact-inverse bound: unperturbed case is exact") {
  const Eigen::MatrixXd R = randn(20, 20, 50);
  const Eigen::MatrixXd A =
      R * R.transpose() / 20.0 + Eigen::MatrixXd::Identity(20, 20);
  const auto checks = check_theorem_4_3(
      A, Eigen::MatrixXd::Zero(20, 20), {cplx(2.0, 3.0)}, randn(20, 1, 51));
  REQUIRE(checks.size() == 1);
  CHECK(checks[0].applicable);
  CHECK(checks[0].observed <= 1e-13);
  CHECK(checks[0].bound == 0.0);
}

TEST_CASE("inexact-inverse bound holds with a safety factor") {
  const Eigen::MatrixXd R = randn(30, 30, 52);
  const Eigen::MatrixXd A =
      R * R.transpose() / 30.0 + Eigen::MatrixXd::Identity(30, 30);
  const Eigen::MatrixXd Ainv =
      A.partialPivLu().solve(Eigen::MatrixXd::Identity(30, 30));
  Eigen::MatrixXd F = randn(30, 30, 53);
  F *= 1e-8 * Ainv.norm() / F.norm();
  std::vector<cplx> shifts;
  for (const cd& t : cf_default14().poles)
    if (t.imag() > 0.0) shifts.push_back(t);
  const auto checks = check_theorem_4_3(A, F, shifts, randn(30, 2, 54));
  for (const auto& c : checks) {
    REQUIRE(c.applicable);
    CHECK(c.observed <= 10.0 * c.bound);
  }
}

TEST_CASE("scalar case: observed and bound agree to first order") {
  Eigen::MatrixXd A(1, 1), F(1, 1), B(1, 1);
  A << 2.0;
  F << 1e-9;
  B << 1.0;
  const auto checks = check_theorem_4_3(A, F, {cplx(0.5, 0.0)}, B);
  REQUIRE(checks.size() == 1);
  // kappa = 1 for a scalar; observed/bound -> |tau...| ratio of order one.
  CHECK(checks[0].observed <= checks[0].bound * 1.5);
  CHECK(checks[0].observed >= checks[0].bound * 0.1);
}
