// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <complex>

#include "expact/cf_table_nu14.hpp"
#include "expact/expm_action.hpp"
#include "expact/problems.hpp"
#include "expact/random.hpp"
#include "expact/shifted_solver.hpp"
#include "expact/sparse_lu.hpp"

using namespace expact;
using cplx = std::complex<double>;

namespace {

Eigen::MatrixXd spd_dense(int n, std::uint64_t seed) {
  const Eigen::MatrixXd R = randn(n, n, seed);
  return R * R.transpose() / n + Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

TEST_CASE("projected solves match dense references") {
  const Eigen::MatrixXd H = randn(8, 8, 3);
  const std::vector<cplx> shifts{{0.5, 1.0}, {-2.0, 0.0}};
  std::vector<Eigen::MatrixXcd> rhs{randn(8, 2, 4).cast<cplx>(),
                                    randn(8, 2, 5).cast<cplx>()};
  const Eigen::MatrixXcd Hc = H.cast<cplx>();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(8, 8);

  auto Zd = solve_projected(H, ShiftMode::DirectShift, shifts, rhs);
  auto Zi = solve_projected(H, ShiftMode::InvertShift, shifts, rhs);
  for (size_t i = 0; i < shifts.size(); ++i) {
    CHECK(((Hc - shifts[i] * I) * Zd[i] - rhs[i]).norm() < 1e-11);
    CHECK(((I - shifts[i] * Hc) * Zi[i] - rhs[i]).norm() < 1e-11);
  }
}

TEST_CASE("near-singular projected system raises ShiftFailureError") {
  const Eigen::MatrixXd H = Eigen::MatrixXd::Identity(4, 4);
  std::vector<Eigen::MatrixXcd> rhs{Eigen::MatrixXcd::Ones(4, 1)};
  CHECK_THROWS_AS(
      solve_projected(H, ShiftMode::InvertShift, {cplx(1.0, 0.0)}, rhs),
      ShiftFailureError);
}

TEST_CASE("residual coefficient formulas") {
  const Eigen::MatrixXd Hlast = randn(2, 2, 9);
  std::vector<Eigen::MatrixXcd> Z{randn(6, 2, 10).cast<cplx>()};
  const std::vector<cplx> shifts{{0.3, -0.7}};
  auto Cd = residual_coefficients(ShiftMode::DirectShift, shifts, Hlast, 2, Z);
  auto Ci = residual_coefficients(ShiftMode::InvertShift, shifts, Hlast, 2, Z);
  const Eigen::MatrixXcd tail = Hlast.cast<cplx>() * Z[0].bottomRows(2);
  CHECK((Cd[0] + tail).norm() == 0.0);
  CHECK((Ci[0] - shifts[0] * tail).norm() == 0.0);
}

TEST_CASE("direct-shift solver: converged residuals and collinearity") {
  const int n = 60, p = 2;
  const Eigen::MatrixXd A = -spd_dense(n, 21) * 3.0;
  DenseOperator op(A);
  const Eigen::MatrixXd B = randn(n, p, 22);
  const std::vector<cplx> shifts{{2.0, 3.0}, {1.0, -5.0}, {4.0, 0.0}};
  const double tol = 1e-9;

  auto res = run_sbfom_dr(op, B, shifts, 8, 4, tol, 100);
  REQUIRE(res.all_converged);
  const Eigen::MatrixXcd Ac = A.cast<cplx>();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  for (size_t i = 0; i < shifts.size(); ++i) {
    const Eigen::MatrixXcd R =
        B.cast<cplx>() - (Ac - shifts[i] * I) * res.solutions[i];
    CHECK(R.norm() <= 1.01 * tol * B.norm());
    // True residual norm equals the coefficient norm; residual lies in the
    // span of the final basis block.
    CHECK(std::abs(R.norm() - res.C[i].norm()) < 1e-10 * B.norm());
    const Eigen::MatrixXcd Vc = res.V_last.cast<cplx>();
    CHECK((R - Vc * (Vc.adjoint() * R)).norm() < 1e-9 * B.norm());
  }
}

TEST_CASE("invert-shift solver with recovery matches dense solves") {
  const int n = 50, p = 2;
  Eigen::MatrixXd A = -spd_dense(n, 31) * 2.0;
  CsrMatrix Acsr = [&] {
    std::vector<Triplet> t;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t.push_back({i, j, A(i, j)});
    return CsrMatrix::from_triplets(n, t);
  }();
  InverseOperator inv = as_inverse_operator(sparse_lu(Acsr));
  const Eigen::MatrixXd B = randn(n, p, 32);
  const std::vector<cplx> shifts{{2.0, 3.0}, {5.0, -1.0}};

  auto res = run_psbfom_dr(inv, B, shifts, 8, 4, 1e-10, 100);
  REQUIRE(res.all_converged);
  const Eigen::MatrixXcd Ac = A.cast<cplx>();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  for (size_t i = 0; i < shifts.size(); ++i) {
    const Eigen::MatrixXcd X =
        (Ac - shifts[i] * I).partialPivLu().solve(B.cast<cplx>());
    CHECK((res.solutions[i] - X).norm() < 1e-8 * X.norm());
  }
  CHECK(res.stats.inverse_applies > 0);
}

TEST_CASE("happy breakdown yields the exact solution in one cycle") {
  // Diagonal matrix, B spanning a 3-dimensional invariant subspace.
  const int n = 10;
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = -1.0 - i;
  DenseOperator op(d.asDiagonal().toDenseMatrix());
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, 1);
  B(0, 0) = 1.0;
  B(3, 0) = 2.0;
  B(7, 0) = -1.0;
  const std::vector<cplx> shifts{{1.0, 2.0}};
  auto res = run_sbfom_dr(op, B, shifts, 8, 0, 1e-12, 5);
  REQUIRE(res.all_converged);
  CHECK(res.stats.cycles == 1);
  Eigen::MatrixXcd X(n, 1);
  X.setZero();
  for (int i : {0, 3, 7}) X(i, 0) = B(i, 0) / (d(i) - shifts[0]);
  CHECK((res.solutions[0] - X).norm() < 1e-12);
}

TEST_CASE("non-convergence raises ConvergenceError with stats attached") {
  const int n = 40;
  DenseOperator op(-spd_dense(n, 41) * 100.0);
  const Eigen::MatrixXd B = randn(n, 2, 42);
  try {
    run_sbfom_dr(op, B, {cplx(0.1, 0.2)}, 3, 2, 1e-14, 2);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.stats().cycles == 2);
    CHECK(e.stats().operator_applies > 0);
    CHECK(e.stats().residual_history.size() == 2);
  }
}

TEST_CASE("parameter validation") {
  DenseOperator op(-spd_dense(10, 51));
  const Eigen::MatrixXd B = randn(10, 2, 52);
  const std::vector<cplx> sh{cplx(1.0, 1.0)};
  CHECK_THROWS_AS(run_sbfom_dr(op, B, sh, 3, 6, 1e-8), ParameterError);  // k >= mp
  CHECK_THROWS_AS(run_sbfom_dr(op, B, sh, 3, 3, 1e-8), ParameterError);  // k % p
  CHECK_THROWS_AS(run_sbfom_dr(op, B, sh, 3, 2, 0.0), ParameterError);   // tol
  CHECK_THROWS_AS(run_sbfom_dr(op, randn(9, 2, 53), sh, 3, 2, 1e-8),
                  ParameterError);                                        // dim
}

TEST_CASE("observer sees every cycle with consistent flags") {
  const int n = 60;
  DenseOperator op(-spd_dense(n, 61) * 5.0);
  const Eigen::MatrixXd B = randn(n, 2, 62);
  int cycles_seen = 0;
  auto res = run_sbfom_dr(op, B, {cplx(1.0, 2.0), cplx(3.0, -4.0)}, 6, 2,
                          1e-9, 100, RitzOrdering::SmallestMagnitude,
                          [&](const CycleInfo& info) {
                            ++cycles_seen;
                            CHECK(info.cycle == cycles_seen);
                            CHECK(info.mp >= 1);
                            CHECK(info.C.size() == 2);
                          });
  CHECK(cycles_seen == res.stats.cycles);
}

TEST_CASE("preconditioned pipeline reproduces the dense exponential") {
  CsrMatrix A = poisson2d(8).scaled(-4.0);
  const Eigen::MatrixXd B = randn(A.n, 2, 71);
  InverseOperator inv = as_inverse_operator(sparse_lu(A));
  auto res = expm_action_psbfom(inv, B, cf_default14(), 10, 4, 1e-9, 100);
  const Eigen::MatrixXd Zref = dense_expm(A.to_dense(), 1.0) * B;
  CHECK((res.Z - Zref).norm() < 1e-8 * Zref.norm());
}
