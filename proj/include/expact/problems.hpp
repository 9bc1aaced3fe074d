// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_PROBLEMS_HPP_
#define EXPACT_PROBLEMS_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "expact/csr.hpp"
#include "expact/errors.hpp"
#include "expact/toeplitz.hpp"

namespace expact {

/// 5-point finite-difference Laplacian on a k x k interior grid with
/// homogeneous Dirichlet boundary: n = k^2, diagonal 4, neighbors -1.
/// Symmetric positive definite; callers scale (e.g. by -2500) as needed.
inline CsrMatrix poisson2d(int k) {
  if (k < 2) throw ParameterError("poisson2d: grid must be at least 2x2");
  const int n = k * k;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(5 * n));
  auto id = [k](int i, int j) { return i * k + j; };
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const int row = id(i, j);
      trips.push_back({row, row, 4.0});
      if (i > 0) trips.push_back({row, id(i - 1, j), -1.0});
      if (i < k - 1) trips.push_back({row, id(i + 1, j), -1.0});
      if (j > 0) trips.push_back({row, id(i, j - 1), -1.0});
      if (j < k - 1) trips.push_back({row, id(i, j + 1), -1.0});
    }
  }
  return CsrMatrix::from_triplets(n, trips);
}

/// Shifted Grunwald weights g_0..g_n for the fractional derivative of order
/// beta in (1,2): g_0 = 1, g_k = (1 - (beta+1)/k) g_{k-1}.
struct GrunwaldWeights {
  double beta = 0.0;
  std::vector<double> weights;
};

inline GrunwaldWeights grunwald_weights(double beta, int n) {
  if (!(beta > 1.0 && beta < 2.0))
    throw ParameterError("grunwald_weights: beta must be in (1,2)");
  if (n < 0) throw ParameterError("grunwald_weights: n must be nonnegative");
  GrunwaldWeights gw;
  gw.beta = beta;
  gw.weights.resize(static_cast<size_t>(n) + 1);
  gw.weights[0] = 1.0;
  for (int k = 1; k <= n; ++k)
    gw.weights[static_cast<size_t>(k)] =
        (1.0 - (beta + 1.0) / k) * gw.weights[static_cast<size_t>(k) - 1];
  return gw;
}

/// Diffusion coefficient d(x) = Gamma(4-beta)/6 * x^{1+beta} of the
/// one-sided fractional diffusion problem.
inline double fde_coefficient(double beta, double x) {
  return std::tgamma(4.0 - beta) / 6.0 * std::pow(x, 1.0 + beta);
}

/// One-sided fractional diffusion operator A = (1/h^beta) D G on the
/// interior grid x_j = j h, h = 1/(n+1): D = diag(d(x_j)) and G the lower
/// Hessenberg Toeplitz matrix G_{i,j} = g_{i-j+1} for i-j >= -1 (1-based).
/// The variable coefficient makes A itself non-Toeplitz.
inline CsrMatrix fde_onesided(int n, double beta) {
  if (n < 4) throw ParameterError("fde_onesided: n must be at least 4");
  const GrunwaldWeights gw = grunwald_weights(beta, n);
  const double h = 1.0 / (n + 1);
  const double scale = std::pow(h, -beta);
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(n) * (static_cast<size_t>(n) + 3) / 2);
  for (int i = 0; i < n; ++i) {
    const double di = scale * fde_coefficient(beta, (i + 1) * h);
    for (int j = 0; j <= std::min(i + 1, n - 1); ++j)
      trips.push_back({i, j, di * gw.weights[static_cast<size_t>(i - j + 1)]});
  }
  return CsrMatrix::from_triplets(n, trips);
}

/// Two-sided constant-coefficient fractional diffusion operator
/// (1/h^beta)(d1 G + d2 G^T), which is Toeplitz; returned through its first
/// column and first row.
inline ToeplitzOperator fde_twosided_toeplitz(int n, double beta, double d1,
                                              double d2) {
  if (n < 4) throw ParameterError("fde_twosided_toeplitz: n must be >= 4");
  const GrunwaldWeights gw = grunwald_weights(beta, n);
  const double scale = std::pow(1.0 / (n + 1), -beta);
  const auto& g = gw.weights;
  Eigen::VectorXd col(n), row(n);
  for (int i = 0; i < n; ++i) {
    col(i) = scale * (d1 * g[static_cast<size_t>(i) + 1] +
                      (i <= 1 ? d2 * g[static_cast<size_t>(1 - i)] : 0.0));
    row(i) = scale * (d2 * g[static_cast<size_t>(i) + 1] +
                      (i <= 1 ? d1 * g[static_cast<size_t>(1 - i)] : 0.0));
  }
  return ToeplitzOperator(col, row);
}

/// Same operator assembled entrywise in CSR form, for cross-checking the
/// Toeplitz construction.
inline CsrMatrix fde_twosided_csr(int n, double beta, double d1, double d2) {
  if (n < 4) throw ParameterError("fde_twosided_csr: n must be >= 4");
  const GrunwaldWeights gw = grunwald_weights(beta, n);
  const double scale = std::pow(1.0 / (n + 1), -beta);
  const auto& g = gw.weights;
  std::vector<Triplet> trips;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      if (i - j >= -1) v += d1 * g[static_cast<size_t>(i - j) + 1];
      if (j - i >= -1) v += d2 * g[static_cast<size_t>(j - i) + 1];
      if (v != 0.0) trips.push_back({i, j, scale * v});
    }
  }
  return CsrMatrix::from_triplets(n, trips);
}

/// Dense matrix exponential e^{tA} by scaling-and-squaring with the
/// degree-13 diagonal Pade approximant (the standard expm algorithm).
inline Eigen::MatrixXd dense_expm(const Eigen::MatrixXd& A, double t = 1.0) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw ParameterError("dense_expm: matrix must be square");
  if (n > 2000) throw ParameterError("dense_expm: n capped at 2000");

  Eigen::MatrixXd M = t * A;
  const double theta13 = 5.371920351148152;
  const double nrm = M.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
  int s = 0;
  if (nrm > theta13) {
    s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    if (s > 1022) throw ParameterError("dense_expm: norm beyond scaling range");
    M /= std::pow(2.0, s);
  }

  static const double b[14] = {64764752532480000.0, 32382376266240000.0,
                               7771770303897600.0,  1187353796428800.0,
                               129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,
                               1323241920.0,        40840800.0,
                               960960.0,            16380.0,
                               182.0,               1.0};
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd M2 = M * M;
  const Eigen::MatrixXd M4 = M2 * M2;
  const Eigen::MatrixXd M6 = M4 * M2;
  const Eigen::MatrixXd U =
      M * (M6 * (b[13] * M6 + b[11] * M4 + b[9] * M2) + b[7] * M6 +
           b[5] * M4 + b[3] * M2 + b[1] * I);
  const Eigen::MatrixXd V = M6 * (b[12] * M6 + b[10] * M4 + b[8] * M2) +
                            b[6] * M6 + b[4] * M4 + b[2] * M2 + b[0] * I;
  Eigen::MatrixXd E = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < s; ++i) E = E * E;
  return E;
}

/// Initial/source data of the ill-conditioned fractional diffusion test:
/// bhat = u0 + (A+I)^{-1} btilde, with u0_i = x_i^3 and btilde the
/// discretized source q(x,t)/e^{-t} = -(1+x)x^3 plus the inflow boundary
/// term d(x_n) h^{-beta} g_0 folded into the last row.
inline Eigen::VectorXd fde_onesided_rhs(int n, double beta) {
  const CsrMatrix A = fde_onesided(n, beta);
  const double h = 1.0 / (n + 1);
  Eigen::VectorXd u0(n), btilde(n);
  for (int i = 0; i < n; ++i) {
    const double x = (i + 1) * h;
    u0(i) = x * x * x;
    btilde(i) = -(1.0 + x) * x * x * x;
  }
  btilde(n - 1) +=
      fde_coefficient(beta, n * h) * std::pow(h, -beta);
  Eigen::MatrixXd ApI = A.to_dense();
  ApI.diagonal().array() += 1.0;
  return u0 + ApI.partialPivLu().solve(btilde);
}

}  // namespace expact

#endif  // EXPACT_PROBLEMS_HPP_
