// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_BLOCK_ARNOLDI_HPP_
#define EXPACT_BLOCK_ARNOLDI_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

#include "expact/errors.hpp"
#include "expact/linear_operator.hpp"

namespace expact {

/// Orthonormal block Krylov basis with its band upper-Hessenberg projection.
/// V has src_cols + p columns; Hbar is (src_cols + p) x src_cols and
/// satisfies Op(V[:, :src_cols]) = V * Hbar columnwise. After a deflated
/// restart the leading (k_defl + p) x k_defl portion of Hbar is full.
struct ArnoldiState {
  int n = 0;
  int p = 0;
  int src_cols = 0;  // columns the operator has been applied to
  int k_defl = 0;    // retained columns from the previous cycle
  Eigen::MatrixXd V;
  Eigen::MatrixXd Hbar;

  int basis_cols() const { return src_cols + p; }

  /// Square projection H_m (the leading src_cols x src_cols part of Hbar).
  Eigen::MatrixXd square_part() const {
    return Hbar.topRows(src_cols);
  }

  /// Bottom p x p coupling block H_{m+1,m} of the last source column group.
  Eigen::MatrixXd coupling_block() const {
    return Hbar.bottomRightCorner(p, p);
  }

  /// Final basis block V_{m+1} (last p columns).
  Eigen::MatrixXd last_block() const { return V.rightCols(p); }
};

/// Ritz pairs of the projected matrix: values, vectors, and per-pair
/// residual factors H_{m+1,m} E_m^T y_j.
struct RitzSet {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;           // columns y_j, mp each
  Eigen::MatrixXcd residual_factors;  // p x mp, column j = H_{m+1,m} E_m^T y_j
};

enum class RitzOrdering {
  SmallestMagnitude,  // deflate eigenvalues of H_m smallest in |.|
  LargestMagnitude,   // deflate eigenvalues of H_m largest in |.|
};

/// QR of the initial block with a nonnegative-diagonal sign convention.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> qr_block(
    const Eigen::MatrixXd& R0) {
  const int n = static_cast<int>(R0.rows());
  const int p = static_cast<int>(R0.cols());
  if (n < p) throw ParameterError("qr_block: more columns than rows");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(R0);
  const auto& sv = svd.singularValues();
  if (sv(p - 1) <= 1e-12 * sv(0))
    throw ConstructionError(
        "qr_block: numerically rank-deficient block (deflation unsupported)");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(R0);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
  Eigen::MatrixXd R =
      qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  for (int j = 0; j < p; ++j) {
    if (R(j, j) < 0.0) {
      R.row(j) = -R.row(j);
      Q.col(j) = -Q.col(j);
    }
  }
  return {Q, R};
}

/// Initial state from an orthonormal starting block.
inline ArnoldiState arnoldi_init(const Eigen::MatrixXd& V1) {
  ArnoldiState s;
  s.n = static_cast<int>(V1.rows());
  s.p = static_cast<int>(V1.cols());
  s.src_cols = 0;
  s.k_defl = 0;
  s.V = V1;
  s.Hbar.resize(s.p, 0);
  return s;
}

/// Extends the basis to m blocks (m*p source columns) by Ruhe's variant:
/// one operator application per new basis column, classical Gram-Schmidt
/// with one full reorthogonalization pass.
inline ArnoldiState& arnoldi_extend(const LinearOperator& op, ArnoldiState& s,
                                    int m) {
  const int n = s.n;
  const int p = s.p;
  const int target = m * p;
  if (op.dim() != n) throw ParameterError("arnoldi_extend: dimension mismatch");
  if (s.src_cols >= target)
    throw ParameterError("arnoldi_extend: state already has >= m blocks");

  s.V.conservativeResize(n, target + p);
  Eigen::MatrixXd Hnew = Eigen::MatrixXd::Zero(target + p, target);
  Hnew.topLeftCorner(s.Hbar.rows(), s.Hbar.cols()) = s.Hbar;
  s.Hbar.swap(Hnew);

  Eigen::VectorXd w(n);
  for (int j = s.src_cols; j < target; ++j) {
    const int cols = j + p;  // columns already in the basis
    Eigen::VectorXd src = s.V.col(j);
    op.apply(src, w);
    const double pre_norm = w.norm();
    auto Vj = s.V.leftCols(cols);
    Eigen::VectorXd h = Vj.transpose() * w;
    w.noalias() -= Vj * h;
    Eigen::VectorXd h2 = Vj.transpose() * w;  // one reorthogonalization pass
    w.noalias() -= Vj * h2;
    h += h2;
    const double nrm = w.norm();
    s.Hbar.col(j).head(cols) = h;
    s.Hbar(cols, j) = nrm;
    if (nrm < 1e-12 * (1.0 + pre_norm)) {
      s.src_cols = j;
      throw BreakdownError(
          "arnoldi_extend: breakdown at basis column " + std::to_string(cols),
          cols);
    }
    s.V.col(cols) = w / nrm;
  }
  s.src_cols = target;
  return s;
}

/// Full eigendecomposition of the square projection, sorted for deflation.
/// Conjugate pairs stay adjacent; eigenvectors are normalized so their
/// largest-magnitude entry is real positive.
inline RitzSet compute_ritz(const Eigen::MatrixXd& Hm, RitzOrdering ordering) {
  const int mp = static_cast<int>(Hm.rows());
  if (Hm.cols() != mp) throw ParameterError("compute_ritz: Hm must be square");
  Eigen::EigenSolver<Eigen::MatrixXd> es(Hm);
  if (es.info() != Eigen::Success)
    throw ConstructionError("compute_ritz: eigensolver did not converge");

  std::vector<int> idx(static_cast<size_t>(mp));
  std::iota(idx.begin(), idx.end(), 0);
  const auto& vals = es.eigenvalues();
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double ma = std::abs(vals(a));
    const double mb = std::abs(vals(b));
    if (ma != mb)
      return ordering == RitzOrdering::SmallestMagnitude ? ma < mb : ma > mb;
    if (vals(a).real() != vals(b).real())
      return vals(a).real() < vals(b).real();
    return vals(a).imag() < vals(b).imag();
  });

  RitzSet ritz;
  ritz.values.resize(mp);
  ritz.vectors.resize(mp, mp);
  for (int j = 0; j < mp; ++j) {
    ritz.values(j) = vals(idx[static_cast<size_t>(j)]);
    Eigen::VectorXcd y = es.eigenvectors().col(idx[static_cast<size_t>(j)]);
    int imax = 0;
    y.cwiseAbs().maxCoeff(&imax);
    y /= y(imax) / std::abs(y(imax));  // largest entry real positive
    y /= y.norm();
    ritz.vectors.col(j) = y;
  }
  return ritz;
}

/// compute_ritz on a solver state, including the residual factors.
inline RitzSet compute_ritz(const ArnoldiState& s, RitzOrdering ordering) {
  RitzSet ritz = compute_ritz(s.square_part(), ordering);
  const Eigen::MatrixXd Hlast = s.coupling_block();
  ritz.residual_factors =
      Hlast.cast<std::complex<double>>() *
      ritz.vectors.bottomRows(s.p);
  return ritz;
}

/// Thick (deflated) restart, Morgan style: keeps k Ritz vectors (complex
/// vectors split into real and imaginary columns; k grows by one column if
/// a conjugate pair straddles the cut, capped at mp - p), orthonormalizes
/// them into P_k, appends the trailing identity block to form P_{k+p}, and
/// compresses basis and projection through it.
inline ArnoldiState deflated_restart(const ArnoldiState& s, const RitzSet& ritz,
                                     int k) {
  const int p = s.p;
  const int mp = s.src_cols;
  if (k < 0 || k >= mp)
    throw ParameterError("deflated_restart: need 0 <= k < m*p");
  if (k % p != 0)
    throw ParameterError("deflated_restart: k must be a multiple of p");

  // Select columns; a complex pair contributes its real and imaginary parts.
  Eigen::MatrixXd Y(mp, std::min(k + 1, mp - p));
  int taken = 0;
  for (int j = 0; j < mp && taken < k; ++j) {
    const std::complex<double> mu = ritz.values(j);
    const bool is_complex =
        std::abs(mu.imag()) > 1e-13 * (1.0 + std::abs(mu));
    if (!is_complex) {
      Y.col(taken++) = ritz.vectors.col(j).real();
      continue;
    }
    if (mu.imag() < 0.0) continue;  // its partner carries the pair
    if (taken + 2 > Y.cols()) break;  // pair would exceed the cap
    Y.col(taken++) = ritz.vectors.col(j).real();
    Y.col(taken++) = ritz.vectors.col(j).imag();
  }
  const int kk = taken;

  ArnoldiState out;
  out.n = s.n;
  out.p = p;
  out.k_defl = kk;
  out.src_cols = kk;
  if (kk == 0) {
    // Thick restart degenerates to a plain restart from the last block.
    out.V = s.last_block();
    out.Hbar.resize(p, 0);
    return out;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Y.leftCols(kk));
  if (svd.singularValues()(kk - 1) < 1e-12)
    throw ConstructionError(
        "deflated_restart: selected Ritz vectors are rank-deficient");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y.leftCols(kk));
  Eigen::MatrixXd Pk = qr.householderQ() * Eigen::MatrixXd::Identity(mp, kk);

  Eigen::MatrixXd Pkp = Eigen::MatrixXd::Zero(mp + p, kk + p);
  Pkp.topLeftCorner(mp, kk) = Pk;
  Pkp.bottomRightCorner(p, p).setIdentity();

  out.V.noalias() = s.V * Pkp;
  out.Hbar.noalias() = Pkp.transpose() * s.Hbar * Pk;
  return out;
}

}  // namespace expact

#endif  // EXPACT_BLOCK_ARNOLDI_HPP_
