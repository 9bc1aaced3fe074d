// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_VERIFY_HPP_
#define EXPACT_VERIFY_HPP_

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "expact/block_arnoldi.hpp"
#include "expact/errors.hpp"
#include "expact/linear_operator.hpp"

namespace expact {

// Executable checks of three exact identities behind the preconditioned
// shifted block solver. Each check computes its two sides by independent
// code paths and reports the relative deviation, so a regression in either
// path is caught by the other.

namespace detail {

inline Eigen::MatrixXcd embed_top(const Eigen::MatrixXcd& R, int rows) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows, R.cols());
  out.topRows(R.rows()) = R;
  return out;
}

inline double norm2(const Eigen::MatrixXcd& M) {
  if (M.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(M).singularValues()(0);
}

inline double norm2(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues()(0);
}

}  // namespace detail

/// Least-squares solution of min_Z || rhs - (Itil - tau Htil) Z ||_F, where
/// Htil is the (mp+p) x mp band Hessenberg projection and Itil stacks the
/// identity over a zero block. This is the projected form of the shifted
/// block GMRES correction.
inline Eigen::MatrixXcd gmres_projected_seed(const Eigen::MatrixXd& Hbar,
                                             std::complex<double> tau,
                                             const Eigen::MatrixXcd& rhs) {
  const int rows = static_cast<int>(Hbar.rows());
  const int mp = static_cast<int>(Hbar.cols());
  if (rhs.rows() != rows)
    throw ParameterError("gmres_projected_seed: rhs dimension mismatch");
  Eigen::MatrixXcd M = -tau * Hbar.cast<std::complex<double>>();
  M.topRows(mp) += Eigen::MatrixXcd::Identity(mp, mp);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(M);
  if (qr.rank() < mp)
    throw FactorizationError(
        "gmres_projected_seed: projected matrix rank-deficient");
  return qr.solve(rhs);
}

struct WoodburyCheckResult {
  double max_deviation = 0.0;
  std::vector<double> deviations;     // per shift, -1 when inapplicable
  std::vector<bool> applicable;       // Psi_2 nonsingular (always true for seed)
};

/// Identity between the projected GMRES and FOM solutions,
/// Z_i^GMRES = (I - Omega_i) Z_i^FOM, with the seed correction built from
/// Gamma_1 = |tau_1|^2 (I - tau_1 H)^{-H} E_m, Gamma_2^T = H_{m+1,m}^T
/// H_{m+1,m} E_m^T, and the additional-system corrections from the residual
/// splitting G_1 = [Psi_1; Psi_2], Psi_3^T = Psi_2^{-1} H_{m+1,m} E_m^T.
/// The GMRES side is computed independently: least squares for the seed and
/// the bordered square system [Itil - tau_i Htil, G_1][Z; W] = E_1 Rhat_i
/// for the additional shifts.
inline WoodburyCheckResult check_theorem_4_1(
    const Eigen::MatrixXd& Hbar,
    const std::vector<std::complex<double>>& shifts,
    const std::vector<Eigen::MatrixXcd>& rhat) {
  using cplx = std::complex<double>;
  const int rows = static_cast<int>(Hbar.rows());
  const int mp = static_cast<int>(Hbar.cols());
  const int p = rows - mp;
  if (p < 1) throw ParameterError("check_theorem_4_1: Hbar must have p extra rows");
  if (shifts.empty() || rhat.size() != shifts.size())
    throw ParameterError("check_theorem_4_1: shift/rhs mismatch");

  const Eigen::MatrixXcd H = Hbar.topRows(mp).cast<cplx>();
  const Eigen::MatrixXcd Hlast = Hbar.bottomRightCorner(p, p).cast<cplx>();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(mp, mp);
  const Eigen::MatrixXcd Ip = Eigen::MatrixXcd::Identity(p, p);
  auto shifted = [&](cplx tau) { return (I - tau * H).eval(); };
  // E_m selects the last p columns; A * E_m and E_m^T * A are slices.

  WoodburyCheckResult res;
  res.deviations.assign(shifts.size(), -1.0);
  res.applicable.assign(shifts.size(), true);

  // Seed system.
  const cplx tau1 = shifts[0];
  const Eigen::MatrixXcd S1 = shifted(tau1);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu1(S1);
  const Eigen::MatrixXcd e1r1 = detail::embed_top(rhat[0], mp);
  const Eigen::MatrixXcd Z1fom = lu1.solve(e1r1);
  const Eigen::MatrixXcd Z1g =
      gmres_projected_seed(Hbar, tau1, detail::embed_top(rhat[0], rows));

  const Eigen::MatrixXcd Gamma1 =
      std::norm(tau1) * S1.adjoint().partialPivLu().solve(
                            Eigen::MatrixXcd(I.rightCols(p)));
  Eigen::MatrixXcd Gamma2T = Eigen::MatrixXcd::Zero(p, mp);
  Gamma2T.rightCols(p) = Hlast.transpose() * Hlast;
  const Eigen::MatrixXcd core1 =
      (Ip + Gamma2T * lu1.solve(Gamma1)).partialPivLu().solve(Gamma2T);
  const Eigen::MatrixXcd Omega1 = lu1.solve(Gamma1 * core1);
  {
    const double den = Z1g.norm();
    res.deviations[0] = (Z1g - (Z1fom - Omega1 * Z1fom)).norm() /
                        (den > 0.0 ? den : 1.0);
  }

  // Residual of the seed GMRES solution, split into Psi_1, Psi_2.
  Eigen::MatrixXcd Stil1 = -tau1 * Hbar.cast<cplx>();
  Stil1.topRows(mp) += I;
  const Eigen::MatrixXcd G1 = detail::embed_top(rhat[0], rows) - Stil1 * Z1g;
  const Eigen::MatrixXcd Psi1 = G1.topRows(mp);
  const Eigen::MatrixXcd Psi2 = G1.bottomRows(p);

  for (size_t i = 1; i < shifts.size(); ++i) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd2(Psi2);
    if (svd2.singularValues()(p - 1) <
        1e-12 * (1.0 + svd2.singularValues()(0))) {
      res.applicable[i] = false;  // Psi_2 singular: identity inapplicable
      continue;
    }
    const cplx tau = shifts[i];
    const Eigen::MatrixXcd Si = shifted(tau);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lui(Si);
    const Eigen::MatrixXcd Zifom = lui.solve(detail::embed_top(rhat[i], mp));

    Eigen::MatrixXcd Psi3T = Eigen::MatrixXcd::Zero(p, mp);
    Psi3T.rightCols(p) = Psi2.partialPivLu().solve(Hlast);
    const Eigen::MatrixXcd corei =
        (Ip + tau * Psi3T * lui.solve(Psi1)).partialPivLu().solve(Psi3T);
    const Eigen::MatrixXcd Omegai = tau * lui.solve(Psi1 * corei);

    // Independent oracle: the bordered square system.
    Eigen::MatrixXcd Bord(rows, rows);
    Eigen::MatrixXcd Stili = -tau * Hbar.cast<cplx>();
    Stili.topRows(mp) += I;
    Bord.leftCols(mp) = Stili;
    Bord.rightCols(p) = G1;
    const Eigen::MatrixXcd ZW =
        Bord.partialPivLu().solve(detail::embed_top(rhat[i], rows));
    const Eigen::MatrixXcd Zig = ZW.topRows(mp);

    const double den = Zig.norm();
    res.deviations[i] = (Zig - (Zifom - Omegai * Zifom)).norm() /
                        (den > 0.0 ? den : 1.0);
  }
  res.max_deviation = 0.0;
  for (double d : res.deviations)
    if (d > res.max_deviation) res.max_deviation = d;
  return res;
}

struct RitzResidualCheckResult {
  double max_deviation = 0.0;
  double cond_P = 0.0;
  std::vector<double> deviations;
};

/// Ritz-residual expansion of the projected FOM residuals: with H_m = P
/// Lambda P^{-1} and Ritz residuals r_j = Op(V_m y_j) - mu_j V_m y_j, the
/// solver residual tau_i V_{m+1} H_{m+1,m} E_m^T Z_i equals
/// tau_i [r_1 .. r_mp] (P (I - tau_i Lambda))^{-1} (E_1 Rhat_i). The left
/// side uses only the Arnoldi state; the right side re-applies the operator
/// to each Ritz vector.
inline RitzResidualCheckResult check_theorem_4_2(
    const LinearOperator& op, const ArnoldiState& s,
    const std::vector<std::complex<double>>& shifts,
    const Eigen::MatrixXcd& rhat) {
  using cplx = std::complex<double>;
  const int mp = s.src_cols;
  const int p = s.p;
  if (rhat.rows() != p)
    throw ParameterError("check_theorem_4_2: rhat must have p rows");

  const Eigen::MatrixXd Hm = s.square_part();
  Eigen::EigenSolver<Eigen::MatrixXd> es(Hm);
  if (es.info() != Eigen::Success)
    throw ConstructionError("check_theorem_4_2: eigensolver failed");
  const Eigen::MatrixXcd P = es.eigenvectors();
  const Eigen::VectorXcd mu = es.eigenvalues();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svdP(P);
  const double condP = svdP.singularValues()(0) /
                       svdP.singularValues()(mp - 1);

  // Ritz residuals r_j = Op(V_m y_j) - mu_j V_m y_j, by direct application.
  const Eigen::MatrixXd Vm = s.V.leftCols(mp);
  Eigen::MatrixXcd R(s.n, mp);
  for (int j = 0; j < mp; ++j) {
    const Eigen::VectorXcd vy = Vm * P.col(j);
    const Eigen::VectorXd re = op.apply(vy.real());
    const Eigen::VectorXd im = op.apply(vy.imag());
    R.col(j) = re.cast<cplx>() + cplx(0.0, 1.0) * im.cast<cplx>() -
               mu(j) * vy;
  }

  const Eigen::MatrixXcd Hlast = s.coupling_block().cast<cplx>();
  const Eigen::MatrixXcd Vlast = s.last_block().cast<cplx>();
  const Eigen::MatrixXcd Hc = Hm.cast<cplx>();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(mp, mp);
  const Eigen::MatrixXcd e1r = detail::embed_top(rhat, mp);

  RitzResidualCheckResult res;
  res.cond_P = condP;
  for (const cplx tau : shifts) {
    // Solver side.
    const Eigen::MatrixXcd Z = (I - tau * Hc).partialPivLu().solve(e1r);
    const Eigen::MatrixXcd lhs = tau * Vlast * (Hlast * Z.bottomRows(p));
    // Expansion side: P (I - tau Lambda) applied columnwise.
    Eigen::MatrixXcd PL = P;
    for (int j = 0; j < mp; ++j) PL.col(j) *= (1.0 - tau * mu(j));
    const Eigen::MatrixXcd rhs = tau * R * PL.partialPivLu().solve(e1r);
    const double den = std::max(lhs.norm(), 1e-300);
    res.deviations.push_back((lhs - rhs).norm() / den);
  }
  for (double d : res.deviations)
    if (d > res.max_deviation) res.max_deviation = d;
  return res;
}

struct InexactInverseCheck {
  std::complex<double> shift;
  double observed = 0.0;  // ||X_i - Xtil_i||_2 / ||X_i||_2
  double bound = 0.0;     // kappa(A) ||(I - tau A^{-1})^{-1}||_2 ||F|| / ||A^{-1}||
  bool applicable = true;  // first-order hypothesis satisfied
};

/// First-order error bound for solving the shifted systems with a perturbed
/// inverse Atil^{-1} = A^{-1} + F:
///   ||X_i - Xtil_i|| / ||X_i||  <~  kappa(A) ||(I - tau_i A^{-1})^{-1}||
///                                   * ||F|| / ||A^{-1}||  (2-norms),
/// valid when ||tau_i (I - tau_i A^{-1})^{-1} F||_2 <= 0.01. Both solutions
/// are computed by dense solves.
inline std::vector<InexactInverseCheck> check_theorem_4_3(
    const Eigen::MatrixXd& A, const Eigen::MatrixXd& F,
    const std::vector<std::complex<double>>& shifts,
    const Eigen::MatrixXd& B) {
  using cplx = std::complex<double>;
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || F.rows() != n || F.cols() != n || B.rows() != n)
    throw ParameterError("check_theorem_4_3: dimension mismatch");

  const Eigen::MatrixXd Ainv =
      A.partialPivLu().solve(Eigen::MatrixXd::Identity(n, n));
  const Eigen::MatrixXd Atinv = Ainv + F;
  const double kappaA = detail::norm2(A) * detail::norm2(Ainv);
  const double relF = detail::norm2(F) / detail::norm2(Ainv);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd Bc = B.cast<cplx>();

  std::vector<InexactInverseCheck> out;
  for (const cplx tau : shifts) {
    InexactInverseCheck chk;
    chk.shift = tau;
    const Eigen::MatrixXcd S = I - tau * Ainv.cast<cplx>();
    const Eigen::MatrixXcd St = I - tau * Atinv.cast<cplx>();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(S);
    const Eigen::MatrixXcd Sinv = lu.solve(I);
    chk.applicable =
        detail::norm2(Eigen::MatrixXcd(tau * Sinv * F.cast<cplx>())) <= 0.01;

    const Eigen::MatrixXcd X = Ainv.cast<cplx>() * lu.solve(Bc);
    const Eigen::MatrixXcd Xt =
        Atinv.cast<cplx>() * St.partialPivLu().solve(Bc);
    chk.observed = detail::norm2(Eigen::MatrixXcd(X - Xt)) / detail::norm2(X);
    chk.bound = kappaA * detail::norm2(Sinv) * relF;
    out.push_back(chk);
  }
  return out;
}

}  // namespace expact

#endif  // EXPACT_VERIFY_HPP_
