// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_SHIFTED_SOLVER_HPP_
#define EXPACT_SHIFTED_SOLVER_HPP_

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "expact/block_arnoldi.hpp"
#include "expact/errors.hpp"
#include "expact/linear_operator.hpp"

namespace expact {

/// DirectShift solves (A - tau_i I) X_i = B on a basis built from A;
/// InvertShift solves (I - tau_i A^{-1}) Y_i = B on a basis built from
/// A^{-1} (right preconditioning by the exact inverse).
enum class ShiftMode { DirectShift, InvertShift };

struct RunStats {
  int cycles = 0;
  long operator_applies = 0;
  long inverse_applies = 0;
  std::vector<std::vector<double>> residual_history;  // [cycle][shift]
  double final_error = -1.0;  // relative error vs. oracle when available
};

/// Non-convergence diagnostic; carries the stats accumulated so far.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, RunStats stats)
      : Error(msg), stats_(std::move(stats)) {}
  const RunStats& stats() const { return stats_; }

 private:
  RunStats stats_;
};

/// Per-cycle view handed to an observer; all references are valid only for
/// the duration of the callback.
struct CycleInfo {
  int cycle;                                   // 1-based
  ShiftMode mode;
  const ArnoldiState& state;
  int mp;                                      // square projection size
  const std::vector<std::complex<double>>& shifts;
  const std::vector<Eigen::MatrixXcd>& Z;      // projected solutions
  const std::vector<Eigen::MatrixXcd>& C;      // residual coefficients
  const std::vector<Eigen::MatrixXcd>& accum;  // accumulated solutions
  const std::vector<bool>& converged;
};

struct ShiftedSolveResult {
  std::vector<Eigen::MatrixXcd> solutions;  // X_i (or Y_i pre-recovery)
  std::vector<Eigen::MatrixXcd> C;          // final residual coefficients
  Eigen::MatrixXd V_last;                   // final basis block
  std::vector<bool> converged;
  bool all_converged = false;
  RunStats stats;
};

/// Solves the projected shifted systems, one dense LU per shift.
/// DirectShift: (H_m - tau_i I) Z_i = rhs_i; InvertShift:
/// (I - tau_i H_m) Z_i = rhs_i.
inline std::vector<Eigen::MatrixXcd> solve_projected(
    const Eigen::MatrixXd& Hm, ShiftMode mode,
    const std::vector<std::complex<double>>& shifts,
    const std::vector<Eigen::MatrixXcd>& rhs) {
  const int mp = static_cast<int>(Hm.rows());
  if (Hm.cols() != mp || rhs.size() != shifts.size())
    throw ParameterError("solve_projected: dimension mismatch");
  const Eigen::MatrixXcd Hc = Hm.cast<std::complex<double>>();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(mp, mp);
  std::vector<Eigen::MatrixXcd> Z(shifts.size());
  for (size_t i = 0; i < shifts.size(); ++i) {
    const Eigen::MatrixXcd M = mode == ShiftMode::DirectShift
                                   ? (Hc - shifts[i] * I).eval()
                                   : (I - shifts[i] * Hc).eval();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    if (lu.rcond() < 1e-14)
      throw ShiftFailureError(
          "solve_projected: projected matrix near-singular for shift (" +
          std::to_string(shifts[i].real()) + "," +
          std::to_string(shifts[i].imag()) + ")");
    Z[i] = lu.solve(rhs[i]);
  }
  return Z;
}

/// Residual coefficient blocks C_i with respect to the final basis block:
/// DirectShift C_i = -H_{m+1,m} E_m^T Z_i; InvertShift
/// C_i = tau_i H_{m+1,m} E_m^T Z_i. ||C_i||_F equals the true residual
/// F-norm since the basis is orthonormal.
inline std::vector<Eigen::MatrixXcd> residual_coefficients(
    ShiftMode mode, const std::vector<std::complex<double>>& shifts,
    const Eigen::MatrixXd& Hlast, int p,
    const std::vector<Eigen::MatrixXcd>& Z) {
  std::vector<Eigen::MatrixXcd> C(Z.size());
  for (size_t i = 0; i < Z.size(); ++i) {
    const Eigen::MatrixXcd tail =
        Hlast.cast<std::complex<double>>() * Z[i].bottomRows(p);
    C[i] = mode == ShiftMode::DirectShift ? (-tail).eval()
                                          : (shifts[i] * tail).eval();
  }
  return C;
}

using CycleObserver = std::function<void(const CycleInfo&)>;

/// Shared skeleton of SBFOM-DR and PSBFOM-DR: per cycle, extend or restart
/// one basis serving every shift, solve the projected systems, accumulate,
/// and test ||C_i||_F <= tol ||B||_F for all shifts.
inline ShiftedSolveResult run_shifted_block_fom(
    const LinearOperator& op, ShiftMode mode, const Eigen::MatrixXd& B,
    const std::vector<std::complex<double>>& shifts, int m, int k, double tol,
    int max_cycles, RitzOrdering ordering, const CycleObserver& observer = {}) {
  const int n = op.dim();
  const int p = static_cast<int>(B.cols());
  const int ns = static_cast<int>(shifts.size());
  if (B.rows() != n) throw ParameterError("run: B dimension mismatch");
  if (p < 1 || ns < 1) throw ParameterError("run: empty problem");
  if (m < 1 || m * p + p > n + 1)
    throw ParameterError("run: m out of range for this problem size");
  if (k < 0 || k % p != 0 || k >= m * p)
    throw ParameterError("run: k must be a multiple of p with k < m*p");
  if (tol <= 0.0) throw ParameterError("run: tol must be positive");

  const double normB = B.norm();
  auto [V1, R0] = qr_block(B);
  ArnoldiState state = arnoldi_init(V1);

  ShiftedSolveResult res;
  res.converged.assign(static_cast<size_t>(ns), false);
  res.solutions.assign(static_cast<size_t>(ns),
                       Eigen::MatrixXcd::Zero(n, p));
  res.C.assign(static_cast<size_t>(ns), R0.cast<std::complex<double>>());

  const long op_base = op.applications();
  int rhs_row = 0;
  std::vector<Eigen::MatrixXcd> Z(static_cast<size_t>(ns));

  for (int cycle = 1; cycle <= max_cycles; ++cycle) {
    bool exact_cycle = false;  // invariant subspace hit (happy breakdown)
    int mp = 0;
    try {
      arnoldi_extend(op, state, m);
      mp = state.src_cols;
    } catch (const BreakdownError&) {
      if (p != 1) throw;
      exact_cycle = true;
      mp = state.src_cols + 1;
    }
    const Eigen::MatrixXd Hm = state.Hbar.topLeftCorner(mp, mp);
    const Eigen::MatrixXd Hlast =
        exact_cycle ? Eigen::MatrixXd::Zero(p, p).eval()
                    : state.coupling_block();
    const auto Vm = state.V.leftCols(mp);

    std::vector<Eigen::MatrixXcd> rhs(static_cast<size_t>(ns));
    std::vector<std::complex<double>> active;
    std::vector<size_t> active_idx;
    for (int i = 0; i < ns; ++i) {
      if (res.converged[static_cast<size_t>(i)]) continue;
      Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(mp, p);
      r.middleRows(rhs_row, p) = res.C[static_cast<size_t>(i)];
      rhs[static_cast<size_t>(active.size())] = std::move(r);
      active.push_back(shifts[static_cast<size_t>(i)]);
      active_idx.push_back(static_cast<size_t>(i));
    }
    rhs.resize(active.size());
    const std::vector<Eigen::MatrixXcd> Zact =
        solve_projected(Hm, mode, active, rhs);
    const std::vector<Eigen::MatrixXcd> Cact =
        residual_coefficients(mode, active, Hlast, p, Zact);

    for (auto& z : Z) z.resize(0, 0);
    for (size_t a = 0; a < active_idx.size(); ++a) {
      const size_t i = active_idx[a];
      Z[i] = Zact[a];
      res.solutions[i] += Vm * Zact[a];
      res.C[i] = Cact[a];
    }

    res.stats.cycles = cycle;
    res.stats.residual_history.emplace_back();
    bool all_ok = true;
    for (int i = 0; i < ns; ++i) {
      const double rn = res.C[static_cast<size_t>(i)].norm();
      res.stats.residual_history.back().push_back(rn);
      if (!res.converged[static_cast<size_t>(i)] && rn <= tol * normB)
        res.converged[static_cast<size_t>(i)] = true;
      all_ok = all_ok && res.converged[static_cast<size_t>(i)];
    }

    if (observer) {
      CycleInfo info{cycle,   mode, state,  mp,           shifts,
                     Z,       res.C, res.solutions, res.converged};
      observer(info);
    }

    res.V_last = exact_cycle
                     ? state.V.middleCols(mp - p, p).eval()
                     : state.last_block();
    if (all_ok || exact_cycle) {
      res.all_converged = all_ok;
      break;
    }
    if (cycle == max_cycles) break;

    const RitzSet ritz = compute_ritz(state, ordering);
    state = deflated_restart(state, ritz, k);
    rhs_row = state.k_defl;
  }

  res.stats.operator_applies = op.applications() - op_base;
  if (mode == ShiftMode::InvertShift)
    res.stats.inverse_applies = res.stats.operator_applies;
  if (!res.all_converged)
    throw ConvergenceError(
        "shifted block FOM: not all shifts converged within " +
            std::to_string(max_cycles) + " cycles",
        res.stats);
  return res;
}

/// SBFOM-DR: unpreconditioned shifted block FOM with deflated restarting.
/// A is applied directly; the projected systems are (H_m - tau_i I) Z = rhs.
inline ShiftedSolveResult run_sbfom_dr(
    const LinearOperator& A, const Eigen::MatrixXd& B,
    const std::vector<std::complex<double>>& shifts, int m, int k, double tol,
    int max_cycles = 100,
    RitzOrdering ordering = RitzOrdering::SmallestMagnitude,
    const CycleObserver& observer = {}) {
  return run_shifted_block_fom(A, ShiftMode::DirectShift, B, shifts, m, k,
                               tol, max_cycles, ordering, observer);
}

/// PSBFOM-DR: the basis is built on A^{-1}; on convergence the solutions of
/// (A - tau_i I) X_i = B are recovered as X_i = A^{-1} Y_i, one extra
/// inverse application per column of the real and imaginary parts.
inline ShiftedSolveResult run_psbfom_dr(
    const LinearOperator& invA, const Eigen::MatrixXd& B,
    const std::vector<std::complex<double>>& shifts, int m, int k, double tol,
    int max_cycles = 100,
    RitzOrdering ordering = RitzOrdering::LargestMagnitude,
    const CycleObserver& observer = {}) {
  const long base = invA.applications();
  ShiftedSolveResult res =
      run_shifted_block_fom(invA, ShiftMode::InvertShift, B, shifts, m, k,
                            tol, max_cycles, ordering, observer);
  for (auto& Y : res.solutions) {
    const Eigen::MatrixXd re = invA.apply_block(Y.real());
    const Eigen::MatrixXd im = invA.apply_block(Y.imag());
    Y.real() = re;
    Y.imag() = im;
  }
  res.stats.inverse_applies = invA.applications() - base;
  return res;
}

}  // namespace expact

#endif  // EXPACT_SHIFTED_SOLVER_HPP_
