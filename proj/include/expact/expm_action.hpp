// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_EXPM_ACTION_HPP_
#define EXPACT_EXPM_ACTION_HPP_

#include <Eigen/Dense>

#include "expact/cf_approx.hpp"
#include "expact/shifted_solver.hpp"

namespace expact {

struct ExpmActionResult {
  Eigen::MatrixXd Z;  // approximation to e^A B (operator pre-scaled by t)
  RunStats stats;
};

/// e^A B by the rational approximant and the unpreconditioned solver:
/// one deflated-restart process serves the conjugate-reduced shift list of
/// systems (A - tau_i I) X_i = B, then the partial fractions are assembled.
inline ExpmActionResult expm_action_sbfom(
    const LinearOperator& A, const Eigen::MatrixXd& B, const CfRational& r,
    int m, int k, double tol, int max_cycles = 100,
    const CycleObserver& observer = {}) {
  const ReducedShifts red = conjugate_reduce(r);
  ShiftedSolveResult sol = run_sbfom_dr(A, B, red.shifts, m, k, tol,
                                        max_cycles,
                                        RitzOrdering::SmallestMagnitude,
                                        observer);
  ExpmActionResult out;
  out.Z = assemble_exponential(r, red, B, sol.solutions);
  out.stats = sol.stats;
  return out;
}

/// e^A B with the inverse-based process: the Krylov space is built on
/// A^{-1}, each shifted system is solved in the form
/// (I - tau_i A^{-1}) Y_i = B, and X_i = A^{-1} Y_i is recovered before
/// assembly.
inline ExpmActionResult expm_action_psbfom(
    const LinearOperator& invA, const Eigen::MatrixXd& B, const CfRational& r,
    int m, int k, double tol, int max_cycles = 100,
    const CycleObserver& observer = {}) {
  const ReducedShifts red = conjugate_reduce(r);
  ShiftedSolveResult sol = run_psbfom_dr(invA, B, red.shifts, m, k, tol,
                                         max_cycles,
                                         RitzOrdering::LargestMagnitude,
                                         observer);
  ExpmActionResult out;
  out.Z = assemble_exponential(r, red, B, sol.solutions);
  out.stats = sol.stats;
  return out;
}

}  // namespace expact

#endif  // EXPACT_EXPM_ACTION_HPP_
