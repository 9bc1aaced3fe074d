// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_CF_APPROX_HPP_
#define EXPACT_CF_APPROX_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "expact/errors.hpp"
#include "expact/fft.hpp"

#include <nlohmann/json_fwd.hpp>

namespace expact {

using cd = std::complex<double>;

/// Partial-fraction rational approximant to e^x on the negative real axis:
/// r(x) = omega0 + sum_i residues[i] / (x - poles[i]).
struct CfRational {
  int nu = 0;
  cd omega0{0.0, 0.0};
  std::vector<cd> residues;
  std::vector<cd> poles;
};

namespace detail {

inline double pairwise_sum(const std::vector<double>& v, size_t lo, size_t hi) {
  if (hi - lo <= 4) {
    double s = 0.0;
    for (size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

inline cd pairwise_sum(const std::vector<cd>& v, size_t lo, size_t hi) {
  if (hi - lo <= 4) {
    cd s = 0.0;
    for (size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

/// Roots of the polynomial c[0] z^d + c[1] z^{d-1} + ... + c[d] by the
/// eigenvalues of its companion matrix. Negligible leading coefficients are
/// stripped first.
inline std::vector<cd> poly_roots(std::vector<double> c) {
  double cmax = 0.0;
  for (double x : c) cmax = std::max(cmax, std::abs(x));
  if (cmax == 0.0) throw ConstructionError("poly_roots: zero polynomial");
  size_t lead = 0;
  while (lead < c.size() && std::abs(c[lead]) < 1e-14 * cmax) ++lead;
  c.erase(c.begin(), c.begin() + static_cast<long>(lead));
  const int d = static_cast<int>(c.size()) - 1;
  if (d < 1) return {};
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < d; ++j) C(0, j) = -c[static_cast<size_t>(j + 1)] / c[0];
  for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw ConstructionError("poly_roots: eigensolver failed");
  std::vector<cd> r(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) r[static_cast<size_t>(i)] = es.eigenvalues()(i);
  return r;
}

}  // namespace detail

/// Evaluates r at x with pairwise summation of the partial-fraction terms.
inline cd eval_cf(const CfRational& r, cd x) {
  std::vector<cd> terms(r.poles.size());
  for (size_t i = 0; i < r.poles.size(); ++i) {
    const cd d = x - r.poles[i];
    if (std::abs(d) < 1e-14 * (1.0 + std::abs(r.poles[i])))
      throw ParameterError("eval_cf: evaluation point too close to a pole");
    terms[i] = r.residues[i] / d;
  }
  return r.omega0 + detail::pairwise_sum(terms, 0, terms.size());
}

inline double eval_cf_real(const CfRational& r, double x) {
  return eval_cf(r, cd(x, 0.0)).real();
}

/// Checks the structural invariants of a CfRational: distinct poles, exact
/// conjugate pairing of non-real poles/residues, no pole on the closed
/// negative real axis, and r(0) = 1 within 1e-9.
inline void validate_cf(const CfRational& r) {
  const int nu = r.nu;
  if (static_cast<int>(r.poles.size()) != nu ||
      static_cast<int>(r.residues.size()) != nu)
    throw ConstructionError("CfRational: size mismatch");
  for (int i = 0; i < nu; ++i) {
    for (int j = i + 1; j < nu; ++j)
      if (std::abs(r.poles[static_cast<size_t>(i)] -
                   r.poles[static_cast<size_t>(j)]) < 1e-10)
        throw ConstructionError("CfRational: duplicate poles");
    const cd t = r.poles[static_cast<size_t>(i)];
    if (t.imag() == 0.0 && t.real() <= 0.0)
      throw ConstructionError("CfRational: pole on closed negative real axis");
  }
  std::vector<bool> used(static_cast<size_t>(nu), false);
  for (int i = 0; i < nu; ++i) {
    if (used[static_cast<size_t>(i)]) continue;
    const cd t = r.poles[static_cast<size_t>(i)];
    if (t.imag() == 0.0) continue;
    bool found = false;
    for (int j = 0; j < nu; ++j) {
      if (j == i || used[static_cast<size_t>(j)]) continue;
      if (r.poles[static_cast<size_t>(j)] == std::conj(t) &&
          r.residues[static_cast<size_t>(j)] ==
              std::conj(r.residues[static_cast<size_t>(i)])) {
        used[static_cast<size_t>(i)] = used[static_cast<size_t>(j)] = true;
        found = true;
        break;
      }
    }
    if (!found)
      throw ConstructionError("CfRational: conjugate pairing violated");
  }
  if (std::abs(eval_cf(r, cd(0.0, 0.0)) - 1.0) > 1e-9)
    throw ConstructionError("CfRational: r(0) != 1");
}

/// Constructs the type-(nu,nu) Caratheodory-Fejer approximant to e^x on the
/// negative real axis. The exponential is transplanted to the unit circle by
/// the Moebius map x = scl (t-1)/(t+1), Chebyshev coefficients are obtained
/// from a length-4096 DFT, the singular triple nu+1 of their Hankel matrix
/// yields the error Blaschke structure, and the pole preimages are the roots
/// of the singular-vector polynomial outside the unit disk. Residues and
/// omega0 are then recovered by least-squares collocation against e^x at 512
/// log-spaced points on [-1e4, 0]. Poles are sorted by imaginary part, ties
/// by real part.
inline CfRational cf_poles_residues(int nu) {
  if (nu < 1 || nu > 20)
    throw ParameterError("cf_poles_residues: nu must be in [1,20]");

  constexpr int kNumCheb = 75;  // Hankel size; coefficient tail < eps
  constexpr int kNfft = 4096;
  constexpr double kScl = 9.0;

  // Chebyshev coefficients of exp(x) transplanted to [-1,1].
  FftEngine fft(kNfft);
  std::vector<cd> samples(kNfft);
  for (int j = 0; j < kNfft; ++j) {
    const double theta = 2.0 * M_PI * j / kNfft;
    const double t = std::cos(theta);
    const double x = kScl * (t - 1.0) / (t + 1.0 + 1e-16);
    samples[static_cast<size_t>(j)] = cd(std::exp(x), 0.0);
  }
  const std::vector<cd> hat = fft.forward(samples);
  std::vector<double> cheb(kNumCheb + 1);
  for (int k = 0; k <= kNumCheb; ++k)
    cheb[static_cast<size_t>(k)] = hat[static_cast<size_t>(k)].real() / kNfft;

  // Hankel matrix of coefficients c_1 .. c_K and its SVD.
  Eigen::MatrixXd Hk = Eigen::MatrixXd::Zero(kNumCheb, kNumCheb);
  for (int i = 0; i < kNumCheb; ++i)
    for (int j = 0; j < kNumCheb - i; ++j)
      Hk(i, j) = cheb[static_cast<size_t>(i + j + 1)];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Hk, Eigen::ComputeFullV);
  Eigen::VectorXd v = svd.matrixV().col(nu);

  // The nu zeros of the singular-vector polynomial outside the unit disk are
  // the preimages of the poles under the transplant.
  std::vector<double> vc(static_cast<size_t>(kNumCheb));
  for (int i = 0; i < kNumCheb; ++i) vc[static_cast<size_t>(i)] = v(i);
  std::vector<cd> roots = detail::poly_roots(vc);
  std::sort(roots.begin(), roots.end(),
            [](const cd& a, const cd& b) { return std::abs(a) > std::abs(b); });
  if (static_cast<int>(roots.size()) < nu || std::abs(roots[static_cast<size_t>(nu) - 1]) <= 1.0)
    throw ConstructionError(
        "cf_poles_residues: unexpected Blaschke zero count");
  std::vector<cd> preimages(roots.begin(), roots.begin() + nu);

  CfRational r;
  r.nu = nu;
  r.poles.resize(static_cast<size_t>(nu));
  for (int i = 0; i < nu; ++i) {
    const cd q = preimages[static_cast<size_t>(i)];
    r.poles[static_cast<size_t>(i)] =
        kScl * (q - 1.0) * (q - 1.0) / ((q + 1.0) * (q + 1.0));
  }
  // Clean tiny imaginary parts of real poles, then enforce exact pairing.
  for (cd& t : r.poles)
    if (std::abs(t.imag()) < 1e-12 * (1.0 + std::abs(t.real())))
      t = cd(t.real(), 0.0);
  std::sort(r.poles.begin(), r.poles.end(), [](const cd& a, const cd& b) {
    if (a.imag() != b.imag()) return a.imag() < b.imag();
    return a.real() < b.real();
  });
  // Symmetrize conjugate pairs bit-exactly: pair pole i (Im<0) with the
  // closest pole of positive imaginary part.
  for (size_t i = 0; i < r.poles.size(); ++i) {
    if (r.poles[i].imag() >= 0.0) continue;
    size_t best = i;
    double dist = 1e300;
    for (size_t j = 0; j < r.poles.size(); ++j) {
      if (r.poles[j].imag() <= 0.0) continue;
      const double d = std::abs(r.poles[j] - std::conj(r.poles[i]));
      if (d < dist) {
        dist = d;
        best = j;
      }
    }
    if (best == i || dist > 1e-6 * (1.0 + std::abs(r.poles[i])))
      throw ConstructionError("cf_poles_residues: unpaired complex pole");
    const cd avg = 0.5 * (r.poles[best] + std::conj(r.poles[i]));
    r.poles[best] = avg;
    r.poles[i] = std::conj(avg);
  }

  for (int i = 0; i < nu; ++i) {
    const cd t = r.poles[static_cast<size_t>(i)];
    if (t.imag() == 0.0 && t.real() <= 0.0)
      throw ConstructionError(
          "cf_poles_residues: pole on closed negative real axis");
    for (int j = i + 1; j < nu; ++j)
      if (std::abs(t - r.poles[static_cast<size_t>(j)]) < 1e-10)
        throw ConstructionError("cf_poles_residues: duplicate poles");
  }

  // Residues by least-squares collocation at 512 log-spaced points, with the
  // interpolation condition r(0) = 1 eliminated exactly: substituting
  // omega0 = 1 + sum_i omega_i / tau_i leaves the basis functions
  // 1/(x - tau_i) + 1/tau_i fitting e^x - 1.
  constexpr int kFit = 512;
  Eigen::MatrixXcd M(kFit, nu);
  Eigen::VectorXcd rhs(kFit);
  for (int j = 0; j < kFit; ++j) {
    const double u = -8.0 + 12.0 * j / (kFit - 1);  // magnitudes 1e-8..1e4
    const double x = -std::pow(10.0, u);
    for (int i = 0; i < nu; ++i) {
      const cd tau = r.poles[static_cast<size_t>(i)];
      M(j, i) = 1.0 / (cd(x, 0.0) - tau) + 1.0 / tau;
    }
    rhs(j) = std::expm1(x);
  }
  Eigen::VectorXcd w = M.colPivHouseholderQr().solve(rhs);
  r.residues.resize(static_cast<size_t>(nu));
  for (int i = 0; i < nu; ++i) r.residues[static_cast<size_t>(i)] = w(i);
  // Enforce residue conjugate symmetry along the pole pairing.
  for (int i = 0; i < nu; ++i) {
    const cd t = r.poles[static_cast<size_t>(i)];
    if (t.imag() < 0.0) continue;
    if (t.imag() == 0.0) {
      r.residues[static_cast<size_t>(i)] =
          cd(r.residues[static_cast<size_t>(i)].real(), 0.0);
      continue;
    }
    for (int j = 0; j < nu; ++j) {
      if (r.poles[static_cast<size_t>(j)] == std::conj(t)) {
        const cd avg = 0.5 * (r.residues[static_cast<size_t>(i)] +
                              std::conj(r.residues[static_cast<size_t>(j)]));
        r.residues[static_cast<size_t>(i)] = avg;
        r.residues[static_cast<size_t>(j)] = std::conj(avg);
        break;
      }
    }
  }
  cd om0 = 1.0;
  for (int i = 0; i < nu; ++i)
    om0 += r.residues[static_cast<size_t>(i)] / r.poles[static_cast<size_t>(i)];
  r.omega0 = cd(om0.real(), 0.0);

  validate_cf(r);
  return r;
}

/// Shift list after conjugate reduction: the poles with Im >= 0 plus a flag
/// telling assembly whether the retained term stands for a conjugate pair.
struct ReducedShifts {
  std::vector<cd> shifts;
  std::vector<cd> residues;
  std::vector<bool> paired;        // true: term contributes 2 Re(w X)
  std::vector<int> source_index;   // index into the full pole list
};

inline ReducedShifts conjugate_reduce(const CfRational& r) {
  validate_cf(r);
  ReducedShifts out;
  for (int i = 0; i < r.nu; ++i) {
    const cd t = r.poles[static_cast<size_t>(i)];
    if (t.imag() < 0.0) continue;
    out.shifts.push_back(t);
    out.residues.push_back(r.residues[static_cast<size_t>(i)]);
    out.paired.push_back(t.imag() > 0.0);
    out.source_index.push_back(i);
  }
  return out;
}

/// Full-sum assembly: Re(omega0 B + sum_i residues[i] X_i), where X_i solves
/// (A - poles[i] I) X_i = B.
inline Eigen::MatrixXd assemble_exponential(
    const CfRational& r, const Eigen::MatrixXd& B,
    const std::vector<Eigen::MatrixXcd>& solutions) {
  if (static_cast<int>(solutions.size()) != r.nu)
    throw ParameterError("assemble_exponential: solution count mismatch");
  Eigen::MatrixXcd Z = r.omega0 * B.cast<cd>();
  for (int i = 0; i < r.nu; ++i) {
    const Eigen::MatrixXcd& X = solutions[static_cast<size_t>(i)];
    if (X.rows() != B.rows() || X.cols() != B.cols())
      throw ParameterError("assemble_exponential: dimension mismatch");
    Z += r.residues[static_cast<size_t>(i)] * X;
  }
  return Z.real();
}

/// Reduced assembly over the conjugate-reduced shift list: paired terms are
/// doubled real parts, unpaired terms enter with their plain real part.
inline Eigen::MatrixXd assemble_exponential(
    const CfRational& r, const ReducedShifts& red, const Eigen::MatrixXd& B,
    const std::vector<Eigen::MatrixXcd>& solutions) {
  if (solutions.size() != red.shifts.size())
    throw ParameterError("assemble_exponential: solution count mismatch");
  Eigen::MatrixXd Z = r.omega0.real() * B;
  for (size_t i = 0; i < red.shifts.size(); ++i) {
    const Eigen::MatrixXcd& X = solutions[i];
    if (X.rows() != B.rows() || X.cols() != B.cols())
      throw ParameterError("assemble_exponential: dimension mismatch");
    const Eigen::MatrixXd term = (red.residues[i] * X).real();
    Z += red.paired[i] ? 2.0 * term : term;
  }
  return Z;
}

}  // namespace expact

#endif  // EXPACT_CF_APPROX_HPP_
