// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_TOEPLITZ_HPP_
#define EXPACT_TOEPLITZ_HPP_

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "expact/errors.hpp"
#include "expact/fft.hpp"
#include "expact/linear_operator.hpp"

namespace expact {

/// Real Toeplitz operator: FFT matvec by circulant embedding of size 2n
/// (zero-padded, so the per-apply FFT count is deterministic), plus inverse
/// application through the Gohberg-Semencul formula once the generator
/// vectors x = T^{-1} e_1 and y = T^{-1} e_n have been computed.
class ToeplitzOperator {
 public:
  using cd = std::complex<double>;

  ToeplitzOperator(Eigen::VectorXd first_col, Eigen::VectorXd first_row)
      : n_(static_cast<int>(first_col.size())),
        col_(std::move(first_col)),
        row_(std::move(first_row)),
        fft_(std::make_shared<FftEngine>(2 * n_)) {
    if (row_.size() != n_ || n_ < 1)
      throw ParameterError("ToeplitzOperator: bad first column/row sizes");
    if (col_(0) != row_(0))
      throw ParameterError("ToeplitzOperator: first_col[0] != first_row[0]");
    // Circulant embedding: [t_0 .. t_{n-1}, 0, t_{-(n-1)} .. t_{-1}].
    std::vector<cd> c(static_cast<size_t>(2 * n_), cd(0.0, 0.0));
    for (int i = 0; i < n_; ++i) c[static_cast<size_t>(i)] = col_(i);
    for (int j = 1; j < n_; ++j) c[static_cast<size_t>(2 * n_ - j)] = row_(j);
    spectrum_ = fft_->forward(c);
    fft_->reset_count();
  }

  int dim() const { return n_; }
  const Eigen::VectorXd& first_col() const { return col_; }
  const Eigen::VectorXd& first_row() const { return row_; }
  bool has_generators() const { return has_gsf_; }
  long fft_count() const { return fft_->count(); }

  /// T v by one forward and one inverse FFT against the cached spectrum.
  Eigen::VectorXd matvec(const Eigen::VectorXd& v) const {
    if (v.size() != n_) throw ParameterError("toeplitz_matvec: bad length");
    std::vector<cd> vp = pad(v);
    std::vector<cd> vhat = fft_->forward(vp);
    for (int i = 0; i < 2 * n_; ++i)
      vhat[static_cast<size_t>(i)] *= spectrum_[static_cast<size_t>(i)];
    const std::vector<cd> out = fft_->inverse(vhat);
    return head_real(out);
  }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd T(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        T(i, j) = i >= j ? col_(i - j) : row_(j - i);
    return T;
  }

  /// Solves T x = e_1 and T y = e_n with the given backend (dense LU when
  /// none is supplied) and caches the generator transforms.
  void compute_gsf_generators(
      const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& solver =
          {}) {
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(n_);
    Eigen::VectorXd en = Eigen::VectorXd::Zero(n_);
    e1(0) = 1.0;
    en(n_ - 1) = 1.0;
    if (solver) {
      x_ = solver(e1);
      y_ = solver(en);
    } else {
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(to_dense());
      x_ = lu.solve(e1);
      y_ = lu.solve(en);
    }
    if (std::abs(x_(0)) < 1e-13)
      throw ConstructionError(
          "gsf_generators: x_1 vanishes, Gohberg-Semencul inapplicable");

    // Generator vectors of the two-term formula
    //   T^{-1} = (1/x_1) (L(x) L(Jy)^T - L(Zy) L(ZJx)^T),
    // with J the reversal and Z the down-shift; their padded transforms are
    // cached so an inverse apply costs exactly six runtime FFTs.
    Eigen::VectorXd Jy = y_.reverse();
    Eigen::VectorXd Zy = Eigen::VectorXd::Zero(n_);
    Zy.tail(n_ - 1) = y_.head(n_ - 1);
    Eigen::VectorXd ZJx = Eigen::VectorXd::Zero(n_);
    ZJx.tail(n_ - 1) = x_.reverse().head(n_ - 1);
    Fx_ = fft_->forward(pad(x_));
    FJy_ = fft_->forward(pad(Jy));
    FZy_ = fft_->forward(pad(Zy));
    FZJx_ = fft_->forward(pad(ZJx));
    has_gsf_ = true;
  }

  const Eigen::VectorXd& generator_x() const { return require_gsf(), x_; }
  const Eigen::VectorXd& generator_y() const { return require_gsf(), y_; }

  /// T^{-1} w by the Gohberg-Semencul formula, organized as four
  /// triangular-Toeplitz products sharing transforms: six runtime FFTs of
  /// length 2n per application.
  Eigen::VectorXd gsf_apply_inverse(const Eigen::VectorXd& w) const {
    require_gsf();
    if (w.size() != n_)
      throw ParameterError("gsf_apply_inverse: bad length");
    const int N = 2 * n_;
    const std::vector<cd> What = fft_->forward(pad(w));  // 1

    std::vector<cd> tmp(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i)
      tmp[static_cast<size_t>(i)] =
          std::conj(FJy_[static_cast<size_t>(i)]) * What[static_cast<size_t>(i)];
    const Eigen::VectorXd v1 = head_real(fft_->inverse(tmp));  // 2

    for (int i = 0; i < N; ++i)
      tmp[static_cast<size_t>(i)] = std::conj(FZJx_[static_cast<size_t>(i)]) *
                                    What[static_cast<size_t>(i)];
    const Eigen::VectorXd v3 = head_real(fft_->inverse(tmp));  // 3

    const std::vector<cd> V1hat = fft_->forward(pad(v1));  // 4
    const std::vector<cd> V3hat = fft_->forward(pad(v3));  // 5
    for (int i = 0; i < N; ++i)
      tmp[static_cast<size_t>(i)] =
          Fx_[static_cast<size_t>(i)] * V1hat[static_cast<size_t>(i)] -
          FZy_[static_cast<size_t>(i)] * V3hat[static_cast<size_t>(i)];
    return head_real(fft_->inverse(tmp)) / x_(0);  // 6
  }

  ToeplitzOperator scaled(double s) const {
    return ToeplitzOperator(s * col_, s * row_);
  }

 private:
  void require_gsf() const {
    if (!has_gsf_)
      throw StateError("ToeplitzOperator: generators not computed");
  }

  std::vector<cd> pad(const Eigen::VectorXd& v) const {
    std::vector<cd> out(static_cast<size_t>(2 * n_), cd(0.0, 0.0));
    for (int i = 0; i < n_; ++i) out[static_cast<size_t>(i)] = v(i);
    return out;
  }

  Eigen::VectorXd head_real(const std::vector<cd>& v) const {
    Eigen::VectorXd out(n_);
    for (int i = 0; i < n_; ++i) out(i) = v[static_cast<size_t>(i)].real();
    return out;
  }

  int n_;
  Eigen::VectorXd col_, row_;
  std::shared_ptr<FftEngine> fft_;
  std::vector<cd> spectrum_;
  bool has_gsf_ = false;
  Eigen::VectorXd x_, y_;
  std::vector<cd> Fx_, FJy_, FZy_, FZJx_;
};

inline Eigen::VectorXd toeplitz_matvec(const ToeplitzOperator& T,
                                       const Eigen::VectorXd& v) {
  return T.matvec(v);
}

/// Forward operator T for the Arnoldi contract.
class ToeplitzMatvecOperator final : public LinearOperator {
 public:
  explicit ToeplitzMatvecOperator(std::shared_ptr<const ToeplitzOperator> T)
      : T_(std::move(T)) {}
  int dim() const override { return T_->dim(); }

 protected:
  void apply_impl(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override {
    y = T_->matvec(x);
  }

 private:
  std::shared_ptr<const ToeplitzOperator> T_;
};

/// Inverse operator T^{-1} through the Gohberg-Semencul formula.
class ToeplitzGsfInverseOperator final : public LinearOperator {
 public:
  explicit ToeplitzGsfInverseOperator(std::shared_ptr<const ToeplitzOperator> T)
      : T_(std::move(T)) {
    if (!T_->has_generators())
      throw StateError("ToeplitzGsfInverseOperator: generators missing");
  }
  int dim() const override { return T_->dim(); }

 protected:
  void apply_impl(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override {
    y = T_->gsf_apply_inverse(x);
  }

 private:
  std::shared_ptr<const ToeplitzOperator> T_;
};

}  // namespace expact

#endif  // EXPACT_TOEPLITZ_HPP_
