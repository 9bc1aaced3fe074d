// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_LINEAR_OPERATOR_HPP_
#define EXPACT_LINEAR_OPERATOR_HPP_

#include <Eigen/Dense>
#include <functional>
#include <utility>

#include "expact/csr.hpp"
#include "expact/errors.hpp"

namespace expact {

/// Abstract real linear operator consumed by the block Arnoldi process.
/// apply() must be deterministic; the counter increments by exactly one
/// per application.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual int dim() const = 0;

  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    if (x.size() != dim())
      throw ParameterError("LinearOperator: dimension mismatch");
    apply_impl(x, y);
    ++count_;
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y(dim());
    apply(x, y);
    return y;
  }

  /// Columnwise application to a block.
  Eigen::MatrixXd apply_block(const Eigen::MatrixXd& X) const {
    Eigen::MatrixXd Y(dim(), X.cols());
    Eigen::VectorXd col(dim());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      Eigen::VectorXd xj = X.col(j);
      apply(xj, col);
      Y.col(j) = col;
    }
    return Y;
  }

  long applications() const { return count_; }
  void reset_counter() const { count_ = 0; }

 protected:
  virtual void apply_impl(const Eigen::VectorXd& x,
                          Eigen::VectorXd& y) const = 0;

 private:
  mutable long count_ = 0;
};

/// CSR-backed operator (applies A).
class CsrOperator final : public LinearOperator {
 public:
  explicit CsrOperator(CsrMatrix A) : A_(std::move(A)) {}
  int dim() const override { return A_.n; }
  const CsrMatrix& matrix() const { return A_; }

 protected:
  void apply_impl(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override {
    A_.matvec(x, y);
  }

 private:
  CsrMatrix A_;
};

/// Dense operator, handy for tests and small verification problems.
class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXd A) : A_(std::move(A)) {
    if (A_.rows() != A_.cols())
      throw ParameterError("DenseOperator: matrix must be square");
  }
  int dim() const override { return static_cast<int>(A_.rows()); }
  const Eigen::MatrixXd& matrix() const { return A_; }

 protected:
  void apply_impl(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override {
    y.noalias() = A_ * x;
  }

 private:
  Eigen::MatrixXd A_;
};

/// Custom-operator hook: wraps an arbitrary callable.
class FunctionOperator final : public LinearOperator {
 public:
  using Fn = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;
  FunctionOperator(int n, Fn fn) : n_(n), fn_(std::move(fn)) {}
  int dim() const override { return n_; }

 protected:
  void apply_impl(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override {
    y.resize(n_);
    fn_(x, y);
  }

 private:
  int n_;
  Fn fn_;
};

}  // namespace expact

#endif  // EXPACT_LINEAR_OPERATOR_HPP_
