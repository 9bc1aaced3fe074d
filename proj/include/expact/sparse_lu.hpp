// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_SPARSE_LU_HPP_
#define EXPACT_SPARSE_LU_HPP_

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <memory>

#include "expact/csr.hpp"
#include "expact/errors.hpp"
#include "expact/linear_operator.hpp"

namespace expact {

/// Immutable sparse LU factorization P A Q = L U with partial pivoting and
/// a fill-reducing column ordering (COLAMD). Factors are computed once and
/// reused for every inverse application.
class SparseLuFactors {
 public:
  explicit SparseLuFactors(const CsrMatrix& A) : n_(A.n) {
    Eigen::SparseMatrix<double> S(A.n, A.n);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(A.nnz()));
    for (int i = 0; i < A.n; ++i)
      for (int k = A.row_ptr[static_cast<size_t>(i)];
           k < A.row_ptr[static_cast<size_t>(i) + 1]; ++k)
        trips.emplace_back(i, A.col_idx[static_cast<size_t>(k)],
                           A.values[static_cast<size_t>(k)]);
    S.setFromTriplets(trips.begin(), trips.end());
    S.makeCompressed();
    lu_ = std::make_shared<
        Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>>();
    lu_->compute(S);
    if (lu_->info() != Eigen::Success)
      throw FactorizationError("sparse_lu: " + lu_->lastErrorMessage());
    fill_nnz_ = lu_->nnzL() + lu_->nnzU();
  }

  int dim() const { return n_; }
  long fill_nnz() const { return fill_nnz_; }

  Eigen::VectorXd apply_inverse(const Eigen::VectorXd& w) const {
    if (w.size() != n_)
      throw ParameterError("lu_apply_inverse: dimension mismatch");
    return lu_->solve(w);
  }

 private:
  int n_;
  long fill_nnz_ = 0;
  std::shared_ptr<
      Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>>
      lu_;
};

inline SparseLuFactors sparse_lu(const CsrMatrix& A) {
  return SparseLuFactors(A);
}

inline Eigen::VectorXd lu_apply_inverse(const SparseLuFactors& F,
                                        const Eigen::VectorXd& w) {
  return F.apply_inverse(w);
}

/// Adapter from factors to the Arnoldi operator contract; applications are
/// counted by the LinearOperator base.
class InverseOperator final : public LinearOperator {
 public:
  explicit InverseOperator(SparseLuFactors F) : F_(std::move(F)) {}
  int dim() const override { return F_.dim(); }
  const SparseLuFactors& factors() const { return F_; }

 protected:
  void apply_impl(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override {
    y = F_.apply_inverse(x);
  }

 private:
  SparseLuFactors F_;
};

inline InverseOperator as_inverse_operator(SparseLuFactors F) {
  return InverseOperator(std::move(F));
}

}  // namespace expact

#endif  // EXPACT_SPARSE_LU_HPP_
