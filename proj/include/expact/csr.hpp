// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_CSR_HPP_
#define EXPACT_CSR_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <tuple>
#include <vector>

#include "expact/errors.hpp"

namespace expact {

using Triplet = std::tuple<int, int, double>;  // (row, col, value)

/// Compressed sparse row matrix. col_idx is strictly increasing within
/// each row and explicit zeros are dropped at construction.
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr;   // n+1 offsets
  std::vector<int> col_idx;   // nnz
  std::vector<double> values; // nnz

  int nnz() const { return static_cast<int>(values.size()); }

  static CsrMatrix from_triplets(int n,
                                 std::vector<std::tuple<int, int, double>> t,
                                 bool sum_duplicates = true) {
    if (n < 0) throw ParameterError("CsrMatrix: negative dimension");
    std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a)) <
             std::tie(std::get<0>(b), std::get<1>(b));
    });
    CsrMatrix A;
    A.n = n;
    A.row_ptr.assign(n + 1, 0);
    std::vector<std::tuple<int, int, double>> merged;
    merged.reserve(t.size());
    for (const auto& e : t) {
      auto [i, j, v] = e;
      if (i < 0 || i >= n || j < 0 || j >= n)
        throw ParameterError("CsrMatrix: index out of range");
      if (!merged.empty() && std::get<0>(merged.back()) == i &&
          std::get<1>(merged.back()) == j) {
        if (!sum_duplicates) throw ParameterError("CsrMatrix: duplicate entry");
        std::get<2>(merged.back()) += v;
      } else {
        merged.push_back(e);
      }
    }
    for (const auto& [i, j, v] : merged) {
      if (v == 0.0) continue;
      A.row_ptr[i + 1]++;
      A.col_idx.push_back(j);
      A.values.push_back(v);
    }
    for (int i = 0; i < n; ++i) A.row_ptr[i + 1] += A.row_ptr[i];
    return A;
  }

  void matvec(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    y.setZero(n);
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        s += values[k] * x[col_idx[k]];
      y[i] = s;
    }
  }

  Eigen::VectorXd operator*(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y;
    matvec(x, y);
    return y;
  }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        D(i, col_idx[k]) += values[k];
    return D;
  }

  CsrMatrix scaled(double s) const {
    CsrMatrix B = *this;
    for (double& v : B.values) v *= s;
    return B;
  }
};

}  // namespace expact

#endif  // EXPACT_CSR_HPP_
