// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_RANDOM_HPP_
#define EXPACT_RANDOM_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace expact {

/// Seeded standard-normal block; identical (rows, cols, seed) calls are
/// bitwise reproducible for a given standard library.
inline Eigen::MatrixXd randn(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd M(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) M(i, j) = dist(gen);
  return M;
}

}  // namespace expact

#endif  // EXPACT_RANDOM_HPP_
