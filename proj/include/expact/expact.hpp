// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

// Umbrella header for the matrix-exponential-action library.

#ifndef EXPACT_EXPACT_HPP_
#define EXPACT_EXPACT_HPP_

#include "expact/block_arnoldi.hpp"
#include "expact/cf_approx.hpp"
#include "expact/cf_table_nu14.hpp"
#include "expact/csr.hpp"
#include "expact/errors.hpp"
#include "expact/expm_action.hpp"
#include "expact/fft.hpp"
#include "expact/json_io.hpp"
#include "expact/linear_operator.hpp"
#include "expact/matrix_market.hpp"
#include "expact/problems.hpp"
#include "expact/random.hpp"
#include "expact/shifted_solver.hpp"
#include "expact/sparse_lu.hpp"
#include "expact/toeplitz.hpp"
#include "expact/verify.hpp"

#endif  // EXPACT_EXPACT_HPP_
