// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_FFT_HPP_
#define EXPACT_FFT_HPP_

#include <fftw3.h>

#include <complex>
#include <vector>

#include "expact/errors.hpp"

namespace expact {

/// Cached complex-to-complex FFT plans of a fixed length. Every executed
/// transform (forward or inverse) increments the runtime counter, which the
/// Toeplitz fast path uses to account for its per-apply FFT budget.
class FftEngine {
 public:
  using cd = std::complex<double>;

  explicit FftEngine(int len) : len_(len) {
    if (len <= 0) throw ParameterError("FftEngine: length must be positive");
    in_ = fftw_alloc_complex(static_cast<size_t>(len));
    out_ = fftw_alloc_complex(static_cast<size_t>(len));
    fwd_ = fftw_plan_dft_1d(len, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(len, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  ~FftEngine() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(in_);
    fftw_free(out_);
  }

  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

  int length() const { return len_; }

  std::vector<cd> forward(const std::vector<cd>& x) const {
    return run(x, fwd_, false);
  }

  /// Inverse transform, scaled by 1/len.
  std::vector<cd> inverse(const std::vector<cd>& x) const {
    return run(x, bwd_, true);
  }

  long count() const { return count_; }
  void reset_count() const { count_ = 0; }

 private:
  std::vector<cd> run(const std::vector<cd>& x, fftw_plan plan,
                      bool scale) const {
    if (static_cast<int>(x.size()) != len_)
      throw ParameterError("FftEngine: input length mismatch");
    for (int i = 0; i < len_; ++i) {
      in_[i][0] = x[static_cast<size_t>(i)].real();
      in_[i][1] = x[static_cast<size_t>(i)].imag();
    }
    fftw_execute(plan);
    ++count_;
    std::vector<cd> y(static_cast<size_t>(len_));
    const double s = scale ? 1.0 / len_ : 1.0;
    for (int i = 0; i < len_; ++i)
      y[static_cast<size_t>(i)] = cd(out_[i][0] * s, out_[i][1] * s);
    return y;
  }

  int len_;
  fftw_complex* in_;
  fftw_complex* out_;
  fftw_plan fwd_;
  fftw_plan bwd_;
  mutable long count_ = 0;
};

}  // namespace expact

#endif  // EXPACT_FFT_HPP_
