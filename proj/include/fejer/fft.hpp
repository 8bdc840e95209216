/*
 * fft.hpp - DFT of arbitrary length, backed by FFTW.
 *
 * Plans are created in place with FFTW_UNALIGNED so they can be executed on
 * any caller buffer. Planning and destruction go through one mutex; execution
 * of a finished plan is safe from any thread.
 */
#ifndef FEJER_FFT_HPP
#define FEJER_FFT_HPP

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "fejer/error.hpp"

namespace fejer {

using cplx = std::complex<double>;

namespace detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex mu;
  return mu;
}

inline fftw_complex* as_fftw(std::span<cplx> a) { return reinterpret_cast<fftw_complex*>(a.data()); }

}  // namespace detail

class FftPlan {
 public:
  explicit FftPlan(std::size_t n) : n_(n) {
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "FFT length must be positive");
    std::vector<cplx> scratch(n);
    const int len = static_cast<int>(n);
    std::lock_guard lock(detail::fftw_planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fwd_ = fftw_plan_dft_1d(len, detail::as_fftw(scratch), detail::as_fftw(scratch), FFTW_FORWARD, flags);
    inv_ = fftw_plan_dft_1d(len, detail::as_fftw(scratch), detail::as_fftw(scratch), FFTW_BACKWARD, flags);
    if (!fwd_ || !inv_) throw Error(ErrorCode::kInvalidArgument, "FFTW could not plan length " + std::to_string(n));
  }

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  ~FftPlan() {
    std::lock_guard lock(detail::fftw_planner_mutex());
    if (fwd_) fftw_destroy_plan(fwd_);
    if (inv_) fftw_destroy_plan(inv_);
  }

  std::size_t size() const noexcept { return n_; }

  /// Unnormalized forward DFT: X_b = sum_i x_i e^{-2πi b i / n}.
  void forward(std::span<cplx> data) const { run(fwd_, data); }

  /// Unnormalized inverse DFT: x_i = sum_b X_b e^{+2πi b i / n}.
  void inverse(std::span<cplx> data) const { run(inv_, data); }

 private:
  void run(fftw_plan p, std::span<cplx> data) const {
    if (data.size() != n_) throw Error(ErrorCode::kLengthMismatch, "FFT input length does not match plan");
    fftw_execute_dft(p, detail::as_fftw(data), detail::as_fftw(data));
  }

  std::size_t n_;
  fftw_plan fwd_ = nullptr;
  fftw_plan inv_ = nullptr;
};

/// Process-wide cache so grids of equal size share one plan.
inline std::shared_ptr<const FftPlan> fft_plan(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::weak_ptr<const FftPlan>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end())
    if (auto plan = it->second.lock()) return plan;
  auto plan = std::make_shared<const FftPlan>(n);
  cache[n] = plan;
  return plan;
}

}  // namespace fejer

#endif  // FEJER_FFT_HPP
