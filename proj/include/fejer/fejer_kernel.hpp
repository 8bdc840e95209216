/*
 * fejer_kernel.hpp - the Fejér kernel in space and in frequency.
 *
 *   K_n(x) = sum_{|j| <= n} (1 - |j|/(n+1)) e^{-ijx}
 *          = (1/(n+1)) (sin((n+1)x/2) / sin(x/2))^2
 *
 *   K̂_n(ξ) = 1 - |ξ|/(n+1)   for |ξ| <= n,   0 otherwise.
 *
 * The two spatial formulas are evaluated independently so that one can serve
 * as an oracle for the other.
 */
#ifndef FEJER_FEJER_KERNEL_HPP
#define FEJER_FEJER_KERNEL_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

#include "fejer/error.hpp"

namespace fejer {

/// Kernel order n >= 0.
class FejerKernel {
 public:
  explicit FejerKernel(std::int64_t order) : order_(order) {
    if (order < 0) throw Error(ErrorCode::kInvalidArgument, "Fejér kernel order must be >= 0");
  }

  std::int64_t order() const noexcept { return order_; }

  double eval_sum(double x) const;
  double eval_closed(double x) const;
  double hat(double xi) const;

 private:
  std::int64_t order_;
};

/// Direct summation in the real cosine form 1 + 2 sum_{j=1}^{n} (1 - j/(n+1)) cos(jx).
inline double eval_kernel_sum(std::int64_t n, double x) {
  const double np1 = static_cast<double>(n) + 1.0;
  double acc = 1.0;
  double comp = 0.0;  // Kahan compensation
  for (std::int64_t j = 1; j <= n; ++j) {
    const double term = 2.0 * (1.0 - static_cast<double>(j) / np1) * std::cos(static_cast<double>(j) * x);
    const double y = term - comp;
    const double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  }
  return acc;
}

/// Closed form; the removable singularity at x = 0 (mod 2π) yields n + 1.
inline double eval_kernel_closed(std::int64_t n, double x) {
  const double np1 = static_cast<double>(n) + 1.0;
  // Reduce to [-π, π) so sin(x/2) is evaluated where it is well conditioned.
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(x, two_pi);
  const double denom = std::sin(0.5 * r);
  if (std::abs(denom) < 1e-12) return np1;
  const double q = std::sin(0.5 * np1 * r) / denom;
  return q * q / np1;
}

/// Tent profile of the kernel's Fourier transform; defined for real ξ.
inline double fejer_hat(std::int64_t n, double xi) {
  const double a = std::abs(xi);
  if (a > static_cast<double>(n)) return 0.0;
  return 1.0 - a / (static_cast<double>(n) + 1.0);
}

inline double FejerKernel::eval_sum(double x) const { return eval_kernel_sum(order_, x); }
inline double FejerKernel::eval_closed(double x) const { return eval_kernel_closed(order_, x); }
inline double FejerKernel::hat(double xi) const { return fejer_hat(order_, xi); }

}  // namespace fejer

#endif  // FEJER_FEJER_KERNEL_HPP
