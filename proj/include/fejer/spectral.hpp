/*
 * spectral.hpp - periodic functions sampled on an M-point grid over [-π, π).
 *
 * Grid points are x_i = -π + 2πi/M. Fourier coefficients follow
 *
 *   f̂(j) = (1/M) sum_i f(x_i) e^{-ij x_i},     f(x_i) = sum_j f̂(j) e^{ij x_i},
 *
 * and the L² norm is ||f||² = ∫_{-π}^{π} |f|² dx = 2π sum_j |f̂(j)|², so the
 * discrete Parseval identity holds exactly up to roundoff.
 *
 * Convolution is normalized as (1/2π) ∫ K(t) f(x - t) dt, which makes the
 * Fejér mean a Fourier multiplier by the tent K̂_n(j).
 *
 * Frequencies: j ranges over |j| <= max_frequency() = floor((M-1)/2). For even
 * M the unmatched Nyquist mode j = M/2 is stored but every multiplier built
 * here sets its symbol to 0 there.
 *
 * Lacunary block indices k are 1-based, as in LacunarySequence::term().
 */
#ifndef FEJER_SPECTRAL_HPP
#define FEJER_SPECTRAL_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fejer/error.hpp"
#include "fejer/fejer_kernel.hpp"
#include "fejer/fft.hpp"
#include "fejer/lacunary.hpp"

namespace fejer {

/// Relative tolerance for agreement between the space and frequency norm routes.
inline constexpr double kParsevalTolerance = 1e-10;

namespace detail {

/// Neumaier-compensated sum; result is insensitive to accumulation order within ~1 ulp.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

class SpectralGrid {
 public:
  explicit SpectralGrid(std::size_t size) : size_(size) {
    if (size < 2) throw Error(ErrorCode::kInvalidArgument, "grid needs at least 2 points");
    plan_ = fft_plan(size);
  }

  std::size_t size() const noexcept { return size_; }
  std::int64_t max_frequency() const noexcept { return static_cast<std::int64_t>((size_ - 1) / 2); }
  bool has_nyquist() const noexcept { return size_ % 2 == 0; }

  double point(std::size_t i) const noexcept {
    return -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(size_);
  }

  /// True for every frequency with a stored coefficient (includes Nyquist on even grids).
  bool stores(std::int64_t j) const noexcept {
    const auto m = static_cast<std::int64_t>(size_);
    return j >= -max_frequency() && (j <= max_frequency() || (has_nyquist() && j == m / 2));
  }

  /// Storage slot of frequency j (j mod M).
  std::size_t bin(std::int64_t j) const {
    if (!stores(j)) throw Error(ErrorCode::kIndexOutOfRange, "frequency " + std::to_string(j) + " not on grid");
    const auto m = static_cast<std::int64_t>(size_);
    return static_cast<std::size_t>(((j % m) + m) % m);
  }

  /// Signed frequency stored in slot b; slots above M/2 map to negative j.
  std::int64_t frequency(std::size_t b) const noexcept {
    const auto m = static_cast<std::int64_t>(size_);
    const auto s = static_cast<std::int64_t>(b);
    return s <= m / 2 ? s : s - m;
  }

  bool is_nyquist(std::int64_t j) const noexcept {
    return has_nyquist() && j == static_cast<std::int64_t>(size_ / 2);
  }

  const FftPlan& plan() const noexcept { return *plan_; }

  friend bool operator==(const SpectralGrid& a, const SpectralGrid& b) noexcept { return a.size_ == b.size_; }

 private:
  std::size_t size_;
  std::shared_ptr<const FftPlan> plan_;
};

/// Immutable sampled function with both representations kept consistent.
class Signal {
 public:
  static Signal from_samples(const SpectralGrid& grid, std::vector<cplx> samples) {
    if (samples.size() != grid.size())
      throw Error(ErrorCode::kLengthMismatch, "sample count does not match grid size");
    std::vector<cplx> coeffs = samples;
    grid.plan().forward(coeffs);
    const double inv_m = 1.0 / static_cast<double>(grid.size());
    // e^{-ij x_i} = (-1)^j e^{-2πi j i/M}
    for (std::size_t b = 0; b < coeffs.size(); ++b) {
      const double sign = (grid.frequency(b) % 2 == 0) ? 1.0 : -1.0;
      coeffs[b] *= sign * inv_m;
    }
    return Signal(grid, std::move(samples), std::move(coeffs));
  }

  /// Coefficients in slot order (see SpectralGrid::bin).
  static Signal from_coefficients(const SpectralGrid& grid, std::vector<cplx> coeffs) {
    if (coeffs.size() != grid.size())
      throw Error(ErrorCode::kLengthMismatch, "coefficient count does not match grid size");
    std::vector<cplx> samples(coeffs.size());
    for (std::size_t b = 0; b < coeffs.size(); ++b) {
      const double sign = (grid.frequency(b) % 2 == 0) ? 1.0 : -1.0;
      samples[b] = coeffs[b] * sign;
    }
    grid.plan().inverse(samples);
    return Signal(grid, std::move(samples), std::move(coeffs));
  }

  static Signal from_function(const SpectralGrid& grid, const std::function<cplx(double)>& f) {
    std::vector<cplx> samples(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = f(grid.point(i));
    return from_samples(grid, std::move(samples));
  }

  static Signal zero(const SpectralGrid& grid) {
    return Signal(grid, std::vector<cplx>(grid.size()), std::vector<cplx>(grid.size()));
  }

  const SpectralGrid& grid() const noexcept { return grid_; }
  std::span<const cplx> samples() const noexcept { return samples_; }
  std::span<const cplx> coefficients() const noexcept { return coeffs_; }

  /// f̂(j) for a stored frequency j.
  cplx coefficient(std::int64_t j) const { return coeffs_[grid_.bin(j)]; }

  /// Largest |j| whose coefficient exceeds rel_tol * max |f̂|; 0 for the zero signal.
  std::int64_t degree(double rel_tol = 1e-13) const {
    double peak = 0.0;
    for (const auto& c : coeffs_) peak = std::max(peak, std::abs(c));
    if (peak == 0.0) return 0;
    std::int64_t deg = 0;
    for (std::size_t b = 0; b < coeffs_.size(); ++b)
      if (std::abs(coeffs_[b]) > rel_tol * peak) deg = std::max(deg, std::abs(grid_.frequency(b)));
    return deg;
  }

 private:
  Signal(const SpectralGrid& grid, std::vector<cplx> samples, std::vector<cplx> coeffs)
      : grid_(grid), samples_(std::move(samples)), coeffs_(std::move(coeffs)) {}

  SpectralGrid grid_;
  std::vector<cplx> samples_;
  std::vector<cplx> coeffs_;
};

/// Per-frequency comparison of two signals: max_j |f̂(j) - ĝ(j)|.
inline double max_coefficient_distance(const Signal& f, const Signal& g) {
  if (!(f.grid() == g.grid())) throw Error(ErrorCode::kGridMismatch, "signals live on different grids");
  double d = 0.0;
  for (std::size_t b = 0; b < f.coefficients().size(); ++b)
    d = std::max(d, std::abs(f.coefficients()[b] - g.coefficients()[b]));
  return d;
}

/// max_i |f(x_i) - g(x_i)|.
inline double max_sample_distance(const Signal& f, const Signal& g) {
  if (!(f.grid() == g.grid())) throw Error(ErrorCode::kGridMismatch, "signals live on different grids");
  double d = 0.0;
  for (std::size_t i = 0; i < f.samples().size(); ++i) d = std::max(d, std::abs(f.samples()[i] - g.samples()[i]));
  return d;
}

inline Signal operator+(const Signal& f, const Signal& g) {
  if (!(f.grid() == g.grid())) throw Error(ErrorCode::kGridMismatch, "signals live on different grids");
  std::vector<cplx> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t b = 0; b < c.size(); ++b) c[b] += g.coefficients()[b];
  return Signal::from_coefficients(f.grid(), std::move(c));
}

inline Signal operator*(cplx s, const Signal& f) {
  std::vector<cplx> c(f.coefficients().begin(), f.coefficients().end());
  for (auto& v : c) v *= s;
  return Signal::from_coefficients(f.grid(), std::move(c));
}

inline Signal operator-(const Signal& f, const Signal& g) { return f + cplx(-1.0) * g; }

inline std::vector<cplx> forward_transform(const Signal& f) {
  return {f.coefficients().begin(), f.coefficients().end()};
}

inline Signal inverse_transform(const SpectralGrid& grid, std::vector<cplx> coeffs) {
  return Signal::from_coefficients(grid, std::move(coeffs));
}

/// sqrt((2π/M) sum_i |f(x_i)|²)
inline double l2_norm_space(const Signal& f) {
  detail::CompensatedSum s;
  for (const auto& v : f.samples()) s.add(std::norm(v));
  return std::sqrt(2.0 * std::numbers::pi * s.value() / static_cast<double>(f.grid().size()));
}

/// sqrt(2π sum_j |f̂(j)|²)
inline double l2_norm_spectral(const Signal& f) {
  detail::CompensatedSum s;
  for (const auto& v : f.coefficients()) s.add(std::norm(v));
  return std::sqrt(2.0 * std::numbers::pi * s.value());
}

/// Both routes are evaluated; disagreement beyond kParsevalTolerance is an internal error.
inline double l2_norm(const Signal& f) {
  const double spectral = l2_norm_spectral(f);
  const double space = l2_norm_space(f);
  const double scale = std::max(spectral, space);
  if (std::abs(spectral - space) > kParsevalTolerance * scale)
    throw Error(ErrorCode::kCheckFailed, "Parseval mismatch: spectral " + std::to_string(spectral) +
                                             " vs space " + std::to_string(space));
  return spectral;
}

/// Real symbol m(j) acting on Fourier coefficients.
class Multiplier {
 public:
  /// `symbol` is sampled at every stored frequency except Nyquist, which is 0.
  Multiplier(const SpectralGrid& grid, const std::function<double(std::int64_t)>& symbol)
      : grid_(grid), values_(grid.size(), 0.0) {
    for (std::size_t b = 0; b < values_.size(); ++b) {
      const auto j = grid.frequency(b);
      if (grid.is_nyquist(j)) continue;
      const double v = symbol(j);
      if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "multiplier symbol is not finite");
      values_[b] = v;
    }
  }

  static Multiplier constant(const SpectralGrid& grid, double c) {
    return Multiplier(grid, [c](std::int64_t) { return c; });
  }

  const SpectralGrid& grid() const noexcept { return grid_; }
  double operator()(std::int64_t j) const { return values_[grid_.bin(j)]; }
  std::span<const double> values() const noexcept { return values_; }

  bool is_even() const noexcept {
    for (std::int64_t j = 1; j <= grid_.max_frequency(); ++j)
      if (values_[grid_.bin(j)] != values_[grid_.bin(-j)]) return false;
    return true;
  }

 private:
  SpectralGrid grid_;
  std::vector<double> values_;
};

/// How block symbols treat kernel orders beyond the grid's max frequency.
enum class OrderPolicy {
  /// Orders above max_frequency are rejected with AliasingRisk.
  kStrict,
  /// Tents are evaluated at the stored frequencies for any order. Exact for
  /// every grid signal without Nyquist content, since such a signal is a
  /// trigonometric polynomial of degree <= max_frequency.
  kGridRestricted,
};

namespace detail {

inline void require_representable(const SpectralGrid& grid, std::int64_t n, const char* what) {
  if (n > grid.max_frequency())
    throw Error(ErrorCode::kAliasingRisk, std::string(what) + " order " + std::to_string(n) +
                                              " exceeds grid max frequency " + std::to_string(grid.max_frequency()));
}

inline void require_no_nyquist(const Signal& f) {
  const auto& g = f.grid();
  if (!g.has_nyquist()) return;
  const double nyq = std::abs(f.coefficient(static_cast<std::int64_t>(g.size() / 2)));
  const double peak = l2_norm_spectral(f) / std::sqrt(2.0 * std::numbers::pi);
  if (nyq > 1e-13 * peak)
    throw Error(ErrorCode::kAliasingRisk, "signal carries energy at the unmatched Nyquist frequency");
}

inline Signal scale_coefficients(const Signal& f, const std::function<double(std::int64_t)>& factor) {
  const auto& grid = f.grid();
  std::vector<cplx> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t b = 0; b < c.size(); ++b) c[b] *= factor(grid.frequency(b));
  return Signal::from_coefficients(grid, std::move(c));
}

}  // namespace detail

/// σ_n f = K_n * f, computed as the multiplier K̂_n(j).
inline Signal fejer_mean(const Signal& f, std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "Fejér order must be >= 0");
  detail::require_representable(f.grid(), n, "Fejér");
  return detail::scale_coefficients(f, [n](std::int64_t j) { return fejer_hat(n, static_cast<double>(j)); });
}

/// σ_n f by trapezoidal quadrature of (1/2π) ∫ K_n(t) f(x - t) dt on nodes
/// t_l = 2πl/M. O(M²); exact whenever n + deg(f) < M.
inline Signal convolve_direct(const Signal& f, std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "Fejér order must be >= 0");
  const auto& grid = f.grid();
  detail::require_representable(grid, n, "Fejér");
  const std::size_t m = grid.size();
  std::vector<double> kernel(m);
  for (std::size_t l = 0; l < m; ++l)
    kernel[l] = eval_kernel_closed(n, 2.0 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(m));
  // x_i - t_l = x_{i-l}
  const auto samples = f.samples();
  std::vector<cplx> out(m);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    cplx acc{};
    for (std::size_t l = 0; l < m; ++l) acc += kernel[l] * samples[(i + m - l) % m];
    out[i] = acc * inv_m;
  }
  return Signal::from_samples(grid, std::move(out));
}

/// Δ_k(j) = K̂_{n_{k+1}}(j) - K̂_{n_k}(j).
inline double block_symbol(const LacunarySequence& seq, std::size_t k, double j) {
  return fejer_hat(seq.term(k + 1), j) - fejer_hat(seq.term(k), j);
}

/// σ_{n_{k+1}} f - σ_{n_k} f for 1 <= k < seq.size().
inline Signal block_difference(const Signal& f, const LacunarySequence& seq, std::size_t k) {
  if (k < 1 || k >= seq.size())
    throw Error(ErrorCode::kIndexOutOfRange,
                "block index " + std::to_string(k) + " outside [1, " + std::to_string(seq.size() - 1) + "]");
  detail::require_representable(f.grid(), seq.term(k + 1), "block");
  return detail::scale_coefficients(f, [&](std::int64_t j) { return block_symbol(seq, k, static_cast<double>(j)); });
}

/// m(j) = sum_{k=first}^{last} coeffs[k-first] Δ_k(j).
inline Multiplier build_block_multiplier(const SpectralGrid& grid, const LacunarySequence& seq,
                                         std::span<const double> coeffs, std::size_t first, std::size_t last,
                                         OrderPolicy policy = OrderPolicy::kStrict) {
  if (first < 1 || last >= seq.size() || first > last + 1)
    throw Error(ErrorCode::kIndexOutOfRange, "block range [" + std::to_string(first) + ", " + std::to_string(last) +
                                                 "] outside the sequence");
  const std::size_t count = last + 1 - first;
  if (coeffs.size() < count)
    throw Error(ErrorCode::kLengthMismatch, "need " + std::to_string(count) + " coefficients, got " +
                                                std::to_string(coeffs.size()));
  if (count > 0 && policy == OrderPolicy::kStrict) detail::require_representable(grid, seq.term(last + 1), "block");
  for (std::size_t i = 0; i < count; ++i)
    if (!std::isfinite(coeffs[i])) throw Error(ErrorCode::kInvalidArgument, "coefficients must be finite");

  Multiplier m(grid, [&](std::int64_t j) {
    const double x = static_cast<double>(j);
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t k = first + i;
      // Both tents vanish once |j| exceeds n_{k+1}.
      if (std::abs(j) > seq.term(k + 1)) continue;
      acc += coeffs[i] * block_symbol(seq, k, x);
    }
    return acc;
  });
  if (!m.is_even()) throw Error(ErrorCode::kCheckFailed, "tent-built multiplier is not even");
  return m;
}

/// Symbol of T_N f = sum_{k=1}^{N} c_k (σ_{n_{k+1}} f - σ_{n_k} f).
inline Multiplier build_multiplier(const SpectralGrid& grid, const LacunarySequence& seq,
                                   std::span<const double> coeffs, std::size_t n_blocks,
                                   OrderPolicy policy = OrderPolicy::kStrict) {
  if (n_blocks < 1) throw Error(ErrorCode::kIndexOutOfRange, "N must be at least 1");
  if (n_blocks >= seq.size())
    throw Error(ErrorCode::kIndexOutOfRange, "N = " + std::to_string(n_blocks) + " needs a sequence of length > N");
  return build_block_multiplier(grid, seq, coeffs, 1, n_blocks, policy);
}

/// Coefficients m(j) f̂(j).
inline Signal apply_multiplier(const Multiplier& m, const Signal& f) {
  if (!(m.grid() == f.grid())) throw Error(ErrorCode::kGridMismatch, "multiplier and signal grids differ");
  const auto vals = m.values();
  std::vector<cplx> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t b = 0; b < c.size(); ++b) c[b] *= vals[b];
  return Signal::from_coefficients(f.grid(), std::move(c));
}

struct OperatorNorm {
  double value = 0.0;
  std::int64_t witness = 0;
};

/// L²→L² norm of a multiplier: max_j |m(j)|. Ties go to the smallest |j|, then positive j.
inline OperatorNorm operator_norm(const Multiplier& m) {
  OperatorNorm best{std::abs(m(0)), 0};
  const auto& grid = m.grid();
  for (std::int64_t j = 1; j <= grid.max_frequency(); ++j) {
    for (std::int64_t s : {j, -j}) {
      const double v = std::abs(m(s));
      if (v > best.value) best = {v, s};
    }
  }
  return best;
}

}  // namespace fejer

#endif  // FEJER_SPECTRAL_HPP
