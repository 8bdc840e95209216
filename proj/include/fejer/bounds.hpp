/*
 * bounds.hpp - numerical verification of the uniform bound on the symbol
 *
 *   Ŝ_N(j) = sum_{k=1}^{N} Δ_k(j),   Δ_k(j) = K̂_{n_{k+1}}(j) - K̂_{n_k}(j),
 *
 * and of the operator inequality it implies for
 *
 *   T_N f = sum_{k=1}^{N} c_k (σ_{n_{k+1}} f - σ_{n_k} f).
 *
 * For a frequency j let k0 be the first k with |j| <= n_k. The absolute sum
 * I(j) = sum_k |Δ_k(j)| splits into I1 (blocks with n_{k+1} < |j|, where both
 * tents vanish) and I2 (the rest). The lacunary geometric estimate gives
 * I2 <= 2 alpha/(alpha - 1). Because the Fejér tents are ordered
 * (K̂_{n_{k+1}} >= K̂_{n_k}), every Δ_k(j) >= 0 and I(j) telescopes to
 * K̂_{n_{N+1}}(j) - K̂_{n_1}(j) <= 1, which is the sharp constant.
 *
 * C_sym denotes max_j I(j). The operator bound is ||T_N f|| <= ||c||_∞ C_sym ||f||.
 */
#ifndef FEJER_BOUNDS_HPP
#define FEJER_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fejer/error.hpp"
#include "fejer/fejer_kernel.hpp"
#include "fejer/lacunary.hpp"
#include "fejer/parallel.hpp"
#include "fejer/spectral.hpp"

namespace fejer {

/// Pure tent arithmetic.
inline constexpr double kTentTolerance = 1e-12;
/// Checks that pass through a transform.
inline constexpr double kTransformTolerance = 1e-9;
/// Floor for Δ_k(j) >= 0.
inline constexpr double kBlockSignTolerance = 1e-15;
/// Per-frequency agreement of sum_k Δ_k(j) with the telescoped tent difference.
inline constexpr double kTelescopeTolerance = 1e-13;

/// First k (1-based) with |xi| <= n_k, or nullopt when |xi| exceeds every term.
inline std::optional<std::size_t> crossing_index(const LacunarySequence& seq, double xi) {
  const auto terms = seq.terms();
  const double a = std::abs(xi);
  auto it = std::lower_bound(terms.begin(), terms.end(), a,
                             [](std::int64_t t, double v) { return static_cast<double>(t) < v; });
  if (it == terms.end()) return std::nullopt;
  return static_cast<std::size_t>(it - terms.begin()) + 1;
}

inline std::optional<std::size_t> crossing_index(const LacunarySequence& seq, std::int64_t j) {
  return crossing_index(seq, static_cast<double>(j));
}

struct AbsSumProfile {
  double i1 = 0.0;  // blocks with n_{k+1} < |j|
  double i2 = 0.0;  // blocks from k0 - 1 onwards
  double total() const noexcept { return i1 + i2; }
};

/// I1 and I2 for sum_{k=1}^{N} |Δ_k(xi)|.
inline AbsSumProfile abs_sum_profile(const LacunarySequence& seq, std::size_t n_blocks, double xi) {
  if (n_blocks < 1 || n_blocks >= seq.size())
    throw Error(ErrorCode::kIndexOutOfRange,
                "N = " + std::to_string(n_blocks) + " needs 1 <= N < " + std::to_string(seq.size()));
  const double a = std::abs(xi);
  AbsSumProfile p;
  for (std::size_t k = 1; k <= n_blocks; ++k) {
    const double d = std::abs(block_symbol(seq, k, xi));
    if (static_cast<double>(seq.term(k + 1)) < a)
      p.i1 += d;
    else
      p.i2 += d;
  }
  return p;
}

inline AbsSumProfile abs_sum_profile(const LacunarySequence& seq, std::size_t n_blocks, std::int64_t j) {
  return abs_sum_profile(seq, n_blocks, static_cast<double>(j));
}

struct BoundReport {
  std::int64_t n1 = 0;
  double alpha = 0.0;            // certified ratio of the concrete sequence
  double requested_alpha = 0.0;  // ratio asked of generate(), else alpha
  std::size_t n_blocks = 0;
  double paper_bound = 0.0;      // 2 alpha/(alpha - 1) with the certified alpha
  double max_abs_sum = 0.0;      // C_sym = max_j I(j)
  std::int64_t witness_j = 0;
  double sup_symbol = 0.0;       // sup_j |m_N(j)|
  std::int64_t symbol_witness_j = 0;
  double telescope_max = 0.0;    // max_j |K̂_{n_{N+1}}(j) - K̂_{n_1}(j)|
  double min_block_symbol = std::numeric_limits<double>::infinity();
  double max_telescope_error = 0.0;
  double max_i1 = 0.0;
  double coeff_sup = 1.0;        // ||c||_∞
  std::optional<double> worst_ratio;  // max ||T_N f|| / ||f|| over checked signals
  std::size_t signals_checked = 0;
  std::map<std::string, bool> pass;

  bool passed() const {
    return std::all_of(pass.begin(), pass.end(), [](const auto& kv) { return kv.second; });
  }
};

namespace detail {

struct ScanCell {
  double max_abs = -1.0;
  std::int64_t witness = 0;
  double max_signed = -1.0;  // |sum_k Δ_k(j)|
  std::int64_t signed_witness = 0;
  double telescope_max = 0.0;
  double min_delta = std::numeric_limits<double>::infinity();
  double max_tel_err = 0.0;
  double max_i1 = 0.0;

  void merge(const ScanCell& o) {
    if (o.max_abs > max_abs || (o.max_abs == max_abs && o.witness < witness)) {
      max_abs = o.max_abs;
      witness = o.witness;
    }
    if (o.max_signed > max_signed || (o.max_signed == max_signed && o.signed_witness < signed_witness)) {
      max_signed = o.max_signed;
      signed_witness = o.signed_witness;
    }
    telescope_max = std::max(telescope_max, o.telescope_max);
    min_delta = std::min(min_delta, o.min_delta);
    max_tel_err = std::max(max_tel_err, o.max_tel_err);
    max_i1 = std::max(max_i1, o.max_i1);
  }
};

// One pass over 0 <= j <= n_{N_max+1} filling cells for every N <= N_max.
// Symbols are even in j, so the nonnegative half covers all |j| <= n_{N+1}.
inline std::vector<ScanCell> scan_frequencies(const LacunarySequence& seq, std::size_t max_blocks) {
  const auto top = static_cast<std::size_t>(seq.term(max_blocks + 1));
  const std::size_t count = top + 1;
  const std::size_t workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(1, count / 4096));
  std::vector<std::vector<ScanCell>> partial(workers, std::vector<ScanCell>(max_blocks));
  const std::size_t chunk = (count + workers - 1) / workers;
  const auto terms = seq.terms();
  const std::int64_t n1 = terms[0];

  parallel_for(
      workers,
      [&](std::size_t w) {
        auto& cells = partial[w];
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        for (std::size_t u = begin; u < end; ++u) {
          const auto j = static_cast<std::int64_t>(u);
          const double x = static_cast<double>(j);
          const double base = fejer_hat(n1, x);
          double abs_sum = 0.0, signed_sum = 0.0, i1 = 0.0;
          double min_d = std::numeric_limits<double>::infinity();
          for (std::size_t k = 1; k <= max_blocks; ++k) {
            const std::int64_t upper = terms[k];
            const double d = fejer_hat(upper, x) - fejer_hat(terms[k - 1], x);
            abs_sum += std::abs(d);
            signed_sum += d;
            min_d = std::min(min_d, d);
            if (upper < j) i1 += std::abs(d);
            if (j > upper) continue;  // outside the support of Ŝ_k
            auto& c = cells[k - 1];
            c.min_delta = std::min(c.min_delta, min_d);
            if (abs_sum > c.max_abs) {
              c.max_abs = abs_sum;
              c.witness = j;
            }
            if (std::abs(signed_sum) > c.max_signed) {
              c.max_signed = std::abs(signed_sum);
              c.signed_witness = j;
            }
            const double tel = fejer_hat(upper, x) - base;
            c.telescope_max = std::max(c.telescope_max, std::abs(tel));
            c.max_tel_err = std::max({c.max_tel_err, std::abs(signed_sum - tel), std::abs(abs_sum - tel)});
            c.max_i1 = std::max(c.max_i1, i1);
          }
        }
      },
      workers);

  std::vector<ScanCell> merged(max_blocks);
  for (const auto& p : partial)
    for (std::size_t k = 0; k < max_blocks; ++k) merged[k].merge(p[k]);
  return merged;
}

inline BoundReport report_from_cell(const LacunarySequence& seq, std::size_t n_blocks, const ScanCell& c) {
  BoundReport r;
  r.n1 = seq.term(1);
  r.alpha = seq.alpha();
  r.requested_alpha = seq.requested_alpha();
  r.n_blocks = n_blocks;
  r.paper_bound = geometric_tail_bound(seq.alpha());
  r.max_abs_sum = c.max_abs;
  r.witness_j = c.witness;
  r.sup_symbol = c.max_signed;
  r.symbol_witness_j = c.signed_witness;
  r.telescope_max = c.telescope_max;
  r.min_block_symbol = c.min_delta;
  r.max_telescope_error = c.max_tel_err;
  r.max_i1 = c.max_i1;
  r.coeff_sup = 1.0;
  r.pass["paper_bound"] = r.max_abs_sum <= r.paper_bound + kTentTolerance;
  r.pass["sharp_telescoping"] = r.max_abs_sum <= 1.0 + kTentTolerance;
  r.pass["nonnegative_blocks"] = r.min_block_symbol >= -kBlockSignTolerance;
  r.pass["telescope_identity"] = r.max_telescope_error <= kTelescopeTolerance;
  r.pass["i1_zero"] = r.max_i1 == 0.0;
  r.pass["domination"] = r.sup_symbol <= r.coeff_sup * r.max_abs_sum + kTentTolerance;
  return r;
}

inline void require_blocks(const LacunarySequence& seq, std::size_t n_blocks) {
  if (n_blocks < 1 || n_blocks >= seq.size())
    throw Error(ErrorCode::kIndexOutOfRange,
                "N = " + std::to_string(n_blocks) + " needs 1 <= N < " + std::to_string(seq.size()));
}

}  // namespace detail

/// Exhaustive check of max_j sum_k |Δ_k(j)| for every N in [1, max_blocks], in one frequency pass.
inline std::vector<BoundReport> check_uniform_bounds(const LacunarySequence& seq, std::size_t max_blocks) {
  detail::require_blocks(seq, max_blocks);
  const auto cells = detail::scan_frequencies(seq, max_blocks);
  std::vector<BoundReport> out;
  out.reserve(max_blocks);
  for (std::size_t n = 1; n <= max_blocks; ++n) out.push_back(detail::report_from_cell(seq, n, cells[n - 1]));
  return out;
}

/// Exhaustive check over |j| <= n_{N+1} with c ≡ 1.
inline BoundReport check_uniform_bound(const LacunarySequence& seq, std::size_t n_blocks) {
  return check_uniform_bounds(seq, n_blocks).back();
}

/// max of I(xi) over xi = t/samples_per_unit, 0 <= xi <= n_{N+1}; real-frequency reading of the bound.
inline double max_abs_sum_real(const LacunarySequence& seq, std::size_t n_blocks, std::size_t samples_per_unit) {
  detail::require_blocks(seq, n_blocks);
  if (samples_per_unit == 0) throw Error(ErrorCode::kInvalidArgument, "samples_per_unit must be positive");
  const auto top = static_cast<std::size_t>(seq.term(n_blocks + 1)) * samples_per_unit;
  double best = 0.0;
  for (std::size_t t = 0; t <= top; ++t) {
    const double xi = static_cast<double>(t) / static_cast<double>(samples_per_unit);
    best = std::max(best, abs_sum_profile(seq, n_blocks, xi).total());
  }
  return best;
}

inline double sup_norm(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s = std::max(s, std::abs(v));
  return s;
}

/// Builds m_N from `coeffs`, takes its exact sup, and checks
///   ||T_N f|| <= sup|m_N| ||f|| + 1e-9   and   ||T_N f|| <= ||c||_∞ C_sym ||f|| + 1e-9
/// for every signal.
inline BoundReport operator_bound_check(const LacunarySequence& seq, std::span<const double> coeffs,
                                        std::size_t n_blocks, std::span<const Signal> signals) {
  detail::require_blocks(seq, n_blocks);
  if (coeffs.size() < n_blocks)
    throw Error(ErrorCode::kLengthMismatch, "need " + std::to_string(n_blocks) + " coefficients");
  BoundReport r = check_uniform_bound(seq, n_blocks);
  const auto active = coeffs.first(n_blocks);
  r.coeff_sup = sup_norm(active);

  if (signals.empty()) {
    // Symbol-only check on a grid just wide enough for the support.
    const SpectralGrid grid(static_cast<std::size_t>(2 * seq.term(n_blocks + 1) + 1));
    const auto norm = operator_norm(build_multiplier(grid, seq, active, n_blocks));
    r.sup_symbol = norm.value;
    r.symbol_witness_j = norm.witness;
  } else {
    const auto& grid = signals.front().grid();
    const auto m = build_multiplier(grid, seq, active, n_blocks);
    const auto norm = operator_norm(m);
    r.sup_symbol = norm.value;
    r.symbol_witness_j = norm.witness;
    bool op_ok = true, final_ok = true;
    double worst = 0.0;
    for (const auto& f : signals) {
      if (!(f.grid() == grid)) throw Error(ErrorCode::kGridMismatch, "all signals must share one grid");
      const double fn = l2_norm(f);
      if (fn == 0.0) throw Error(ErrorCode::kZeroSignal, "operator check needs nonzero signals");
      const double tn = l2_norm(apply_multiplier(m, f));
      worst = std::max(worst, tn / fn);
      op_ok = op_ok && tn <= r.sup_symbol * fn + kTransformTolerance;
      final_ok = final_ok && tn <= r.coeff_sup * r.max_abs_sum * fn + kTransformTolerance;
    }
    r.worst_ratio = worst;
    r.signals_checked = signals.size();
    r.pass["operator_norm"] = op_ok;
    r.pass["final_inequality"] = final_ok;
  }
  r.pass["domination"] = r.sup_symbol <= r.coeff_sup * r.max_abs_sum + kTentTolerance;
  return r;
}

struct StrongTypeReport {
  std::size_t k_max = 0;
  double coeff_sup = 0.0;
  double c_sym = 0.0;
  double c_obs = 0.0;               // ||c||_∞ C_sym
  double empirical_constant = 0.0;  // max ||G_K f|| / ||f||
  double max_tail_bound = 0.0;      // max over signals of deg(f)/(n_{K}+1)
  std::vector<double> ratios;
  bool pass = false;
};

/// Truncated G = T_{K_max} on band-limited signals; checks ||G f|| <= ||c||_∞ C_sym ||f|| + 1e-9.
inline StrongTypeReport strong_type_22_check(const LacunarySequence& seq, std::span<const double> coeffs,
                                             std::size_t k_max, std::span<const Signal> signals) {
  detail::require_blocks(seq, k_max);
  if (coeffs.size() < k_max) throw Error(ErrorCode::kLengthMismatch, "need " + std::to_string(k_max) + " coefficients");
  if (signals.empty()) throw Error(ErrorCode::kInvalidArgument, "strong type check needs at least one signal");
  const auto& grid = signals.front().grid();
  const auto active = coeffs.first(k_max);
  const auto m = build_multiplier(grid, seq, active, k_max);

  StrongTypeReport r;
  r.k_max = k_max;
  r.coeff_sup = sup_norm(active);
  r.c_sym = check_uniform_bound(seq, k_max).max_abs_sum;
  r.c_obs = r.coeff_sup * r.c_sym;
  r.pass = true;
  const double tail_den = static_cast<double>(seq.term(k_max)) + 1.0;
  for (const auto& f : signals) {
    if (!(f.grid() == grid)) throw Error(ErrorCode::kGridMismatch, "all signals must share one grid");
    const double fn = l2_norm(f);
    if (fn == 0.0) throw Error(ErrorCode::kZeroSignal, "strong type check needs nonzero signals");
    const double gn = l2_norm(apply_multiplier(m, f));
    r.ratios.push_back(gn / fn);
    r.empirical_constant = std::max(r.empirical_constant, gn / fn);
    r.max_tail_bound = std::max(r.max_tail_bound, static_cast<double>(f.degree()) / tail_den);
    r.pass = r.pass && gn <= r.c_obs * fn + kTransformTolerance;
  }
  return r;
}

}  // namespace fejer

#endif  // FEJER_BOUNDS_HPP
