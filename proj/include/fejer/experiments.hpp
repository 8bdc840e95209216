/*
 * experiments.hpp - Monte Carlo checks of unconditional convergence.
 *
 * Random sign patterns ε_k drive the partial sums T_N^ε f and the Cauchy tails
 * sum_{k=M}^{M'} ε_k (σ_{n_{k+1}} f - σ_{n_k} f). For f of degree B every tail
 * symbol is bounded per frequency by |j|/(n_M+1), so
 *
 *   ||tail|| <= B/(n_M+1) ||f||
 *
 * independently of the signs. That Fejér-specific rate is what the studies
 * below compare against.
 *
 * All randomness flows from a 64-bit master seed; trial t uses
 * derive_seed(master, t), so results do not depend on thread scheduling.
 */
#ifndef FEJER_EXPERIMENTS_HPP
#define FEJER_EXPERIMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fejer/bounds.hpp"
#include "fejer/error.hpp"
#include "fejer/lacunary.hpp"
#include "fejer/parallel.hpp"
#include "fejer/spectral.hpp"

namespace fejer {

/// splitmix64 finalizer applied to master ^ index.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t z = (master ^ index) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// Signal corpus

namespace signal_kind {
struct Constant {};
struct PureMode {
  std::int64_t j = 0;
};
struct GaussianBump {
  double width = 0.5;
};
struct SquareWave {};
struct RandomBandlimited {
  std::int64_t band = 0;
  std::uint64_t seed = 0;
};
}  // namespace signal_kind

using SignalKind = std::variant<signal_kind::Constant, signal_kind::PureMode, signal_kind::GaussianBump,
                                signal_kind::SquareWave, signal_kind::RandomBandlimited>;

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline Signal single_mode(const SpectralGrid& grid, std::int64_t j) {
  if (std::abs(j) > grid.max_frequency())
    throw Error(ErrorCode::kAliasingRisk, "mode " + std::to_string(j) + " exceeds grid max frequency");
  std::vector<cplx> c(grid.size());
  c[grid.bin(j)] = 1.0;
  return Signal::from_coefficients(grid, std::move(c));
}

}  // namespace detail

inline Signal gen_signal(const SignalKind& kind, const SpectralGrid& grid) {
  using namespace signal_kind;
  return std::visit(
      detail::overloaded{
          [&](const Constant&) { return detail::single_mode(grid, 0); },
          [&](const PureMode& p) { return detail::single_mode(grid, p.j); },
          [&](const GaussianBump& g) {
            if (!(g.width > 0.0)) throw Error(ErrorCode::kInvalidArgument, "bump width must be positive");
            const double w2 = 2.0 * g.width * g.width;
            return Signal::from_function(grid, [w2](double x) { return cplx(std::exp(-x * x / w2)); });
          },
          [&](const SquareWave&) {
            return Signal::from_function(grid, [](double x) { return cplx(x >= 0.0 ? 1.0 : -1.0); });
          },
          [&](const RandomBandlimited& r) {
            if (r.band < 0 || r.band > grid.max_frequency())
              throw Error(ErrorCode::kAliasingRisk, "band " + std::to_string(r.band) + " exceeds grid max frequency");
            std::mt19937_64 rng(r.seed);
            std::normal_distribution<double> normal(0.0, 1.0);
            std::vector<cplx> c(grid.size());
            c[grid.bin(0)] = normal(rng);
            // Conjugate symmetry keeps the samples real.
            for (std::int64_t j = 1; j <= r.band; ++j) {
              const double re = normal(rng) * std::numbers::sqrt2 / 2.0;
              const double im = normal(rng) * std::numbers::sqrt2 / 2.0;
              c[grid.bin(j)] = cplx(re, im);
              c[grid.bin(-j)] = cplx(re, -im);
            }
            return Signal::from_coefficients(grid, std::move(c));
          },
      },
      kind);
}

// ---------------------------------------------------------------------------
// Sign patterns

enum class SignMode { kRademacher, kBox };

struct SignPattern {
  std::vector<double> values;
  std::uint64_t seed = 0;
};

/// Rademacher draws ±1 from the top bit; box draws uniform [-1, 1) from 53 bits.
inline SignPattern random_signs(std::size_t count, std::uint64_t seed, SignMode mode = SignMode::kRademacher) {
  if (count < 1) throw Error(ErrorCode::kInvalidArgument, "sign pattern needs at least one entry");
  std::mt19937_64 rng(seed);
  SignPattern p{std::vector<double>(count), seed};
  for (auto& v : p.values) {
    const std::uint64_t bits = rng();
    if (mode == SignMode::kRademacher)
      v = (bits >> 63) ? 1.0 : -1.0;
    else
      v = 2.0 * static_cast<double>(bits >> 11) * 0x1.0p-53 - 1.0;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Partial sums and tails

/// T_N^ε f; N = 0 is the empty sum.
inline Signal partial_sum(const Signal& f, const LacunarySequence& seq, const SignPattern& signs, std::size_t n_blocks,
                          OrderPolicy policy = OrderPolicy::kStrict) {
  if (n_blocks == 0) return Signal::zero(f.grid());
  if (policy == OrderPolicy::kGridRestricted) detail::require_no_nyquist(f);
  return apply_multiplier(build_multiplier(f.grid(), seq, signs.values, n_blocks, policy), f);
}

/// || sum_{k=first}^{last} ε_k Δ_k f ||. The tent symbols are evaluated at the
/// grid's frequencies for any kernel order (see OrderPolicy::kGridRestricted).
inline double tail_norm(const Signal& f, const LacunarySequence& seq, const SignPattern& signs, std::size_t first,
                        std::size_t last) {
  if (first < 1 || first > last || last >= seq.size())
    throw Error(ErrorCode::kIndexOutOfRange, "tail [" + std::to_string(first) + ", " + std::to_string(last) +
                                                 "] needs 1 <= M <= M' < " + std::to_string(seq.size()));
  if (signs.values.size() < last)
    throw Error(ErrorCode::kLengthMismatch, "sign pattern shorter than tail end " + std::to_string(last));
  detail::require_no_nyquist(f);
  const std::span<const double> eps(signs.values);
  const auto m = build_block_multiplier(f.grid(), seq, eps.subspan(first - 1, last + 1 - first), first, last,
                                        OrderPolicy::kGridRestricted);
  return l2_norm(apply_multiplier(m, f));
}

struct TailReport {
  std::size_t start = 0;
  std::size_t end = 0;
  std::int64_t n_start = 0;
  std::int64_t degree = 0;
  double signal_norm = 0.0;
  std::vector<double> trial_norms;
  double sup = 0.0;
  double analytic_bound = 0.0;  // degree/(n_start+1) ||f||
  bool pass = false;
};

/// Tails from every start M to the last block, each sampled over `trials`
/// Rademacher patterns. Trial t draws one pattern and reuses it for all starts.
inline std::vector<TailReport> convergence_study(const Signal& f, const LacunarySequence& seq, std::size_t trials,
                                                 std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (seq.size() < 2) throw Error(ErrorCode::kIndexOutOfRange, "convergence study needs at least one block");
  const std::size_t last = seq.size() - 1;
  const double fn = l2_norm(f);
  const std::int64_t deg = f.degree();

  // norms[t][M-1]
  std::vector<std::vector<double>> norms(trials, std::vector<double>(last));
  parallel_for(trials, [&](std::size_t t) {
    const auto signs = random_signs(last, derive_seed(seed, t), SignMode::kRademacher);
    for (std::size_t start = 1; start <= last; ++start) norms[t][start - 1] = tail_norm(f, seq, signs, start, last);
  });

  std::vector<TailReport> out;
  out.reserve(last);
  for (std::size_t start = 1; start <= last; ++start) {
    TailReport r;
    r.start = start;
    r.end = last;
    r.n_start = seq.term(start);
    r.degree = deg;
    r.signal_norm = fn;
    r.trial_norms.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
      r.trial_norms.push_back(norms[t][start - 1]);
      r.sup = std::max(r.sup, norms[t][start - 1]);
    }
    r.analytic_bound = static_cast<double>(deg) / (static_cast<double>(r.n_start) + 1.0) * fn;
    r.pass = r.sup <= r.analytic_bound + kTransformTolerance;
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parameter sweep

struct SweepConfig {
  std::vector<double> alphas;
  std::vector<std::size_t> n_values;
  std::size_t grid_size = 256;
  std::size_t trials = 8;
  std::uint64_t seed = 0;
  std::int64_t n1 = 1;
};

struct SweepRow {
  double alpha = 0.0;
  std::size_t n_blocks = 0;
  std::int64_t n1 = 0;
  double paper_bound = std::numeric_limits<double>::quiet_NaN();
  double max_abs_sum = std::numeric_limits<double>::quiet_NaN();
  double sup_symbol = std::numeric_limits<double>::quiet_NaN();
  std::int64_t witness_j = 0;
  double worst_ratio = std::numeric_limits<double>::quiet_NaN();
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  bool flagged = false;
  std::string note;
};

inline constexpr const char* kSweepCsvHeader = "alpha,N,n1,paper_bound,max_abs_sum,sup_symbol,witness_j,worst_ratio,trials,seed";

/// Band-limited corpus shared by every sweep cell.
inline std::vector<Signal> sweep_corpus(const SpectralGrid& grid, std::uint64_t seed) {
  const std::int64_t top = grid.max_frequency();
  return {
      gen_signal(signal_kind::RandomBandlimited{std::min<std::int64_t>(32, top), derive_seed(seed, 0xC0)}, grid),
      gen_signal(signal_kind::RandomBandlimited{std::min<std::int64_t>(8, top), derive_seed(seed, 0xC1)}, grid),
      gen_signal(signal_kind::PureMode{std::min<std::int64_t>(3, top)}, grid),
  };
}

inline SweepRow sweep_cell(double alpha, std::size_t n_blocks, const SweepConfig& cfg,
                           std::span<const Signal> corpus) {
  SweepRow row;
  row.alpha = alpha;
  row.n_blocks = n_blocks;
  row.n1 = cfg.n1;
  row.trials = cfg.trials;
  row.seed = cfg.seed;
  try {
    const auto seq = generate(cfg.n1, alpha, n_blocks + 1);
    const auto report = check_uniform_bound(seq, n_blocks);
    row.paper_bound = report.paper_bound;
    row.max_abs_sum = report.max_abs_sum;
    row.sup_symbol = report.sup_symbol;
    row.witness_j = report.witness_j;

    std::vector<double> worst(cfg.trials, 0.0);
    std::vector<char> ok(cfg.trials, 1);
    parallel_for(cfg.trials, [&](std::size_t t) {
      const auto signs = random_signs(n_blocks, derive_seed(cfg.seed, t), SignMode::kRademacher);
      for (const auto& f : corpus) {
        const double fn = l2_norm(f);
        const double tn = l2_norm(partial_sum(f, seq, signs, n_blocks, OrderPolicy::kGridRestricted));
        worst[t] = std::max(worst[t], tn / fn);
        if (tn > report.max_abs_sum * fn + kTransformTolerance) ok[t] = 0;
      }
    });
    row.worst_ratio = *std::max_element(worst.begin(), worst.end());

    bool tails_ok = true;
    for (const auto& f : corpus)
      for (const auto& tr : convergence_study(f, seq, cfg.trials, cfg.seed)) tails_ok = tails_ok && tr.pass;

    std::string why;
    if (!report.passed()) why += "bound checks failed;";
    if (std::find(ok.begin(), ok.end(), 0) != ok.end()) why += "operator inequality failed;";
    if (!tails_ok) why += "tail exceeded analytic bound;";
    row.flagged = !why.empty();
    row.note = why;
  } catch (const std::exception& e) {
    row.flagged = true;
    row.note = e.what();
  }
  return row;
}

/// One row per (alpha, N) in input order. Failing cells are flagged, never fatal.
inline std::vector<SweepRow> sweep(const SweepConfig& cfg) {
  for (double a : cfg.alphas)
    if (!(a > 1.0)) throw Error(ErrorCode::kInvalidAlpha, "every sweep alpha must be > 1");
  const SpectralGrid grid(cfg.grid_size);
  const auto corpus = sweep_corpus(grid, cfg.seed);
  std::vector<SweepRow> rows;
  rows.reserve(cfg.alphas.size() * cfg.n_values.size());
  for (double a : cfg.alphas)
    for (std::size_t n : cfg.n_values) rows.push_back(sweep_cell(a, n, cfg, corpus));
  return rows;
}

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += format_double(r.alpha) + ',' + std::to_string(r.n_blocks) + ',' + std::to_string(r.n1) + ',' +
           format_double(r.paper_bound) + ',' + format_double(r.max_abs_sum) + ',' + format_double(r.sup_symbol) +
           ',' + std::to_string(r.witness_j) + ',' + format_double(r.worst_ratio) + ',' + std::to_string(r.trials) +
           ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

}  // namespace fejer

#endif  // FEJER_EXPERIMENTS_HPP
