/*
 * lacunary.hpp - lacunary integer sequences n_1 < n_2 < ... with
 * n_{k+1}/n_k >= alpha > 1, and the geometric constants that bound sums over
 * their tails.
 *
 * Indexing: terms are addressed 1-based through term(k) to match the usual
 * n_k notation; terms() exposes the underlying 0-based storage.
 */
#ifndef FEJER_LACUNARY_HPP
#define FEJER_LACUNARY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fejer/error.hpp"

namespace fejer {

/// Ratios within this distance of 1 are not accepted as lacunary.
inline constexpr double kLacunaryRatioSlack = 1e-12;

class LacunarySequence {
 public:
  /// Validates `terms`; alpha becomes the smallest consecutive ratio.
  static LacunarySequence validate(std::vector<std::int64_t> terms);

  std::span<const std::int64_t> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// n_k for 1 <= k <= size().
  std::int64_t term(std::size_t k) const {
    if (k < 1 || k > terms_.size())
      throw Error(ErrorCode::kIndexOutOfRange,
                  "term index " + std::to_string(k) + " outside [1, " + std::to_string(terms_.size()) + "]");
    return terms_[k - 1];
  }

  /// Certified ratio: min_k n_{k+1}/n_k (infinity for a single term).
  double alpha() const noexcept { return alpha_; }

  /// The ratio the sequence was generated for, if any; otherwise alpha().
  double requested_alpha() const noexcept { return requested_alpha_; }

 private:
  LacunarySequence(std::vector<std::int64_t> terms, double alpha)
      : terms_(std::move(terms)), alpha_(alpha), requested_alpha_(alpha) {}

  std::vector<std::int64_t> terms_;
  double alpha_;
  double requested_alpha_;

  friend LacunarySequence generate(std::int64_t, double, std::size_t);
};

inline LacunarySequence LacunarySequence::validate(std::vector<std::int64_t> terms) {
  if (terms.empty()) throw Error(ErrorCode::kEmptySequence, "lacunary sequence needs at least one term");
  for (auto t : terms)
    if (t < 1) throw Error(ErrorCode::kNonPositiveTerm, "term " + std::to_string(t) + " is not positive");
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < terms.size(); ++i)
    alpha = std::min(alpha, static_cast<double>(terms[i]) / static_cast<double>(terms[i - 1]));
  if (!(alpha > 1.0 + kLacunaryRatioSlack))
    throw Error(ErrorCode::kNotLacunary, "minimum consecutive ratio " + std::to_string(alpha) + " is not > 1");
  return LacunarySequence(std::move(terms), alpha);
}

inline LacunarySequence validate(std::vector<std::int64_t> terms) {
  return LacunarySequence::validate(std::move(terms));
}

/// Same as validate() but also demands alpha >= min_alpha.
inline LacunarySequence validate(std::vector<std::int64_t> terms, double min_alpha) {
  auto seq = LacunarySequence::validate(std::move(terms));
  if (seq.alpha() < min_alpha)
    throw Error(ErrorCode::kNotLacunary,
                "certified ratio " + std::to_string(seq.alpha()) + " below required " + std::to_string(min_alpha));
  return seq;
}

/// n_1 = n1, n_{k+1} = max(n_k + 1, ceil(n_k * alpha)).
inline LacunarySequence generate(std::int64_t n1, double alpha, std::size_t count) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::kInvalidAlpha, "alpha must be a finite value > 1");
  if (n1 < 1) throw Error(ErrorCode::kNonPositiveTerm, "n1 must be positive");
  if (count < 1) throw Error(ErrorCode::kInvalidArgument, "count must be positive");

  // Terms stay below 2^53 so every ratio and tent value is computed from exact doubles.
  constexpr double kMaxTerm = 9007199254740992.0;
  std::vector<std::int64_t> terms;
  terms.reserve(count);
  terms.push_back(n1);
  for (std::size_t k = 1; k < count; ++k) {
    const double next = std::ceil(static_cast<double>(terms.back()) * alpha);
    if (!(next < kMaxTerm))
      throw Error(ErrorCode::kInvalidArgument, "generated term exceeds 2^53 at index " + std::to_string(k + 1));
    terms.push_back(std::max(terms.back() + 1, static_cast<std::int64_t>(next)));
  }
  auto seq = LacunarySequence::validate(std::move(terms));
  seq.requested_alpha_ = alpha;
  return seq;
}

/// 2 alpha / (alpha - 1): the bound on sum_k |K̂_{n_{k+1}} - K̂_{n_k}|.
inline double geometric_tail_bound(double alpha) {
  if (!(alpha > 1.0)) throw Error(ErrorCode::kInvalidAlpha, "alpha must be > 1");
  if (std::isinf(alpha)) return 2.0;
  return 2.0 * alpha / (alpha - 1.0);
}

/// sum_{k=k0}^{last} n_{k0}/n_{k+shift}; shift is 0 or 1. Bounded by alpha/(alpha-1).
inline double geometric_ratio_sum(const LacunarySequence& seq, std::size_t k0, std::size_t last,
                                  std::size_t shift = 0) {
  if (k0 < 1 || k0 > last || last + shift > seq.size())
    throw Error(ErrorCode::kIndexOutOfRange, "geometric sum range outside the sequence");
  const double anchor = static_cast<double>(seq.term(k0));
  double sum = 0.0;
  for (std::size_t k = k0; k <= last; ++k) sum += anchor / static_cast<double>(seq.term(k + shift));
  return sum;
}

}  // namespace fejer

#endif  // FEJER_LACUNARY_HPP
