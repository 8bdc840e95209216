#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fejer/experiments.hpp"
#include "oracles.hpp"

using namespace fejer;

TEST(GenSignal, ConstantAndPureMode) {
  const SpectralGrid grid(64);
  const auto one = gen_signal(signal_kind::Constant{}, grid);
  EXPECT_EQ(one.coefficient(0), cplx(1.0));
  EXPECT_EQ(one.degree(), 0);
  const auto e5 = gen_signal(signal_kind::PureMode{5}, grid);
  for (std::int64_t j = -31; j <= 32; ++j) EXPECT_EQ(e5.coefficient(j), cplx(j == 5 ? 1.0 : 0.0));
  EXPECT_EQ(e5.degree(), 5);
  EXPECT_THROW(gen_signal(signal_kind::PureMode{32}, grid), Error);
}

TEST(GenSignal, RandomBandlimitedIsDeterministicRealAndBandLimited) {
  const SpectralGrid grid(128);
  const auto a = gen_signal(signal_kind::RandomBandlimited{16, 42}, grid);
  const auto b = gen_signal(signal_kind::RandomBandlimited{16, 42}, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ASSERT_EQ(a.samples()[i], b.samples()[i]);
    ASSERT_LT(std::abs(a.samples()[i].imag()), 1e-13);
  }
  EXPECT_EQ(a.degree(), 16);
  const auto c = gen_signal(signal_kind::RandomBandlimited{16, 43}, grid);
  EXPECT_GT(max_sample_distance(a, c), 0.1);
  try {
    gen_signal(signal_kind::RandomBandlimited{64, 1}, grid);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAliasingRisk);
  }
}

TEST(GenSignal, BumpAndSquareWave) {
  const SpectralGrid grid(256);
  const auto bump = gen_signal(signal_kind::GaussianBump{0.3}, grid);
  EXPECT_NEAR(bump.samples()[grid.size() / 2].real(), 1.0, 1e-15);  // x = 0
  const auto sq = gen_signal(signal_kind::SquareWave{}, grid);
  // Odd square wave: f̂(1) = 2/(iπ) up to discretization
  EXPECT_NEAR(std::abs(sq.coefficient(1)), 2.0 / std::numbers::pi, 1e-3);
  EXPECT_THROW(gen_signal(signal_kind::GaussianBump{0.0}, grid), Error);
}

TEST(RandomSigns, CodomainAndDeterminism) {
  const auto p = random_signs(4, 17);
  for (double v : p.values) EXPECT_TRUE(v == 1.0 || v == -1.0);
  EXPECT_EQ(p.seed, 17u);
  EXPECT_EQ(random_signs(50, 9).values, random_signs(50, 9).values);
  EXPECT_NE(random_signs(50, 9).values, random_signs(50, 10).values);
  const auto box = random_signs(1000, 5, SignMode::kBox);
  for (double v : box.values) {
    EXPECT_GE(v, -1.0);
    EXPECT_LT(v, 1.0);
  }
  EXPECT_THROW(random_signs(0, 1), Error);
}

TEST(RandomSigns, MeanIsNearZero) {
  const auto p = random_signs(100000, 2021);
  double sum = 0.0;
  for (double v : p.values) sum += v;
  EXPECT_LE(std::abs(sum / 1e5), 0.02);
}

TEST(DeriveSeed, DistinctPerTrial) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 1000; ++t) seen.insert(derive_seed(7, t));
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(PartialSum, AllPlusTelescopes) {
  const SpectralGrid grid(1024);
  const auto seq = generate(1, 2.0, 9);  // 1..256
  SignPattern plus{std::vector<double>(8, 1.0), 0};
  const auto f = gen_signal(signal_kind::PureMode{7}, grid);
  const cplx factor = fejer_hat(256, 7.0) - fejer_hat(1, 7.0);
  EXPECT_LT(max_sample_distance(partial_sum(f, seq, plus, 8), factor * f), 1e-13);
}

TEST(PartialSum, EmptySumAndNegation) {
  const SpectralGrid grid(512);
  const auto seq = generate(1, 2.0, 8);
  const auto f = gen_signal(signal_kind::RandomBandlimited{40, 3}, grid);
  const auto signs = random_signs(7, 11);
  EXPECT_EQ(l2_norm(partial_sum(f, seq, signs, 0)), 0.0);
  SignPattern neg = signs;
  for (auto& v : neg.values) v = -v;
  const auto a = partial_sum(f, seq, signs, 7);
  const auto b = partial_sum(f, seq, neg, 7);
  for (std::size_t i = 0; i < grid.size(); ++i) ASSERT_EQ(a.samples()[i], -b.samples()[i]);
}

TEST(TailNorm, SingleBlockOnPureMode) {
  const SpectralGrid grid(256);
  const auto seq = generate(4, 2.0, 7);  // 4, 8, ..., 256
  const auto f = gen_signal(signal_kind::PureMode{3}, grid);
  const auto signs = random_signs(6, 1);
  for (std::size_t m = 1; m <= 6; ++m) {
    const double nm = static_cast<double>(seq.term(m));
    const double nm1 = static_cast<double>(seq.term(m + 1));
    const double expected = 3.0 * (1.0 / (nm + 1.0) - 1.0 / (nm1 + 1.0)) * l2_norm(f);
    EXPECT_NEAR(tail_norm(f, seq, signs, m, m), expected, 1e-13) << m;
  }
}

TEST(TailNorm, ConstantHasNoTail) {
  const SpectralGrid grid(64);
  const auto seq = generate(1, 2.0, 6);
  const auto one = gen_signal(signal_kind::Constant{}, grid);
  EXPECT_EQ(tail_norm(one, seq, random_signs(5, 2), 1, 5), 0.0);
}

TEST(TailNorm, BoundedByBandOverStart) {
  std::mt19937_64 rng(13);
  const SpectralGrid grid(512);
  const auto seq = generate(1, 2.0, 12);  // beyond the grid at the top: grid-restricted tents
  const auto f = gen_signal(signal_kind::RandomBandlimited{24, 99}, grid);
  for (int trial = 0; trial < 40; ++trial) {
    const auto signs = random_signs(11, rng(), trial % 2 ? SignMode::kBox : SignMode::kRademacher);
    const std::size_t m = 1 + rng() % 11;
    const std::size_t last = m + rng() % (12 - m);
    const double bound = 24.0 / (static_cast<double>(seq.term(m)) + 1.0) * l2_norm(f);
    ASSERT_LE(tail_norm(f, seq, signs, m, last), bound + 1e-9);
  }
}

TEST(TailNorm, TriangleInequalityOnSplits) {
  std::mt19937_64 rng(17);
  const SpectralGrid grid(512);
  const auto seq = generate(1, 1.7, 12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = gen_signal(signal_kind::RandomBandlimited{50, rng()}, grid);
    const auto signs = random_signs(11, rng());
    const std::size_t a = 1 + rng() % 9;
    const std::size_t mid = a + rng() % (10 - a);
    const std::size_t b = mid + 1 + rng() % (11 - mid);
    ASSERT_LE(tail_norm(f, seq, signs, a, b),
              tail_norm(f, seq, signs, a, mid) + tail_norm(f, seq, signs, mid + 1, b) + 1e-10);
  }
}

TEST(TailNorm, Errors) {
  const SpectralGrid grid(64);
  const auto seq = generate(1, 2.0, 6);
  const auto f = gen_signal(signal_kind::Constant{}, grid);
  EXPECT_THROW(tail_norm(f, seq, random_signs(5, 1), 0, 2), Error);
  EXPECT_THROW(tail_norm(f, seq, random_signs(5, 1), 3, 2), Error);
  EXPECT_THROW(tail_norm(f, seq, random_signs(5, 1), 1, 6), Error);
  EXPECT_THROW(tail_norm(f, seq, random_signs(2, 1), 1, 4), Error);
  // Energy at the unmatched Nyquist mode cannot be attributed to a frequency sign.
  std::vector<cplx> c(64);
  c[32] = 1.0;
  const auto nyq = Signal::from_coefficients(grid, c);
  try {
    tail_norm(nyq, seq, random_signs(5, 1), 1, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAliasingRisk);
  }
}

TEST(ConvergenceStudy, DyadicSupHalvesAndRespectsBound) {
  const SpectralGrid grid(1024);
  const auto seq = generate(1, 2.0, 12);
  const auto f = gen_signal(signal_kind::RandomBandlimited{16, 5}, grid);
  const auto reports = convergence_study(f, seq, 40, 123);
  ASSERT_EQ(reports.size(), 11u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.pass) << r.start;
    EXPECT_EQ(r.trial_norms.size(), 40u);
    EXPECT_NEAR(r.analytic_bound, 16.0 / (static_cast<double>(r.n_start) + 1.0) * l2_norm(f), 1e-12);
  }
  for (std::size_t i = 5; i + 1 < reports.size(); ++i) {
    // Once n_M exceeds the band, each step shrinks the sup by roughly half.
    const double ratio = reports[i + 1].sup / reports[i].sup;
    EXPECT_GT(ratio, 0.25) << i;
    EXPECT_LT(ratio, 0.75) << i;
  }
}

TEST(ConvergenceStudy, MoreTrialsNeverLowerTheSup) {
  const SpectralGrid grid(512);
  const auto seq = generate(1, 2.0, 9);
  const auto f = gen_signal(signal_kind::RandomBandlimited{20, 8}, grid);
  const auto one = convergence_study(f, seq, 1, 77);
  const auto many = convergence_study(f, seq, 100, 77);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_GE(many[i].sup, one[i].sup);
    EXPECT_EQ(many[i].trial_norms[0], one[i].trial_norms[0]);
  }
}

TEST(ConvergenceStudy, ZeroSignalHasZeroTails) {
  const SpectralGrid grid(128);
  for (const auto& r : convergence_study(Signal::zero(grid), generate(1, 2.0, 6), 5, 1)) {
    EXPECT_EQ(r.sup, 0.0);
    EXPECT_TRUE(r.pass);
  }
}

TEST(ConvergenceStudy, IndependentOfThreadCount) {
  const SpectralGrid grid(256);
  const auto seq = generate(1, 1.6, 10);
  const auto f = gen_signal(signal_kind::RandomBandlimited{30, 4}, grid);
  setenv("FEJER_THREADS", "1", 1);
  const auto a = convergence_study(f, seq, 24, 9);
  setenv("FEJER_THREADS", "4", 1);
  const auto b = convergence_study(f, seq, 24, 9);
  unsetenv("FEJER_THREADS");
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].trial_norms, b[i].trial_norms);
}

TEST(Sweep, RowsInvariantsAndDeterminism) {
  SweepConfig cfg;
  cfg.alphas = {1.5, 2.0, 3.0};
  cfg.n_values = {1, 3, 6};
  cfg.grid_size = 128;
  cfg.trials = 6;
  cfg.seed = 5;
  const auto rows = sweep(cfg);
  ASSERT_EQ(rows.size(), 9u);
  for (const auto& r : rows) {
    EXPECT_FALSE(r.flagged) << r.note;
    EXPECT_LE(r.max_abs_sum, r.paper_bound);
    EXPECT_LE(r.worst_ratio, r.max_abs_sum + 1e-9);
    if (r.alpha == 2.0) {
      EXPECT_DOUBLE_EQ(r.paper_bound, 4.0);
    }
  }
  EXPECT_EQ(sweep_csv(rows), sweep_csv(sweep(cfg)));
  EXPECT_EQ(sweep_csv(rows).substr(0, sweep_csv(rows).find('\n')), kSweepCsvHeader);
}

TEST(Sweep, FailingCellIsFlaggedNotFatal) {
  SweepConfig cfg;
  cfg.alphas = {2.0};
  cfg.n_values = {0, 2};  // N = 0 has no blocks
  cfg.grid_size = 64;
  cfg.trials = 2;
  const auto rows = sweep(cfg);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].flagged);
  EXPECT_FALSE(rows[1].flagged);
  EXPECT_NE(sweep_csv(rows).find("nan"), std::string::npos);
  cfg.alphas = {1.0};
  EXPECT_THROW(sweep(cfg), Error);
}
