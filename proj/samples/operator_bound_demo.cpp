// Builds T_N for random signs on a dyadic sequence and compares ||T_N f|| / ||f||
// with the exact symbol sup and the lacunary constant 2α/(α-1).
#include <cstdio>

#include "fejer/fejer.hpp"

int main() {
  using namespace fejer;
  const SpectralGrid grid(1024);
  const auto seq = generate(1, 2.0, 9);
  const std::size_t n_blocks = 8;

  const auto f = gen_signal(signal_kind::RandomBandlimited{64, 7}, grid);
  const auto uniform = check_uniform_bound(seq, n_blocks);
  std::printf("alpha %.3f  paper bound %.3f  C_sym %.6f (witness j = %lld)\n", seq.alpha(), uniform.paper_bound,
              uniform.max_abs_sum, static_cast<long long>(uniform.witness_j));

  for (std::uint64_t t = 0; t < 5; ++t) {
    const auto signs = random_signs(n_blocks, derive_seed(42, t));
    const auto m = build_multiplier(grid, seq, signs.values, n_blocks);
    const double ratio = l2_norm(apply_multiplier(m, f)) / l2_norm(f);
    std::printf("trial %llu  ||T f||/||f|| = %.6f  sup|m| = %.6f\n", static_cast<unsigned long long>(t), ratio,
                operator_norm(m).value);
  }
  return 0;
}
