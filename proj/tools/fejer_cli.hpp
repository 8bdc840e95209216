/*
 * fejer_cli.hpp - command-line front end.
 *
 *   fejer kernel   --n N --M M                tabulate K_n and its coefficients
 *   fejer bound    --n1 A --alpha R --N N     uniform bound report
 *   fejer converge --M M --alpha R ...        tail-norm study on a band-limited corpus
 *   fejer sweep    CONFIG.json                parameter sweep to CSV
 *
 * Global flags: --seed, --out, --format csv|json. Exit codes: 0 all checks
 * pass, 1 a numerical check failed, 2 usage or configuration error.
 */
#ifndef FEJER_TOOLS_FEJER_CLI_HPP
#define FEJER_TOOLS_FEJER_CLI_HPP

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fejer/fejer.hpp"
#include "fejer/report_json.hpp"

namespace fejer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::size_t grid_size = 0;
  std::int64_t n1 = 1;
  double alpha = 2.0;
  std::size_t n_blocks = 10;
  std::int64_t order = 8;
  std::size_t length = 16;
  std::int64_t band = 32;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  std::string out;  // empty: standard output
  std::string format;
  std::string config_path;
};

/// Thrown for configuration problems detected by the CLI itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require_grid_size(std::size_t m) {
  if (m < (std::size_t{1} << 4) || m > (std::size_t{1} << 22) || (m & (m - 1)) != 0)
    throw UsageError("--M must be a power of two between 2^4 and 2^22, got " + std::to_string(m));
}

/// Writes to cfg.out, or to `fallback` when no path was given.
inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& fallback) {
  if (cfg.out.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + cfg.out);
  file << text;
  if (!file) throw UsageError("failed writing " + cfg.out);
}

inline void emit_to(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + path);
  file << text;
}

// ---------------------------------------------------------------------------

inline int cmd_kernel(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_grid_size(cfg.grid_size);
  const SpectralGrid grid(cfg.grid_size);
  const std::int64_t n = cfg.order;
  if (n < 0) throw UsageError("--n must be >= 0");
  if (n > grid.max_frequency())
    throw Error(ErrorCode::kAliasingRisk,
                "order " + std::to_string(n) + " exceeds M/2 - 1 = " + std::to_string(grid.max_frequency()));

  const std::size_t m = grid.size();
  std::vector<double> k_sum(m), k_closed(m);
  std::vector<cplx> samples(m);
  double space_err = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = grid.point(i);
    k_sum[i] = eval_kernel_sum(n, x);
    k_closed[i] = eval_kernel_closed(n, x);
    samples[i] = k_sum[i];
    space_err = std::max(space_err, std::abs(k_sum[i] - k_closed[i]));
  }
  const auto kernel = Signal::from_samples(grid, std::move(samples));
  double coef_err = 0.0;
  for (std::int64_t j = -grid.max_frequency(); j <= grid.max_frequency(); ++j)
    coef_err = std::max(coef_err, std::abs(kernel.coefficient(j) - cplx(fejer_hat(n, static_cast<double>(j)))));

  const bool ok = coef_err <= kTransformTolerance && space_err <= 1e-10 * static_cast<double>(n + 1);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["M"] = m;
    auto& space = j["space"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m; ++i) space.push_back({{"x", grid.point(i)}, {"K_sum", k_sum[i]}, {"K_closed", k_closed[i]}});
    auto& coefs = j["coefficients"] = nlohmann::ordered_json::array();
    for (std::int64_t f = -grid.max_frequency(); f <= grid.max_frequency(); ++f)
      coefs.push_back({{"j", f}, {"coef", kernel.coefficient(f).real()}, {"tent", fejer_hat(n, static_cast<double>(f))}});
    j["max_coef_error"] = coef_err;
    j["max_space_error"] = space_err;
    j["pass"] = ok;
    emit(cfg, j.dump(2) + "\n", out);
  } else {
    std::string space = "x,K_sum,K_closed\n";
    for (std::size_t i = 0; i < m; ++i)
      space += format_double(grid.point(i)) + ',' + format_double(k_sum[i]) + ',' + format_double(k_closed[i]) + '\n';
    std::string coefs = "j,coef,tent\n";
    for (std::int64_t f = -grid.max_frequency(); f <= grid.max_frequency(); ++f)
      coefs += std::to_string(f) + ',' + format_double(kernel.coefficient(f).real()) + ',' +
               format_double(fejer_hat(n, static_cast<double>(f))) + '\n';
    if (cfg.out.empty()) {
      out << space << '\n' << coefs;
    } else {
      emit_to(cfg.out, space);
      emit_to(cfg.out + ".coef.csv", coefs);
    }
  }
  if (!ok) {
    err << "kernel check failed: max coefficient error " << coef_err << ", max space error " << space_err << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}

inline std::string bound_csv(const BoundReport& r) {
  std::string s = "alpha,N,n1,paper_bound,max_abs_sum,sup_symbol,witness_j,telescope_max,pass\n";
  s += format_double(r.alpha) + ',' + std::to_string(r.n_blocks) + ',' + std::to_string(r.n1) + ',' +
       format_double(r.paper_bound) + ',' + format_double(r.max_abs_sum) + ',' + format_double(r.sup_symbol) + ',' +
       std::to_string(r.witness_j) + ',' + format_double(r.telescope_max) + ',' + (r.passed() ? "true" : "false") +
       '\n';
  return s;
}

inline int cmd_bound(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!(cfg.alpha > 1.0)) throw Error(ErrorCode::kInvalidAlpha, "--alpha must be > 1");
  if (cfg.n_blocks < 1) throw UsageError("--N must be >= 1");
  const auto seq = generate(cfg.n1, cfg.alpha, cfg.n_blocks + 1);
  const auto report = check_uniform_bound(seq, cfg.n_blocks);
  emit(cfg, cfg.format == "csv" ? bound_csv(report) : to_json(report).dump(2) + "\n", out);
  if (!report.passed()) {
    for (const auto& [name, ok] : report.pass)
      if (!ok) err << "bound check failed: " << name << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}

inline int cmd_converge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_grid_size(cfg.grid_size);
  if (cfg.length < 2) throw UsageError("--length must be >= 2");
  if (cfg.trials < 1) throw UsageError("--trials must be >= 1");
  const SpectralGrid grid(cfg.grid_size);
  const auto seq = generate(cfg.n1, cfg.alpha, cfg.length);

  struct Named {
    std::string name;
    Signal signal;
  };
  const std::vector<Named> corpus = {
      {"random_bandlimited", gen_signal(signal_kind::RandomBandlimited{cfg.band, cfg.seed}, grid)},
      {"pure_mode", gen_signal(signal_kind::PureMode{cfg.band}, grid)},
      {"constant", gen_signal(signal_kind::Constant{}, grid)},
  };

  bool ok = true;
  std::string csv = "signal,start,end,n_start,sup_tail_norm,analytic_bound,signal_norm,trials,pass\n";
  nlohmann::ordered_json json = nlohmann::ordered_json::array();
  for (const auto& [name, f] : corpus) {
    for (const auto& r : convergence_study(f, seq, cfg.trials, cfg.seed)) {
      ok = ok && r.pass;
      csv += name + ',' + std::to_string(r.start) + ',' + std::to_string(r.end) + ',' + std::to_string(r.n_start) +
             ',' + format_double(r.sup) + ',' + format_double(r.analytic_bound) + ',' + format_double(r.signal_norm) +
             ',' + std::to_string(cfg.trials) + ',' + (r.pass ? "true" : "false") + '\n';
      auto j = to_json(r);
      j["signal"] = name;
      json.push_back(std::move(j));
    }
  }
  emit(cfg, cfg.format == "json" ? json.dump(2) + "\n" : csv, out);
  if (!ok) {
    err << "a tail norm exceeded its analytic bound\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

/// Parses the sweep JSON; `seed_override` replaces the file's seed when set.
inline SweepConfig load_sweep_config(const std::string& text, std::optional<std::uint64_t> seed_override) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed sweep config: ") + e.what());
  }
  SweepConfig cfg;
  try {
    if (!j.is_object()) throw UsageError("sweep config must be a JSON object");
    cfg.alphas = j.at("alphas").get<std::vector<double>>();
    cfg.n_values = j.at("Ns").get<std::vector<std::size_t>>();
    cfg.grid_size = j.at("M").get<std::size_t>();
    cfg.trials = j.at("trials").get<std::size_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("n1")) cfg.n1 = j.at("n1").get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("invalid sweep config: ") + e.what());
  }
  if (seed_override) cfg.seed = *seed_override;
  require_grid_size(cfg.grid_size);
  if (cfg.alphas.empty() || cfg.n_values.empty()) throw UsageError("alphas and Ns must be nonempty");
  if (cfg.trials < 1) throw UsageError("trials must be >= 1");
  if (cfg.n1 < 1) throw UsageError("n1 must be positive");
  for (double a : cfg.alphas)
    if (!(a > 1.0)) throw Error(ErrorCode::kInvalidAlpha, "every alpha must be > 1");
  for (auto n : cfg.n_values)
    if (n < 1) throw UsageError("every N must be >= 1");
  return cfg;
}

inline int cmd_sweep(const RunConfig& cfg, std::optional<std::uint64_t> seed_override, std::ostream& out,
                     std::ostream& err) {
  std::ifstream in(cfg.config_path, std::ios::binary);
  if (!in) throw UsageError("cannot read sweep config " + cfg.config_path);
  std::stringstream text;
  text << in.rdbuf();
  const auto sweep_cfg = load_sweep_config(text.str(), seed_override);
  const auto rows = sweep(sweep_cfg);

  std::string body;
  if (cfg.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json j;
      j["alpha"] = r.alpha;
      j["N"] = r.n_blocks;
      j["n1"] = r.n1;
      j["paper_bound"] = r.paper_bound;
      j["max_abs_sum"] = r.max_abs_sum;
      j["sup_symbol"] = r.sup_symbol;
      j["witness_j"] = r.witness_j;
      j["worst_ratio"] = r.worst_ratio;
      j["trials"] = r.trials;
      j["seed"] = r.seed;
      j["flagged"] = r.flagged;
      j["note"] = r.note;
      arr.push_back(std::move(j));
    }
    body = arr.dump(2) + "\n";
  } else {
    body = sweep_csv(rows);
  }
  emit(cfg, body, out);

  bool flagged = false;
  for (const auto& r : rows) {
    if (!r.flagged) continue;
    flagged = true;
    err << "flagged row alpha=" << r.alpha << " N=" << r.n_blocks << ": " << r.note << '\n';
  }
  return flagged ? kExitCheckFailed : kExitOk;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Fejér kernel block differences: bounds, multipliers and convergence studies", "fejer"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Master seed (u64)");
  app.add_option("--out", cfg.out, "Output path (default: stdout)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* kernel = app.add_subcommand("kernel", "Tabulate K_n in space and its Fourier coefficients against the tent");
  kernel->add_option("--n", cfg.order, "Kernel order")->required();
  kernel->add_option("--M", cfg.grid_size, "Grid size (power of two)")->required();

  auto* bound = app.add_subcommand("bound", "Check max_j sum_k |Δ_k(j)| against 2α/(α-1)");
  bound->add_option("--n1", cfg.n1, "First term")->required();
  bound->add_option("--alpha", cfg.alpha, "Lacunary ratio (> 1)")->required();
  bound->add_option("--N", cfg.n_blocks, "Number of blocks")->required();

  auto* converge = app.add_subcommand("converge", "Tail-norm study under random signs");
  cfg.grid_size = 4096;
  converge->add_option("--M", cfg.grid_size, "Grid size (power of two)")->capture_default_str();
  converge->add_option("--n1", cfg.n1, "First term")->capture_default_str();
  converge->add_option("--alpha", cfg.alpha, "Lacunary ratio (> 1)")->capture_default_str();
  converge->add_option("--length", cfg.length, "Sequence length")->capture_default_str();
  converge->add_option("--B", cfg.band, "Band limit of the corpus")->capture_default_str();
  converge->add_option("--trials", cfg.trials, "Sign patterns per tail")->capture_default_str();

  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep from a JSON config");
  sweep_cmd->add_option("config", cfg.config_path, "JSON config {alphas, Ns, M, trials, seed}")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (seed) cfg.seed = *seed;

  try {
    if (kernel->parsed()) {
      if (cfg.format.empty()) cfg.format = "csv";
      return cmd_kernel(cfg, out, err);
    }
    if (bound->parsed()) {
      if (cfg.format.empty()) cfg.format = "json";
      return cmd_bound(cfg, out, err);
    }
    if (converge->parsed()) {
      if (cfg.format.empty()) cfg.format = "csv";
      return cmd_converge(cfg, out, err);
    }
    if (cfg.format.empty()) cfg.format = "csv";
    return cmd_sweep(cfg, seed, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kCheckFailed ? kExitCheckFailed : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace fejer::cli

#endif  // FEJER_TOOLS_FEJER_CLI_HPP
