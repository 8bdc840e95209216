// JSON views of the report types (nlohmann::json).
#ifndef FEJER_REPORT_JSON_HPP
#define FEJER_REPORT_JSON_HPP

#include <json.hpp>

#include "fejer/bounds.hpp"
#include "fejer/experiments.hpp"

namespace fejer {

inline nlohmann::ordered_json to_json(const BoundReport& r) {
  nlohmann::ordered_json pass = nlohmann::ordered_json::object();
  for (const auto& [name, ok] : r.pass) pass[name] = ok;
  nlohmann::ordered_json j;
  j["alpha"] = r.alpha;
  j["N"] = r.n_blocks;
  j["paper_bound"] = r.paper_bound;
  j["max_abs_sum"] = r.max_abs_sum;
  j["sup_symbol"] = r.sup_symbol;
  j["witness_j"] = r.witness_j;
  j["telescope_max"] = r.telescope_max;
  j["pass"] = pass;
  j["n1"] = r.n1;
  j["requested_alpha"] = r.requested_alpha;
  j["requested_paper_bound"] = geometric_tail_bound(r.requested_alpha);
  j["symbol_witness_j"] = r.symbol_witness_j;
  j["min_block_symbol"] = r.min_block_symbol;
  j["max_telescope_error"] = r.max_telescope_error;
  j["coeff_sup"] = r.coeff_sup;
  j["worst_ratio"] = r.worst_ratio ? nlohmann::ordered_json(*r.worst_ratio) : nlohmann::ordered_json(nullptr);
  j["signals_checked"] = r.signals_checked;
  return j;
}

inline nlohmann::ordered_json to_json(const TailReport& r) {
  nlohmann::ordered_json j;
  j["start"] = r.start;
  j["end"] = r.end;
  j["n_start"] = r.n_start;
  j["degree"] = r.degree;
  j["signal_norm"] = r.signal_norm;
  j["trial_norms"] = r.trial_norms;
  j["sup"] = r.sup;
  j["analytic_bound"] = r.analytic_bound;
  j["pass"] = r.pass;
  return j;
}

inline nlohmann::ordered_json to_json(const StrongTypeReport& r) {
  nlohmann::ordered_json j;
  j["K_max"] = r.k_max;
  j["coeff_sup"] = r.coeff_sup;
  j["c_sym"] = r.c_sym;
  j["c_obs"] = r.c_obs;
  j["empirical_constant"] = r.empirical_constant;
  j["max_tail_bound"] = r.max_tail_bound;
  j["ratios"] = r.ratios;
  j["pass"] = r.pass;
  return j;
}

}  // namespace fejer

#endif  // FEJER_REPORT_JSON_HPP
