#include "report_json.hpp"

namespace mantel::cli {

json edges_json(const Graph& g, const EdgeSet& f) {
  json out = json::array();
  for (EdgeId e : f.ids()) out.push_back({g.edge(e).u, g.edge(e).v});
  return out;
}

json pairs_json(const std::vector<VertexPair>& pairs) {
  json out = json::array();
  for (const auto& [x, y] : pairs) out.push_back({x, y});
  return out;
}

json to_json(const ParamConfig& cfg) {
  return {{"epsilon", cfg.epsilon}, {"eta", cfg.eta},   {"alpha", cfg.alpha},
          {"zeta", cfg.zeta},       {"K", cfg.K},       {"C", cfg.C}};
}

json to_json(const SolveCertificate& cert) {
  json j{{"optimum", cert.optimum},
         {"method", cert.method},
         {"nodes_explored", cert.nodes_explored}};
  if (cert.verdict != Verdict::kNotRequested) {
    j["verdict"] = to_string(cert.verdict);
    j["optima_enumerated"] = cert.optima_enumerated;
  }
  if (cert.partition) j["labels"] = cert.partition->label;
  return j;
}

json to_json(const CutProfile& p) {
  json q_cutoffs = json::array();
  json q_thresholds = json::array();
  for (int i = 0; i < 3; ++i) {
    q_cutoffs.push_back(p.q_cutoff[i]);
    q_thresholds.push_back(p.q_threshold[i]);
  }
  return {{"n", p.n},
          {"p", p.p},
          {"X", p.X},
          {"T", p.T},
          {"T_minus_X", p.T_minus_X},
          {"Q_v", pairs_json(p.Q_v)},
          {"Q_e", pairs_json(p.Q_e)},
          {"q_size", p.q_size()},
          {"x_cutoff", p.x_cutoff},
          {"t_cutoff", p.t_cutoff},
          {"q_cutoffs", q_cutoffs},
          {"x_threshold", p.x_threshold},
          {"t_threshold", p.t_threshold},
          {"q_thresholds", q_thresholds}};
}

json to_json(const PromotionReport& r) {
  return {{"x_size", r.x_size},
          {"before", r.before},
          {"after", r.after},
          {"gain", r.gain},
          {"degree_sum", r.degree_sum},
          {"benchmark", r.benchmark},
          {"meets_degree_sum", r.meets_degree_sum},
          {"meets_benchmark", r.meets_benchmark}};
}

json to_json(const CutDominanceReport& r) {
  return {{"balanced", r.balanced},
          {"triangle_free", r.triangle_free},
          {"differs_from_cut", r.differs_from_cut},
          {"avoids_q", r.avoids_q},
          {"empty_in_b", r.empty_in_b},
          {"sparse_inside", r.sparse_inside},
          {"crossing_majority", r.crossing_majority},
          {"majority_violators", r.majority_violators},
          {"f_in_a", r.f_in_a},
          {"f_in_b", r.f_in_b},
          {"f_across", r.f_across},
          {"f_in_q", r.f_in_q},
          {"phi", r.phi},
          {"cut_size", r.cut_size},
          {"hypotheses_hold", r.hypotheses_hold()},
          {"conclusion", r.conclusion},
          {"counterexample", r.counterexample()}};
}

json to_json(const PairGainReport& r) {
  json j{{"status", to_string(r.status)},
         {"degree_condition", r.degree_condition},
         {"degree_violators", r.degree_violators},
         {"q_size", r.q_size},
         {"q_in_qv", r.q_in_qv},
         {"q_in_qe", r.q_in_qe},
         {"cut_size", r.cut_size},
         {"b", r.b},
         {"bound", r.bound},
         {"conclusion", r.conclusion},
         {"realized_delta", nullptr}};
  if (r.realized_delta) j["realized_delta"] = *r.realized_delta;
  return j;
}

json to_json(const MainChainReport& r) {
  return {{"cut_method", r.cut_method},
          {"labels", r.pi.sides()},
          {"balanced", r.balanced},
          {"t", r.t},
          {"b", r.b},
          {"cut_size", r.cut_size},
          {"f0_in_a", r.f0_in_a},
          {"f0_in_b", r.f0_in_b},
          {"f0_across", r.f0_across},
          {"f1_size", r.f1_size},
          {"f_size", r.f_size},
          {"f1_in_q", r.f1_in_q},
          {"phi_f1", r.phi_f1},
          {"phi_f", r.phi_f},
          {"links", {r.links[0], r.links[1], r.links[2], r.links[3]}},
          {"holds", r.holds()},
          {"first_broken", r.first_broken()},
          {"dominance", to_json(r.dominance)}};
}

namespace {

json tally(const ConcentrationTally& t) {
  return {{"evaluated", t.evaluated},
          {"violations", t.violations},
          {"skipped", t.skipped},
          {"violation_rate", t.violation_rate()}};
}

json window(const MinMaxMean& m) { return {{"min", m.min}, {"max", m.max}, {"mean", m.mean}}; }

}  // namespace

json to_json(const ConcentrationReport& r) {
  return {{"size_floor", r.size_floor},
          {"degree", window(r.degrees.degree)},
          {"codegree", window(r.degrees.codegree)},
          {"degree_outside", r.degrees.degree_outside},
          {"codegree_outside", r.degrees.codegree_outside},
          {"density_cut", tally(r.density_cut)},
          {"density_inside", tally(r.density_inside)},
          {"sparse_cut", tally(r.sparse_cut)},
          {"sparse_inside", tally(r.sparse_inside)},
          {"low_set", tally(r.low_set)},
          {"low_pair_degree", tally(r.low_pair_degree)},
          {"balanced_cuts_exist", r.balanced_cuts_exist}};
}

json to_json(const H1CutReport& r) {
  return {{"every_edge_in_triangle", r.every_edge_in_triangle},
          {"h1_zero", r.h1_zero},
          {"even_space_is_cut_space", r.even_space_is_cut_space},
          {"betti1", r.betti1},
          {"even_dimension", r.even_dimension},
          {"cut_dimension", r.cut_dimension}};
}

json to_json(const SweepRecord& r) {
  json j{{"n", r.n},
         {"p", r.p},
         {"trials", r.trials},
         {"mode", to_string(r.mode)},
         {"weak_count", r.weak_success},
         {"weak_inconclusive", r.weak_inconclusive},
         {"weak_lo", r.weak_ci.lo},
         {"weak_hi", r.weak_ci.hi},
         {"obstructions", r.obstructions},
         {"seed", r.seed}};
  if (r.mode == EventMode::kStrong) {
    j["strong_count"] = r.strong_success;
    j["strong_inconclusive"] = r.strong_inconclusive;
    j["strong_lo"] = r.strong_ci.lo;
    j["strong_hi"] = r.strong_ci.hi;
  }
  return j;
}

json to_json(const CrossingResult& r) {
  json evals = json::array();
  for (const auto& e : r.evaluations) evals.push_back(to_json(e));
  return {{"found", r.found},
          {"at_lower_end", r.at_lower_end},
          {"p_star", r.p_star},
          {"ratio", r.ratio},
          {"bracket_lo", r.bracket_lo},
          {"bracket_hi", r.bracket_hi},
          {"evaluations", evals}};
}

}  // namespace mantel::cli
