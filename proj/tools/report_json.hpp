// JSON views of library results, shared by the CLI and its tests.
#ifndef MANTEL_TOOLS_REPORT_JSON_HPP
#define MANTEL_TOOLS_REPORT_JSON_HPP

#include "json.hpp"
#include "mantel/cut_structure.hpp"
#include "mantel/experiments.hpp"
#include "mantel/homology.hpp"
#include "mantel/solvers.hpp"

namespace mantel::cli {

using nlohmann::json;

json edges_json(const Graph& g, const EdgeSet& f);
json pairs_json(const std::vector<VertexPair>& pairs);

json to_json(const ParamConfig& cfg);
json to_json(const SolveCertificate& cert);
json to_json(const CutProfile& profile);
json to_json(const PromotionReport& r);
json to_json(const CutDominanceReport& r);
json to_json(const PairGainReport& r);
json to_json(const MainChainReport& r);
json to_json(const ConcentrationReport& r);
json to_json(const H1CutReport& r);
json to_json(const CrossingResult& r);
json to_json(const SweepRecord& r);

}  // namespace mantel::cli

#endif  // MANTEL_TOOLS_REPORT_JSON_HPP
