#pragma once

#include <string>

#include <json.hpp>

#include "bidlab/aucsim.hpp"
#include "bidlab/landscape.hpp"
#include "bidlab/onebidder.hpp"
#include "bidlab/valuation.hpp"

namespace bidlab {

using json = nlohmann::json;

/// 12 significant digits, the fixed formatting used by every emitted file.
std::string fmt12(double x);

/// {"family":"power","n":3} | {"family":"pareto_hat"} |
/// {"family":"piecewise_eps","eps":0.01} | {"family":"empirical","prices":[..]}
PriceLandscape parse_landscape(const json& block);

/// Compact CLI form: "power:3", "pareto_hat", "piecewise_eps:0.01".
PriceLandscape parse_landscape_spec(const std::string& spec);

/// {"family":"uniform","lo":0,"hi":1} | {"family":"point","v":0.7} |
/// {"family":"truncated_pareto","alpha":..,"lo":..,"hi":..}
ValuationDist parse_valuation(const json& block);

/// Compact CLI form: "uniform:0:1", "point:0.7",
/// "truncated_pareto:2:1:10".
ValuationDist parse_valuation_spec(const std::string& spec);

json report_to_json(const EquilibriumReport& rep);
std::string report_to_csv(const EquilibriumReport& rep);

json theorem2_report_to_json(const Theorem2Report& rep);
json theorem3_report_to_json(const Theorem3Report& rep);

/// Instance file: {"queries":[{"weight":..,"floor":..,"conv":[..]}, ...],
/// "bidders":[{"id":..,"format":"mcpa"|"tcpa","value":..,"submitted":..},...],
/// "reserves":{"mode":"uniform"|"per_query","values":[..]}}
struct SimInstance {
    QuerySpace Q;
    std::vector<BidderSpec> specs;
    ReservePolicy reserves;
};
SimInstance parse_instance(const json& doc);
json outcome_to_json(const QuerySpace& Q, const AuctionOutcome& out,
                     const FixedPointResult& fp);

}  // namespace bidlab
