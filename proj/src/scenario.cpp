#include "bidlab/scenario.hpp"

#include <cstdio>
#include <sstream>

namespace bidlab {

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

PriceLandscape parse_landscape(const json& block) {
    const std::string family = block.at("family").get<std::string>();
    if (family == "power")
        return make_landscape(LandscapeFamily::power(block.at("n").get<int>()));
    if (family == "pareto_hat")
        return make_landscape(LandscapeFamily::pareto_hat());
    if (family == "piecewise_eps")
        return make_landscape(
            LandscapeFamily::piecewise_eps(block.at("eps").get<double>()));
    if (family == "empirical")
        return make_landscape(LandscapeFamily::empirical(
            block.at("prices").get<std::vector<double>>()));
    throw InvalidFamily("unknown landscape family: " + family);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

}  // namespace

PriceLandscape parse_landscape_spec(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.empty()) throw InvalidFamily("empty landscape spec");
    json block;
    block["family"] = parts[0];
    if (parts[0] == "power" && parts.size() == 2)
        block["n"] = std::stoi(parts[1]);
    else if (parts[0] == "piecewise_eps" && parts.size() == 2)
        block["eps"] = std::stod(parts[1]);
    else if (parts.size() != 1)
        throw InvalidFamily("malformed landscape spec: " + spec);
    return parse_landscape(block);
}

ValuationDist parse_valuation(const json& block) {
    const std::string family = block.at("family").get<std::string>();
    if (family == "uniform")
        return make_uniform(block.at("lo").get<double>(),
                            block.at("hi").get<double>());
    if (family == "point") return make_point_mass(block.at("v").get<double>());
    if (family == "truncated_pareto")
        return make_truncated_pareto(block.at("alpha").get<double>(),
                                     block.at("lo").get<double>(),
                                     block.at("hi").get<double>());
    throw InvalidFamily("unknown valuation family: " + family);
}

ValuationDist parse_valuation_spec(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.empty()) throw InvalidFamily("empty valuation spec");
    json block;
    block["family"] = parts[0];
    if (parts[0] == "uniform" && parts.size() == 3) {
        block["lo"] = std::stod(parts[1]);
        block["hi"] = std::stod(parts[2]);
    } else if (parts[0] == "point" && parts.size() == 2) {
        block["v"] = std::stod(parts[1]);
    } else if (parts[0] == "truncated_pareto" && parts.size() == 4) {
        block["alpha"] = std::stod(parts[1]);
        block["lo"] = std::stod(parts[2]);
        block["hi"] = std::stod(parts[3]);
    } else {
        throw InvalidFamily("malformed valuation spec: " + spec);
    }
    return parse_valuation(block);
}

json report_to_json(const EquilibriumReport& rep) {
    json doc;
    doc["regime"] = regime_name(rep.regime);
    doc["reserve_announced"] = fmt12(rep.reserve_announced);
    doc["reserve_final"] = rep.reserve_final_per_type
                               ? json("per-type")
                               : json(fmt12(rep.reserve_final));
    doc["expected"] = {{"revenue", fmt12(rep.expected.revenue)},
                       {"utility", fmt12(rep.expected.utility)},
                       {"welfare", fmt12(rep.expected.welfare)}};
    json rows = json::array();
    for (const TypeRow& r : rep.per_type)
        rows.push_back({{"v", fmt12(r.v)},
                        {"bid", fmt12(r.bid_or_target)},
                        {"marginal_bid", fmt12(r.marginal_bid)},
                        {"volume", fmt12(r.volume)},
                        {"spend", fmt12(r.spend)},
                        {"utility", fmt12(r.utility)},
                        {"revenue", fmt12(r.revenue)},
                        {"welfare", fmt12(r.welfare)}});
    doc["per_type"] = std::move(rows);
    return doc;
}

std::string report_to_csv(const EquilibriumReport& rep) {
    std::string out = "v,bid,marginal_bid,volume,spend,utility,revenue,welfare\n";
    for (const TypeRow& r : rep.per_type) {
        out += fmt12(r.v) + "," + fmt12(r.bid_or_target) + "," +
               fmt12(r.marginal_bid) + "," + fmt12(r.volume) + "," +
               fmt12(r.spend) + "," + fmt12(r.utility) + "," +
               fmt12(r.revenue) + "," + fmt12(r.welfare) + "\n";
    }
    return out;
}

namespace {

json metrics_to_json(const WorldMetrics& m) {
    return {{"revenue", fmt12(m.revenue)},
            {"revenue_from_bidder", fmt12(m.revenue_from_bidder)},
            {"volume", fmt12(m.volume)},
            {"utility", fmt12(m.utility)}};
}

}  // namespace

json theorem2_report_to_json(const Theorem2Report& rep) {
    json doc;
    doc["violations"] = rep.violations;
    doc["strict_cases"] = rep.strict_cases;
    doc["tolerance"] = fmt12(rep.tolerance);
    json rows = json::array();
    for (const Theorem2Trial& t : rep.trials)
        rows.push_back({{"trial", t.trial},
                        {"world_m", metrics_to_json(t.world_m)},
                        {"world_t", metrics_to_json(t.world_t)},
                        {"ok", t.ok},
                        {"strict", t.strict}});
    doc["trials"] = std::move(rows);
    return doc;
}

json theorem3_report_to_json(const Theorem3Report& rep) {
    json doc;
    doc["symmetric"] = rep.symmetric;
    doc["violations"] = rep.violations;
    json rows = json::array();
    for (const Theorem3Trial& t : rep.trials)
        rows.push_back({{"trial", t.trial},
                        {"containment", t.containment},
                        {"utility_ok", t.utility_ok}});
    doc["trials"] = std::move(rows);
    return doc;
}

SimInstance parse_instance(const json& doc) {
    SimInstance inst;
    for (const json& b : doc.at("bidders")) {
        BidderSpec s;
        s.id = b.at("id").get<int>();
        const std::string fmt = b.at("format").get<std::string>();
        if (fmt == "mcpa")
            s.format = Format::Mcpa;
        else if (fmt == "tcpa")
            s.format = Format::Tcpa;
        else
            throw InvalidFamily("unknown bidder format: " + fmt);
        s.value = b.at("value").get<double>();
        s.submitted = b.at("submitted").get<double>();
        inst.specs.push_back(s);
    }
    inst.Q.n_participants = static_cast<int>(inst.specs.size());
    int id = 0;
    for (const json& q : doc.at("queries")) {
        Query query;
        query.id = id++;
        query.weight = q.value("weight", 1.0);
        query.floor = q.value("floor", 0.0);
        query.conv = q.at("conv").get<std::vector<double>>();
        inst.Q.queries.push_back(std::move(query));
    }
    inst.reserves =
        ReservePolicy::zeros(ReserveMode::UniformPerBidder, inst.Q.n_participants);
    if (doc.contains("reserves")) {
        const json& r = doc["reserves"];
        const std::string mode = r.value("mode", "uniform");
        inst.reserves.mode = mode == "per_query"
                                 ? ReserveMode::PerQueryPersonalized
                                 : ReserveMode::UniformPerBidder;
        if (r.contains("values"))
            inst.reserves.uniform = r["values"].get<std::vector<double>>();
    }
    inst.Q.validate();
    return inst;
}

json outcome_to_json(const QuerySpace& Q, const AuctionOutcome& out,
                     const FixedPointResult& fp) {
    json doc;
    json bids = json::array();
    for (double b : fp.bids) bids.push_back(fmt12(b));
    doc["final_bids"] = std::move(bids);
    doc["iterations"] = fp.iterations;
    doc["warnings"] = fp.warnings;
    json queries = json::array();
    for (size_t x = 0; x < Q.queries.size(); ++x)
        queries.push_back({{"id", Q.queries[x].id},
                           {"winner", out.winner[x]},
                           {"price", fmt12(out.price[x])}});
    doc["queries"] = std::move(queries);
    json agg = json::array();
    for (const BidderAggregate& a : out.per_bidder)
        agg.push_back({{"volume", fmt12(a.volume)},
                       {"spend", fmt12(a.spend)},
                       {"utility", fmt12(a.utility)}});
    doc["per_bidder"] = std::move(agg);
    doc["revenue"] = fmt12(out.revenue);
    return doc;
}

}  // namespace bidlab
