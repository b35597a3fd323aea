#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bidlab/errors.hpp"

namespace bidlab {

/// Finite weighted query space. conv[i] is participant i's conversion rate
/// on the query (participant 0 is the bidder, 1..n the extra-buyers).
struct Query {
    int id;
    double weight;               // mu(x) > 0
    double floor;                // publisher floor p_B(x) >= 0
    std::vector<double> conv;    // q_i(x) in (0,1]
};

struct QuerySpace {
    std::vector<Query> queries;
    int n_participants = 0;

    void validate() const;
};

enum class Format { Mcpa, Tcpa };

struct BidderSpec {
    int id;
    Format format;
    double value;      // v_i >= 0
    double submitted;  // bid (mCPA) or target (tCPA)
};

enum class ReserveMode { PerQueryPersonalized, UniformPerBidder };

/// Per-bidder reserve values; in PerQueryPersonalized mode per_query
/// overrides, when present, take precedence for individual queries.
struct ReservePolicy {
    ReserveMode mode = ReserveMode::UniformPerBidder;
    std::vector<double> uniform;                    // indexed by bidder
    std::vector<std::vector<double>> per_query;     // [query][bidder], optional

    static ReservePolicy zeros(ReserveMode mode, int n_bidders);
    double at(int query_idx, int bidder) const;
};

struct BidderAggregate {
    double volume = 0;
    double spend = 0;
    double utility = 0;
};

struct AuctionOutcome {
    std::vector<int> winner;     // per query; -1 when unsold
    std::vector<double> price;   // per conversion, winner's units
    std::vector<BidderAggregate> per_bidder;
    double revenue = 0;
};

/// Per-conversion price floor participant for_bidder faces on query x from
/// rivals' bids and the publisher floor.
double intrinsic_price(const QuerySpace& Q, int x,
                       const std::vector<double>& bids, int for_bidder);

/// Second-price auction per query with per-bidder reserves. Ties in effective
/// bids break toward the lowest id. values[i] feeds the utility aggregate.
AuctionOutcome run_auction(const QuerySpace& Q,
                           const std::vector<double>& final_bids,
                           const ReservePolicy& reserves,
                           const std::vector<double>& values);

struct FixedPointResult {
    std::vector<double> bids;
    std::vector<bool> slack;  // tCPA participant whose target never binds
    int iterations = 0;
    std::vector<std::string> warnings;
};

/// Damped synchronous best-response iteration over the tCPA participants'
/// uniform marginal bids; mCPA bids stay fixed at their submitted values
/// (clamped to the valuation, with a warning). Throws NoConvergence after
/// 10,000 rounds.
FixedPointResult tcpa_fixed_point(const QuerySpace& Q,
                                  const std::vector<BidderSpec>& specs,
                                  const ReservePolicy& reserves,
                                  const std::vector<double>* warm_start = nullptr);

struct BestReserves {
    ReservePolicy policy;
    double revenue;
    FixedPointResult fixed_point;  // equilibrium at the chosen policy
};

/// Grid search (default 64 candidates, one refinement pass) over personal
/// uniform reserves, coordinate descent until no single move improves.
/// Descent starts from zero reserves unless an initial policy is given.
BestReserves auctioneer_best_reserves(const QuerySpace& Q,
                                      const std::vector<BidderSpec>& specs,
                                      ReserveMode mode, int grid = 64,
                                      const std::vector<double>* warm_start = nullptr,
                                      const ReservePolicy* init = nullptr);

struct NoSwapVerdict {
    bool acyclic;
    std::vector<int> cycle;  // witness when cyclic
};

/// Directed handover graph: edge (i,j) iff some query won by i in outcome1 is
/// won by j in outcome2.
NoSwapVerdict no_swap_check(const QuerySpace& Q, const AuctionOutcome& o1,
                            const AuctionOutcome& o2);

struct InstanceConfig {
    int n_queries = 20;
    int n_extras = 2;
    double conv_lo = 0.1, conv_hi = 1.0;
    double floor_lo = 0.0, floor_hi = 0.5;
    double value_lo = 0.0, value_hi = 1.0;
    bool tcpa_only_extras = false;  // force every extra-buyer onto tCPA
};

struct RandomInstance {
    QuerySpace Q;
    std::vector<BidderSpec> extras;
};

/// Deterministic instance draw; identical seed gives identical instances on
/// every platform (no library distributions involved).
RandomInstance draw_instance(const InstanceConfig& cfg, std::uint64_t seed);

struct WorldMetrics {
    double revenue = 0;
    double revenue_from_bidder = 0;
    double volume = 0;
    double utility = 0;
};

struct Theorem2Trial {
    std::uint64_t trial = 0;
    WorldMetrics world_m;
    WorldMetrics world_t;
    bool ok = false;
    bool strict = false;
};

struct Theorem2Report {
    std::vector<Theorem2Trial> trials;
    int violations = 0;
    int strict_cases = 0;
    double tolerance = 0;
};

/// World M (bidder mCPA at b) vs world T (bidder tCPA at T=b), auctioneer
/// best reserves in both; checks the four world-T >= world-M inequalities.
Theorem2Report theorem2_check(const InstanceConfig& cfg, double v,
                              double b_mcpa, int trials, std::uint64_t seed,
                              int reserve_grid = 64, double tol = 1e-6);

struct Theorem3Trial {
    std::uint64_t trial = 0;
    bool containment = false;
    bool utility_ok = false;
};

struct Theorem3Report {
    std::vector<Theorem3Trial> trials;
    int violations = 0;
    bool symmetric = true;  // false: preconditions failed, checks skipped
};

/// Winning-set containment X_mCPA(bidder) within X_tCPA(bidder) under
/// uniform-per-bidder reserves with tCPA-symmetric extra-buyers.
Theorem3Report theorem3_check(const InstanceConfig& cfg, double v,
                              double b_mcpa, int trials, std::uint64_t seed,
                              int reserve_grid = 64, double tol = 1e-6);

/// Uniform double in [0,1) from the top 53 bits of a 64-bit state; the
/// companion generator is a SplitMix64 so reports are reproducible
/// byte-for-byte across standard libraries.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
};

}  // namespace bidlab
