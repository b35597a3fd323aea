#pragma once

#include <string>
#include <vector>

#include "bidlab/landscape.hpp"
#include "bidlab/valuation.hpp"

namespace bidlab {

enum class Regime { Commitment, NoCommitMcpa, NoCommitTcpa, WrongBelief };

std::string regime_name(Regime r);

struct TypeRow {
    double v;
    double bid_or_target;  // submitted bid (mCPA) or target (tCPA)
    double marginal_bid;   // final uniform marginal bid placed on queries
    double volume;
    double spend;
    double utility;
    double revenue;
    double welfare;
};

struct Aggregate {
    double revenue = 0;
    double utility = 0;
    double welfare = 0;
};

struct EquilibriumReport {
    Regime regime;
    std::vector<TypeRow> per_type;
    Aggregate expected;
    double reserve_announced = 0;
    double reserve_final = 0;
    bool reserve_final_per_type = false;
};

/// Final marginal bid of a target-constrained bidder; slack means the target
/// never binds and the bid is capped at the top of the support.
struct MarginalBid {
    double bid;
    bool slack = false;
};

/// Unique b >= T solving H(b)(b - T) = cum_H(r, b). Requires r <= T.
MarginalBid tcpa_marginal_bid(const PriceLandscape& L, double T, double r);

/// argmax over b of (v - b) H(b); the bid-shading map of the first-price
/// equivalent game.
double fpa_bid(const PriceLandscape& L, double v);

/// Target making the marginal bid equal to v at zero reserve:
/// T*(v) = v - cum_H(p_low, v) / H(v).
double tcpa_target(const PriceLandscape& L, double v);

/// Reserve readjustment best responses after observing a submitted bid.
inline double mcpa_best_reserve(double b) { return b; }
inline double tcpa_best_reserve(double /*T*/) { return 0.0; }

/// Chebyshev-like type grid on the support of D (a single point for point
/// masses).
std::vector<double> type_grid(const ValuationDist& D, int points = 129);

EquilibriumReport commitment_outcome(const ValuationDist& D,
                                     const PriceLandscape& L,
                                     int grid_points = 129);
EquilibriumReport mcpa_nocommit_outcome(const ValuationDist& D,
                                        const PriceLandscape& L,
                                        int grid_points = 129);
EquilibriumReport tcpa_nocommit_outcome(const ValuationDist& D,
                                        const PriceLandscape& L,
                                        int grid_points = 129);

struct Theorem1Row {
    double v;
    double u_tcpa;
    double u_mcpa;
    bool strict;
};

/// Per-type utility comparison across formats; throws ViolationFound if any
/// grid point fails the strict inequality (that would falsify the
/// implementation, not the statement).
std::vector<Theorem1Row> theorem1_check(const PriceLandscape& L,
                                        const std::vector<double>& grid);

struct RevenueRow {
    double v;
    double pi_tcpa;
    double pi_mcpa;
};

struct RevenueComparisonReport {
    bool assumption2_holds;
    double assumption2_violation_at = 0;
    std::vector<RevenueRow> rows;
    bool all_tcpa_strictly_higher;
    std::string verdict;  // "theorem-consistent" or "informational"
};

RevenueComparisonReport revenue_comparison(const PriceLandscape& L,
                                           const std::vector<double>& grid);

struct CommitmentValue {
    double psi;
    double ratio;  // pi_NC / pi_C
    double pi_nc;
    double pi_c;
};

/// psi = E[phi_F(v)] / (r_MYE (1 - F(r_MYE))); checks pi_NC/pi_C >= psi.
CommitmentValue value_of_commitment(const ValuationDist& D,
                                    const PriceLandscape& L);

struct ShowingCommitmentValue {
    double pi_wb;
    double pi_c;
    EquilibriumReport wrong_belief;
};

/// Revenue when the bidder best-responds to the no-commitment outcome but the
/// auctioneer keeps the Myerson reserve.
ShowingCommitmentValue value_of_showing_commitment(const ValuationDist& D,
                                                   const PriceLandscape& L,
                                                   int grid_points = 129);

}  // namespace bidlab
