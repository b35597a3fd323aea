#pragma once

#include "bidlab/landscape.hpp"
#include "bidlab/onebidder.hpp"

namespace bidlab {

/// One platform bidder against unconstrained buyers: the top competing bid on
/// a query is distributed per the landscape and the second-highest bid is
/// beta times the top one.
struct CompetitiveSetting {
    PriceLandscape landscape;
    double beta;

    CompetitiveSetting(PriceLandscape L, double beta_);
};

/// Reserve the auctioneer sets when excluding the bidder: root of the
/// volume-normalized virtual value of the landscape.
double reserve_rh(const CompetitiveSetting& S);

/// Participation threshold: the value at which the auctioneer is indifferent
/// between selling to the bidder and falling back to the competing buyers.
/// Evaluations above the support clamp H to total volume and the tail mass
/// to zero.
double vh_threshold(const CompetitiveSetting& S);

/// Optimal bid: 0 below v_H, pinned at v_H over the middle band, then the
/// unconstrained bid-shading solution.
double mcpa_bid_competitive(const CompetitiveSetting& S, double v);

/// Target below which the bidder is excluded: solves b(T_H; 0) = v_H.
double t_threshold(const CompetitiveSetting& S);

struct TcpaReserveResult {
    double n_star;     // optimal final marginal bid induced for the bidder
    double r_star;     // reserve implementing it, b(T; r_star) = n_star
    double objective;  // auctioneer revenue at the optimum
    bool excluded;     // T below t_threshold: bidder not served
};

/// Auctioneer best response to a submitted target T: maximize
/// J(n) = T H(n) + n (H(n/beta) - H(n)) + beta * tail_price_mass(n/beta)
/// over n in [T, b(T;0)].
TcpaReserveResult tcpa_reserve_competitive(const CompetitiveSetting& S,
                                           double T);

}  // namespace bidlab
