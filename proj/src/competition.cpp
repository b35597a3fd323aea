#include "bidlab/competition.hpp"

#include <algorithm>
#include <cmath>

namespace bidlab {

namespace {

double clamped_tail(const PriceLandscape& L, double a) {
    if (a >= L.support.hi) return 0.0;
    return tail_price_mass(L, std::max(a, L.support.lo));
}

}  // namespace

CompetitiveSetting::CompetitiveSetting(PriceLandscape L, double beta_)
    : landscape(std::move(L)), beta(beta_) {
    if (!(beta > 0.0 && beta < 1.0))
        throw DomainViolation("CompetitiveSetting: beta must be in (0,1)");
    if (!std::isfinite(landscape.total_volume))
        throw InfiniteTotalVolume("CompetitiveSetting: total volume not finite");
    clamped_tail(landscape, landscape.support.lo);  // throws on divergent tail
}

double reserve_rh(const CompetitiveSetting& S) {
    const PriceLandscape& L = S.landscape;
    const double lo = L.support.lo;
    const double cut = L.validation_cut();
    const ScalarFn phi = [&](double p) { return normalized_virtual_value(L, p); };
    const double eps = 1e-12 * (1.0 + std::fabs(lo));
    if (phi(lo + eps) >= 0.0) return lo;
    return find_root(phi, Interval(lo + eps, cut), {1e-13, 1e-13, 300});
}

double vh_threshold(const CompetitiveSetting& S) {
    const PriceLandscape& L = S.landscape;
    const double beta = S.beta;
    const double rh = reserve_rh(S);
    const double rhs = rh * (L.eval_cdf(rh / beta) - L.eval_cdf(rh)) +
                       beta * clamped_tail(L, rh / beta);
    const ScalarFn g = [&](double v) {
        return v * L.eval_cdf(v / beta) + beta * clamped_tail(L, v / beta) - rhs;
    };
    const double lo = L.support.lo;
    const double hi = L.support.unbounded() ? L.validation_cut()
                                            : beta * L.support.hi;
    const double scale = 1.0 + std::fabs(rhs);
    const double glo = g(lo);
    // The left side is increasing in v, so a missing sign change means the
    // auctioneer's preference never flips on the bracket.
    if (glo >= -1e-9 * scale) return lo;
    if (hi <= lo) throw NoRootInBracket("vh_threshold: empty bracket");
    const double ghi = g(hi);
    // Above beta * p_high both H and the tail mass are clamped, so g is
    // linear there and the root has a closed form.
    if (ghi < 0.0) return rhs / L.total_volume;
    return find_root(g, Interval(lo, hi), {1e-13, 1e-13, 300});
}

double mcpa_bid_competitive(const CompetitiveSetting& S, double v) {
    if (v < 0) throw DomainViolation("mcpa_bid_competitive: v < 0");
    const PriceLandscape& L = S.landscape;
    const double vh = vh_threshold(S);
    if (v <= vh) return 0.0;
    if (vh <= L.support.lo) return fpa_bid(L, v);
    // binv: the value whose unconstrained shaded bid reaches v_H.
    const ScalarFn g = [&](double x) { return fpa_bid(L, x) - vh; };
    double binv;
    if (g(vh) >= 0.0) {
        binv = vh;
    } else {
        const Interval br = expand_bracket(g, vh, std::max(2.0 * vh, vh + 1.0));
        binv = find_root(g, br, {1e-10, 1e-10, 300});
    }
    if (v <= binv) return vh;
    return fpa_bid(L, v);
}

double t_threshold(const CompetitiveSetting& S) {
    const PriceLandscape& L = S.landscape;
    const double vh = vh_threshold(S);
    if (vh <= L.support.lo) return vh;  // marginal bid p_low needs no target
    const ScalarFn g = [&](double T) {
        return tcpa_marginal_bid(L, T, 0.0).bid - vh;
    };
    if (g(0.0) >= 0.0) return 0.0;
    return find_root(g, Interval(0.0, vh), {1e-12, 1e-12, 300});
}

TcpaReserveResult tcpa_reserve_competitive(const CompetitiveSetting& S,
                                           double T) {
    if (T < 0) throw DomainViolation("tcpa_reserve_competitive: T < 0");
    const PriceLandscape& L = S.landscape;
    const double beta = S.beta;
    const double th = t_threshold(S);
    const double rh = reserve_rh(S);
    if (T < th - 1e-12) {
        // Exclusion regime: the auctioneer falls back to pure competition.
        const double obj = rh * (L.eval_cdf(rh / beta) - L.eval_cdf(rh)) +
                           beta * clamped_tail(L, rh / beta);
        return {0.0, rh, obj, true};
    }
    const double b0 = tcpa_marginal_bid(L, T, 0.0).bid;
    const ScalarFn J = [&](double n) {
        return T * L.eval_cdf(n) + n * (L.eval_cdf(n / beta) - L.eval_cdf(n)) +
               beta * clamped_tail(L, n / beta);
    };
    if (b0 <= T + 1e-15) return {T, T, J(T), false};
    const MaxResult m = maximize_1d(J, Interval(T, b0), {1e-12, 1e-12, 300}, 512);
    const double n_star = m.argmax;
    // Recover the reserve implementing the chosen marginal bid.
    const ScalarFn g = [&](double r) {
        return tcpa_marginal_bid(L, T, r).bid - n_star;
    };
    double r_star;
    if (g(0.0) <= 0.0)
        r_star = 0.0;
    else if (g(T) >= 0.0)
        r_star = T;
    else
        r_star = find_root(g, Interval(0.0, T), {1e-12, 1e-12, 300});
    return {n_star, r_star, m.max, false};
}

}  // namespace bidlab
