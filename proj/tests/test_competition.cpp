#include <doctest.h>

#include <cmath>

#include "bidlab/competition.hpp"

using namespace bidlab;

namespace {

CompetitiveSetting power_setting(int n, double beta) {
    return CompetitiveSetting(make_landscape(LandscapeFamily::power(n)), beta);
}

double clamped_tail(const PriceLandscape& L, double a) {
    if (a >= L.support.hi) return 0.0;
    return tail_price_mass(L, std::max(a, L.support.lo));
}

// Indifference equation residual, written independently of the solver.
double vh_residual(const CompetitiveSetting& S, double v) {
    const PriceLandscape& L = S.landscape;
    const double b = S.beta;
    const double rh = reserve_rh(S);
    const double rhs = rh * (L.eval_cdf(rh / b) - L.eval_cdf(rh)) +
                       b * clamped_tail(L, rh / b);
    return v * L.eval_cdf(v / b) + b * clamped_tail(L, v / b) - rhs;
}

double vh_oracle(const CompetitiveSetting& S) {
    const PriceLandscape& L = S.landscape;
    const double hi = L.support.hi;  // covers the clamped region too
    double prev_v = L.support.lo, prev_g = vh_residual(S, prev_v);
    if (prev_g >= -1e-9) return prev_v;
    for (int k = 1; k <= 10000; ++k) {
        const double v = L.support.lo + (hi - L.support.lo) * k / 10000.0;
        const double g = vh_residual(S, v);
        if ((g > 0) != (prev_g > 0)) return 0.5 * (prev_v + v);
        prev_v = v;
        prev_g = g;
    }
    return hi;
}

}  // namespace

TEST_CASE("setting validation") {
    const PriceLandscape L1 = make_landscape(LandscapeFamily::power(1));
    CHECK_THROWS_AS(CompetitiveSetting(L1, 0.0), DomainViolation);
    CHECK_THROWS_AS(CompetitiveSetting(L1, 1.0), DomainViolation);
    CHECK_THROWS_AS(
        CompetitiveSetting(make_landscape(LandscapeFamily::pareto_hat()), 0.5),
        DivergentTail);
}

TEST_CASE("reserve_rh roots") {
    CHECK(reserve_rh(power_setting(1, 0.5)) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(reserve_rh(power_setting(2, 0.5)) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
    // p - (1 - p^3)/(3p^2) = 0  <=>  4 p^3 = 1
    CHECK(reserve_rh(power_setting(3, 0.5)) ==
          doctest::Approx(std::cbrt(0.25)).epsilon(1e-10));
}

TEST_CASE("vh_threshold closed case and oracle agreement") {
    // Power(1), beta=0.5: both sides equal 1/4 at v=0
    const CompetitiveSetting S1 = power_setting(1, 0.5);
    CHECK(vh_threshold(S1) == doctest::Approx(0.0).epsilon(1e-9));

    for (double beta : {0.3, 0.5, 0.7}) {
        for (int n : {2, 3}) {
            const CompetitiveSetting S = power_setting(n, beta);
            const double vh = vh_threshold(S);
            if (vh > S.landscape.support.lo) {
                CHECK(std::fabs(vh_residual(S, vh)) <= 1e-7);
            } else {
                // clamped: inclusion already preferred at the bottom type
                CHECK(vh_residual(S, vh) >= -1e-7);
            }
            CHECK(std::fabs(vh - vh_oracle(S)) <= 1e-4);
        }
    }
}

TEST_CASE("mcpa_bid_competitive branch structure") {
    const CompetitiveSetting S = power_setting(2, 0.5);
    const double vh = vh_threshold(S);
    CHECK(vh > 0.0);
    // unconstrained shaded bid for Power(2) is 2v/3; binv = 1.5 vh
    const double binv = 1.5 * vh;
    CHECK(mcpa_bid_competitive(S, 0.5 * vh) == 0.0);
    CHECK(mcpa_bid_competitive(S, vh) == 0.0);
    CHECK(mcpa_bid_competitive(S, 0.5 * (vh + binv)) ==
          doctest::Approx(vh).epsilon(1e-7));
    CHECK(mcpa_bid_competitive(S, binv + 1e-4) ==
          doctest::Approx(vh).epsilon(1e-3));
    CHECK(mcpa_bid_competitive(S, 0.9) ==
          doctest::Approx(0.6).epsilon(1e-6));
    CHECK_THROWS_AS(mcpa_bid_competitive(S, -1.0), DomainViolation);

    // degenerate threshold: every positive type bids the shaded solution
    const CompetitiveSetting S1 = power_setting(1, 0.5);
    CHECK(mcpa_bid_competitive(S1, 0.8) == doctest::Approx(0.4).epsilon(1e-7));
}

TEST_CASE("t_threshold closed form") {
    CHECK(t_threshold(power_setting(1, 0.5)) == doctest::Approx(0.0));
    for (int n : {2, 3}) {
        const CompetitiveSetting S = power_setting(n, 0.5);
        // marginal bid is T (n+1)/n, so T_H = v_H n/(n+1)
        CHECK(t_threshold(S) ==
              doctest::Approx(vh_threshold(S) * n / (n + 1.0)).epsilon(1e-8));
    }
}

TEST_CASE("tcpa_reserve_competitive on the linear landscape") {
    const CompetitiveSetting S = power_setting(1, 0.5);
    // T=0.3: J increases up to the unconstrained bid 0.6
    const TcpaReserveResult r = tcpa_reserve_competitive(S, 0.3);
    CHECK_FALSE(r.excluded);
    CHECK(r.n_star == doctest::Approx(0.6).epsilon(1e-6));
    CHECK(r.r_star == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(r.objective == doctest::Approx(0.42).epsilon(1e-8));
    // T=0.4: interior optimum at n = (T+1)/2 = 0.7 with J = 0.49
    const TcpaReserveResult r2 = tcpa_reserve_competitive(S, 0.4);
    CHECK(r2.n_star == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(r2.objective == doctest::Approx(0.49).epsilon(1e-8));
    // implementing reserve: b(0.4; r) = 0.4 + sqrt(0.16 - r^2) = 0.7
    CHECK(r2.r_star == doctest::Approx(std::sqrt(0.16 - 0.09)).epsilon(1e-6));
    CHECK_THROWS_AS(tcpa_reserve_competitive(S, -0.1), DomainViolation);
}

TEST_CASE("tcpa_reserve_competitive never undercuts the target") {
    const CompetitiveSetting S = power_setting(1, 0.5);
    const double th = t_threshold(S);
    for (int k = 1; k <= 10; ++k) {
        const double T = th + 0.045 * k;
        const TcpaReserveResult r = tcpa_reserve_competitive(S, T);
        CHECK_FALSE(r.excluded);
        CHECK(r.n_star > T);
    }
}

TEST_CASE("tcpa_reserve_competitive grid oracle agreement") {
    for (double beta : {0.4, 0.6}) {
        for (int n : {1, 2}) {
            const CompetitiveSetting S = power_setting(n, beta);
            const PriceLandscape& L = S.landscape;
            for (double T : {0.2, 0.35, 0.5}) {
                if (T < t_threshold(S)) continue;
                const TcpaReserveResult r = tcpa_reserve_competitive(S, T);
                const double b0 = tcpa_marginal_bid(L, T, 0.0).bid;
                double best = -1.0, best_n = T;
                for (int k = 0; k <= 20000; ++k) {
                    const double x = T + (b0 - T) * k / 20000.0;
                    const double J =
                        T * L.eval_cdf(x) +
                        x * (L.eval_cdf(x / beta) - L.eval_cdf(x)) +
                        beta * clamped_tail(L, x / beta);
                    if (J > best) {
                        best = J;
                        best_n = x;
                    }
                }
                CHECK(std::fabs(r.n_star - best_n) <= 1e-4);
                CHECK(r.objective >= best - 1e-10);
            }
        }
    }
}

TEST_CASE("exclusion below the participation target") {
    const CompetitiveSetting S = power_setting(2, 0.5);
    const double th = t_threshold(S);
    CHECK(th > 0.0);
    const TcpaReserveResult r = tcpa_reserve_competitive(S, 0.5 * th);
    CHECK(r.excluded);
    CHECK(r.n_star == 0.0);
    CHECK(r.r_star == doctest::Approx(reserve_rh(S)));
    CHECK(r.objective > 0.0);
    CHECK_FALSE(tcpa_reserve_competitive(S, th + 1e-3).excluded);
}
