#include "bidlab/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace bidlab {

double PriceLandscape::eval_cdf(double p) const {
    if (p <= support.lo) return (p == support.lo) ? cdf(p) : 0.0;
    if (p >= support.hi) return total_volume;
    return cdf(p);
}

double PriceLandscape::eval_pdf(double p) const {
    if (p < support.lo || p > support.hi) return 0.0;
    return pdf(p);
}

double PriceLandscape::validation_cut() const {
    if (!support.unbounded()) return support.hi;
    const double target = total_volume * (1.0 - 1e-6);
    const ScalarFn g = [&](double p) { return eval_cdf(p) - target; };
    Interval br = expand_bracket(g, support.lo, support.lo + 1.0);
    return find_root(g, br);
}

LandscapeFamily LandscapeFamily::power(int n) {
    LandscapeFamily f;
    f.kind = Kind::Power;
    f.n = n;
    return f;
}
LandscapeFamily LandscapeFamily::pareto_hat() {
    LandscapeFamily f;
    f.kind = Kind::ParetoHat;
    return f;
}
LandscapeFamily LandscapeFamily::piecewise_eps(double eps) {
    LandscapeFamily f;
    f.kind = Kind::PiecewiseEps;
    f.eps = eps;
    return f;
}
LandscapeFamily LandscapeFamily::empirical(std::vector<double> prices) {
    LandscapeFamily f;
    f.kind = Kind::EmpiricalLinear;
    f.prices = std::move(prices);
    return f;
}

namespace {

PriceLandscape make_power(int n) {
    if (n < 1) throw InvalidFamily("power landscape requires n >= 1");
    PriceLandscape L{Interval(0.0, 1.0),
                     [n](double p) { return std::pow(p, n); },
                     [n](double p) { return n * std::pow(p, n - 1); },
                     1.0,
                     "power:" + std::to_string(n), {}, {}, false};
    L.cum_antideriv = [n](double b) { return std::pow(b, n + 1) / (n + 1); };
    L.tail_mass_fn = [n](double a) {
        // int_a^1 z * n z^{n-1} dz
        return n * (1.0 - std::pow(a, n + 1)) / (n + 1);
    };
    return L;
}

PriceLandscape make_pareto_hat() {
    PriceLandscape L{Interval(1.0, kInf),
                     [](double p) { return 1.0 - 1.0 / p; },
                     [](double p) { return 1.0 / (p * p); },
                     1.0,
                     "pareto_hat", {}, {}, false};
    L.cum_antideriv = [](double b) { return (b - 1.0) - std::log(b); };
    L.tail_divergent = true;  // int z/z^2 dz = log, no finite tail mass
    return L;
}

PriceLandscape make_piecewise_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidFamily("piecewise_eps landscape requires eps in (0,1)");
    const double s_lo = (1.0 - eps) / eps;  // slope below the kink
    PriceLandscape L{
        Interval(0.0, 1.0),
        [=](double p) {
            return p <= eps ? s_lo * p : (1.0 - eps) + eps * p;
        },
        // h at the kink is the right limit
        [=](double p) { return p < eps ? s_lo : eps; },
        1.0,
        "piecewise_eps", {}, {}, false};
    const double cum_at_kink = 0.5 * s_lo * eps * eps;
    L.cum_antideriv = [=](double b) {
        if (b <= eps) return 0.5 * s_lo * b * b;
        return cum_at_kink + (1.0 - eps) * (b - eps) +
               0.5 * eps * (b * b - eps * eps);
    };
    L.tail_mass_fn = [=](double a) {
        double m = 0.0;
        if (a < eps) m += 0.5 * s_lo * (eps * eps - a * a);
        const double lo = std::max(a, eps);
        if (lo < 1.0) m += 0.5 * eps * (1.0 - lo * lo);
        return m;
    };
    return L;
}

struct EmpiricalTable {
    std::vector<double> x;    // knots, strictly increasing
    std::vector<double> H;    // cdf at knots, 0..1
    std::vector<double> s;    // slope on [x_k, x_{k+1}]
    std::vector<double> cumH; // integral of H from x_0 to x_k

    int segment(double p) const {
        auto it = std::upper_bound(x.begin(), x.end(), p);
        int k = static_cast<int>(it - x.begin()) - 1;
        return std::clamp(k, 0, static_cast<int>(x.size()) - 2);
    }
};

PriceLandscape make_empirical(std::vector<double> prices) {
    std::sort(prices.begin(), prices.end());
    if (prices.size() < 2)
        throw InvalidFamily("empirical landscape requires >= 2 prices");
    if (prices.front() < 0)
        throw InvalidFamily("empirical landscape requires nonnegative prices");
    // Duplicate prices would give a flat CDF segment (h = 0); perturb them.
    constexpr double jitter = 1e-9;
    for (size_t i = 1; i < prices.size(); ++i)
        if (prices[i] <= prices[i - 1]) prices[i] = prices[i - 1] + jitter;

    auto tab = std::make_shared<EmpiricalTable>();
    tab->x = prices;
    const size_t n = prices.size();
    tab->H.resize(n);
    for (size_t k = 0; k < n; ++k)
        tab->H[k] = static_cast<double>(k) / (n - 1);
    tab->s.resize(n - 1);
    for (size_t k = 0; k + 1 < n; ++k)
        tab->s[k] = (tab->H[k + 1] - tab->H[k]) / (tab->x[k + 1] - tab->x[k]);
    tab->cumH.resize(n, 0.0);
    for (size_t k = 0; k + 1 < n; ++k) {
        const double w = tab->x[k + 1] - tab->x[k];
        tab->cumH[k + 1] = tab->cumH[k] + tab->H[k] * w + 0.5 * tab->s[k] * w * w;
    }

    PriceLandscape L{
        Interval(prices.front(), prices.back()),
        [tab](double p) {
            const int k = tab->segment(p);
            return tab->H[k] + tab->s[k] * (p - tab->x[k]);
        },
        [tab](double p) { return tab->s[tab->segment(p)]; },
        1.0,
        "empirical", {}, {}, false};
    L.cum_antideriv = [tab](double b) {
        const int k = tab->segment(b);
        const double d = b - tab->x[k];
        return tab->cumH[k] + tab->H[k] * d + 0.5 * tab->s[k] * d * d;
    };
    L.tail_mass_fn = [tab](double a) {
        double m = 0.0;
        const size_t n = tab->x.size();
        for (size_t k = 0; k + 1 < n; ++k) {
            const double lo = std::max(a, tab->x[k]);
            const double hi = tab->x[k + 1];
            if (lo < hi) m += 0.5 * tab->s[k] * (hi * hi - lo * lo);
        }
        return m;
    };
    return L;
}

}  // namespace

void validate_landscape(const PriceLandscape& L, int grid_size) {
    if (grid_size < 2) grid_size = 2;
    const double lo = L.support.lo;
    if (L.eval_cdf(lo) > 1e-12)
        throw InvalidFamily("landscape " + L.name + ": atom at p_low");
    const double cut = L.validation_cut();
    double prev = L.eval_cdf(lo);
    for (int i = 1; i <= grid_size; ++i) {
        const double p = lo + (cut - lo) * i / grid_size;
        const double Hp = L.eval_cdf(p);
        if (Hp < prev - 1e-12)
            throw InvalidFamily("landscape " + L.name + ": H not nondecreasing");
        if (i < grid_size && L.eval_pdf(p) <= 0.0)
            throw InvalidFamily("landscape " + L.name + ": h <= 0 on interior");
        prev = Hp;
    }
}

PriceLandscape make_landscape(const LandscapeFamily& family) {
    PriceLandscape L = [&] {
        switch (family.kind) {
            case LandscapeFamily::Kind::Power:
                return make_power(family.n);
            case LandscapeFamily::Kind::ParetoHat:
                return make_pareto_hat();
            case LandscapeFamily::Kind::PiecewiseEps:
                return make_piecewise_eps(family.eps);
            case LandscapeFamily::Kind::EmpiricalLinear:
                return make_empirical(family.prices);
        }
        throw InvalidFamily("unknown landscape family");
    }();
    validate_landscape(L);
    return L;
}

double cum_H(const PriceLandscape& L, double a, double b) {
    if (a > b) throw DomainViolation("cum_H: requires a <= b");
    if (a < L.support.lo - 1e-12)
        throw DomainViolation("cum_H: a below support");
    a = std::max(a, L.support.lo);
    if (a >= b) return 0.0;
    if (L.cum_antideriv) {
        const double hi = L.support.hi;
        double r = 0.0;
        // H is constant at total_volume above the support.
        const double b_in = std::min(b, hi);
        const double a_in = std::min(a, hi);
        r += L.cum_antideriv(b_in) - L.cum_antideriv(a_in);
        if (b > hi) r += (b - std::max(a, hi)) * L.total_volume;
        return r;
    }
    return integrate([&](double z) { return L.eval_cdf(z); }, Interval(a, b));
}

double tail_price_mass(const PriceLandscape& L, double a) {
    if (a < L.support.lo - 1e-12)
        throw DomainViolation("tail_price_mass: a below support");
    if (L.tail_divergent)
        throw DivergentTail("tail_price_mass: landscape " + L.name +
                            " has divergent tail price mass");
    a = std::max(a, L.support.lo);
    if (a >= L.support.hi) return 0.0;
    if (L.tail_mass_fn) return L.tail_mass_fn(a);
    const ScalarFn g = [&](double z) { return z * L.eval_pdf(z); };
    if (!L.support.unbounded()) return integrate(g, Interval(a, L.support.hi));
    // Truncation heuristic: geometric cutoffs must show a Cauchy tail.
    double total = 0.0, lo = a, cut = std::max(2.0 * a, a + 1.0);
    double last_inc = kInf;
    for (int k = 0; k < 40; ++k) {
        const double inc = integrate(g, Interval(lo, cut));
        total += inc;
        if (inc <= 1e-12 * (1.0 + total)) return total;
        if (k > 2 && inc > 0.9 * last_inc)
            throw DivergentTail("tail_price_mass: no convergence under "
                                "geometric truncation");
        last_inc = inc;
        lo = cut;
        cut *= 2.0;
    }
    throw DivergentTail("tail_price_mass: truncation budget exhausted");
}

Assumption2Result check_assumption2(const PriceLandscape& L, int grid_size) {
    if (grid_size < 2) grid_size = 2;
    const double lo = L.support.lo;
    const double cut = L.validation_cut();
    double prev = -kInf;
    for (int i = 0; i <= grid_size; ++i) {
        const double v = lo + (cut - lo) * i / grid_size;
        const double m = v * L.eval_pdf(v);
        if (m < prev - 1e-12) return {false, v};
        prev = m;
    }
    return {true, 0.0};
}

double normalized_virtual_value(const PriceLandscape& L, double p) {
    if (!std::isfinite(L.total_volume))
        throw InfiniteTotalVolume("normalized_virtual_value: total volume is "
                                  "not finite");
    if (p < L.support.lo || p > L.support.hi)
        throw DomainViolation("normalized_virtual_value: p outside support");
    const double h = L.eval_pdf(p);
    return p - (L.total_volume - L.eval_cdf(p)) / h;
}

}  // namespace bidlab
