#include "bidlab/valuation.hpp"

#include <cmath>

namespace bidlab {

ValuationDist make_uniform(double lo, double hi) {
    if (!(lo < hi) || lo < 0)
        throw InvalidFamily("uniform valuation requires 0 <= lo < hi");
    const double w = hi - lo;
    return {Interval(lo, hi),
            [=](double v) { return std::clamp((v - lo) / w, 0.0, 1.0); },
            [=](double v) { return (v < lo || v > hi) ? 0.0 : 1.0 / w; },
            true,
            0.0,
            "uniform"};
}

ValuationDist make_truncated_pareto(double alpha, double lo, double hi) {
    if (!(alpha > 0) || !(0 < lo && lo < hi))
        throw InvalidFamily("truncated_pareto requires alpha > 0, 0 < lo < hi");
    const double norm = 1.0 - std::pow(lo / hi, alpha);
    return {Interval(lo, hi),
            [=](double v) {
                if (v <= lo) return 0.0;
                if (v >= hi) return 1.0;
                return (1.0 - std::pow(lo / v, alpha)) / norm;
            },
            [=](double v) {
                if (v < lo || v > hi) return 0.0;
                return alpha * std::pow(lo, alpha) / std::pow(v, alpha + 1) /
                       norm;
            },
            true,
            0.0,
            "truncated_pareto"};
}

ValuationDist make_point_mass(double v) {
    if (v < 0) throw InvalidFamily("point mass requires v >= 0");
    ValuationDist D{Interval(v - 1e-12, v + 1e-12),
                    [=](double x) { return x < v ? 0.0 : 1.0; },
                    [](double) { return 0.0; },
                    false,
                    v,
                    "point"};
    return D;
}

double virtual_value(const ValuationDist& D, double v) {
    if (!D.has_density)
        throw NoDensity("virtual_value: point-mass distribution has no density");
    if (v < D.support.lo || v > D.support.hi)
        throw DomainViolation("virtual_value: v outside support");
    const double f = D.pdf(v);
    const double tail = 1.0 - D.cdf(v);
    if (tail <= 0.0) return v;  // phi(v_bar) = v_bar
    return v - tail / f;
}

bool check_regularity(const ValuationDist& D, int grid_size) {
    if (!D.has_density)
        throw NoDensity("check_regularity: point-mass distribution");
    if (grid_size < 2) grid_size = 2;
    const double lo = D.support.lo, hi = D.support.hi;
    double prev = -kInf;
    for (int i = 0; i <= grid_size; ++i) {
        const double v = lo + (hi - lo) * i / grid_size;
        const double phi = virtual_value(D, v);
        if (phi < prev - 1e-12) return false;
        prev = phi;
    }
    return true;
}

double myerson_reserve(const ValuationDist& D) {
    if (!check_regularity(D))
        throw Irregular("myerson_reserve: virtual value not nondecreasing");
    const double lo = D.support.lo, hi = D.support.hi;
    if (virtual_value(D, lo) >= -1e-14) return lo;
    const ScalarFn phi = [&](double v) { return virtual_value(D, v); };
    return find_root(phi, Interval(lo, hi), {1e-12, 1e-12, 200});
}

double expectation(const ValuationDist& D, const ScalarFn& g) {
    if (!D.has_density) {
        const double y = g(D.point);
        if (!std::isfinite(y))
            throw NonFiniteIntegrand("expectation: g(point) not finite");
        return y;
    }
    return integrate([&](double v) { return g(v) * D.pdf(v); }, D.support);
}

}  // namespace bidlab
