#pragma once

#include <string>
#include <vector>

#include "bidlab/numerics.hpp"

namespace bidlab {

/// Price distribution of the query space: H(p) is the volume of queries with
/// intrinsic price at most p, h = H' its density. Immutable after
/// construction.
struct PriceLandscape {
    Interval support;
    ScalarFn cdf;   // H on the support
    ScalarFn pdf;   // h on the support
    double total_volume;  // H(p_high) (limit value for unbounded supports)
    std::string name;

    // Optional closed forms. When absent the generic quadrature path is used.
    ScalarFn cum_antideriv;  // b -> integral of H over [p_low, b]
    ScalarFn tail_mass_fn;   // a -> integral of z*h(z) over [a, p_high]
    bool tail_divergent = false;

    /// H clamped: 0 below the support, total_volume above it.
    double eval_cdf(double p) const;
    /// h, zero outside the support.
    double eval_pdf(double p) const;
    /// Upper cut for validation grids: the 1-1e-6 volume quantile for
    /// unbounded supports, p_high otherwise.
    double validation_cut() const;
};

struct LandscapeFamily {
    enum class Kind { Power, ParetoHat, PiecewiseEps, EmpiricalLinear };
    Kind kind;
    int n = 1;                    // Power
    double eps = 0.0;             // PiecewiseEps
    std::vector<double> prices;   // EmpiricalLinear

    static LandscapeFamily power(int n);
    static LandscapeFamily pareto_hat();
    static LandscapeFamily piecewise_eps(double eps);
    static LandscapeFamily empirical(std::vector<double> prices);
};

PriceLandscape make_landscape(const LandscapeFamily& family);

/// Runs the Assumption-1 style sanity grid (H nondecreasing, no atom at
/// p_low, h > 0 on the interior). Throws InvalidFamily on violation. Called
/// by make_landscape; exposed for hand-built landscapes.
void validate_landscape(const PriceLandscape& L, int grid_size = 256);

/// Integral of H over [a, b].
double cum_H(const PriceLandscape& L, double a, double b);

/// Integral of z*h(z) over [a, p_high]. Throws DivergentTail when the tail
/// price mass does not converge (e.g. the Pareto-style landscape).
double tail_price_mass(const PriceLandscape& L, double a);

struct Assumption2Result {
    bool ok;
    double violation_at;  // meaningful only when !ok
};

/// Checks that v*h(v) is nondecreasing across a validation grid.
Assumption2Result check_assumption2(const PriceLandscape& L,
                                    int grid_size = 256);

/// Virtual value of the volume-normalized landscape:
/// p - (1 - H(p)/total) / (h(p)/total). Requires finite total volume.
double normalized_virtual_value(const PriceLandscape& L, double p);

}  // namespace bidlab
