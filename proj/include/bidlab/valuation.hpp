#pragma once

#include <string>

#include "bidlab/numerics.hpp"

namespace bidlab {

/// Bidder valuation distribution F with density f. PointMass instances have
/// no density and are rejected by the density-based operations.
struct ValuationDist {
    Interval support;
    ScalarFn cdf;
    ScalarFn pdf;
    bool has_density = true;
    double point = 0.0;  // valid only when !has_density
    std::string name;
};

ValuationDist make_uniform(double lo, double hi);
ValuationDist make_truncated_pareto(double alpha, double lo, double hi);
ValuationDist make_point_mass(double v);

/// phi_F(v) = v - (1 - F(v)) / f(v).
double virtual_value(const ValuationDist& D, double v);

/// True iff phi_F is nondecreasing on a validation grid.
bool check_regularity(const ValuationDist& D, int grid_size = 256);

/// Root of phi_F, clamped to the lower support end when phi_F(lo) >= 0.
/// Throws Irregular when the regularity check fails.
double myerson_reserve(const ValuationDist& D);

/// E_v[g(v)]; direct evaluation for point masses, quadrature otherwise.
double expectation(const ValuationDist& D, const ScalarFn& g);

}  // namespace bidlab
