#pragma once

#include <functional>
#include <limits>

#include "bidlab/errors.hpp"

namespace bidlab {

using ScalarFn = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi]; hi may be +inf, lo must be finite and < hi.
struct Interval {
    double lo;
    double hi;

    Interval(double lo_, double hi_);
    bool unbounded() const { return hi == kInf; }
    double width() const { return hi - lo; }
};

struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_iter = 200;
};

/// Brent root finder. Requires a sign change (or an exact zero) on the bracket.
double find_root(const ScalarFn& f, Interval bracket, Tolerance tol = {});

/// Grow hi geometrically (x2) from seed until f changes sign against f(lo).
/// Caps at 2^60 * seed.
Interval expand_bracket(const ScalarFn& f, double lo, double seed);

/// Adaptive quadrature. Semi-infinite domains are mapped to [0,1) with
/// z = lo + t/(1-t).
double integrate(const ScalarFn& f, Interval domain, Tolerance tol = {});

struct MaxResult {
    double argmax;
    double max;
};

/// Uniform-grid scan followed by golden-section refinement around the best
/// cell. Ties on the grid break toward domain.lo. The result is never worse
/// than the best grid point.
MaxResult maximize_1d(const ScalarFn& f, Interval domain, Tolerance tol = {},
                      int grid_size = 256);

}  // namespace bidlab
