#include "bidlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bidlab {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!std::isfinite(lo)) throw DomainViolation("Interval: lo must be finite");
    if (!(lo < hi)) throw DomainViolation("Interval: requires lo < hi");
}

double find_root(const ScalarFn& f, Interval bracket, Tolerance tol) {
    if (bracket.unbounded())
        throw DomainViolation("find_root: bracket must be finite");

    double a = bracket.lo, b = bracket.hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0))
        throw NoSignChange("find_root: f has the same sign at both endpoints");

    // Brent: bisection + secant + inverse quadratic interpolation.
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < tol.max_iter; ++iter) {
        if ((fb > 0) == (fc > 0)) {
            c = a; fc = fa;
            d = b - a; e = d;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 0.5 * (tol.rel_tol * std::fabs(b) + tol.abs_tol);
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0 || std::fabs(fb) <= tol.abs_tol)
            return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q),
                                   std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        if (std::fabs(d) > tol1)
            b += d;
        else
            b += (xm > 0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw MaxIterExceeded("find_root: no convergence in " +
                          std::to_string(tol.max_iter) + " iterations");
}

Interval expand_bracket(const ScalarFn& f, double lo, double seed) {
    if (seed <= lo)
        throw DomainViolation("expand_bracket: seed must exceed lo");
    const double flo = f(lo);
    double hi = seed;
    const double cap = std::ldexp(seed - lo, 60);
    while (true) {
        const double fhi = f(hi);
        if (fhi == 0.0 || (flo > 0) != (fhi > 0)) return {lo, hi};
        if (hi - lo >= cap)
            throw NoSignChange("expand_bracket: no sign change up to 2^60*seed");
        hi = lo + 2.0 * (hi - lo);
    }
}

namespace {

struct QuadState {
    const ScalarFn& f;
    long evals = 0;
    long max_evals = 0;

    double eval(double x) {
        ++evals;
        const double y = f(x);
        if (std::isnan(y))
            throw NonFiniteIntegrand("integrate: integrand returned NaN");
        return y;
    }
};

double adaptive_simpson(QuadState& st, double a, double b, double fa,
                        double fm, double fb, double whole, double eps,
                        double min_h, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = st.eval(lm), frm = st.eval(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || st.evals > st.max_evals)
        throw MaxIterExceeded("integrate: refinement budget exhausted");
    // The width floor bounds the work near jump discontinuities, where the
    // Simpson error estimate shrinks only linearly with the panel width.
    if (std::fabs(delta) <= 15.0 * eps || h <= min_h)
        return left + right + delta / 15.0;
    return adaptive_simpson(st, a, m, fa, flm, fm, left, eps * 0.5, min_h,
                            depth - 1) +
           adaptive_simpson(st, m, b, fm, frm, fb, right, eps * 0.5, min_h,
                            depth - 1);
}

double integrate_finite(QuadState& st, double a, double b, double eps) {
    if (a == b) return 0.0;
    // Seed with a few panels so narrow features are not missed.
    const int panels = 8;
    double total = 0.0;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h, x1 = a + (i + 1) * h;
        const double fm = st.eval(0.5 * (x0 + x1));
        const double f0 = st.eval(x0), f1 = st.eval(x1);
        const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += adaptive_simpson(st, x0, x1, f0, fm, f1, whole,
                                  eps / panels, 1e-12 * (b - a), 48);
    }
    return total;
}

}  // namespace

double integrate(const ScalarFn& f, Interval domain, Tolerance tol) {
    QuadState st{f};
    st.max_evals = 4'000'000;
    const double eps = tol.abs_tol;
    if (!domain.unbounded())
        return integrate_finite(st, domain.lo, domain.hi, eps);

    // z = lo + t/(1-t): maps [0,1) onto [lo, inf).
    const double lo = domain.lo;
    const ScalarFn g = [&](double t) {
        const double omt = 1.0 - t;
        if (omt <= 0.0) return 0.0;
        const double z = lo + t / omt;
        const double fz = f(z);
        if (std::isnan(fz))
            throw NonFiniteIntegrand("integrate: integrand returned NaN");
        const double val = fz / (omt * omt);
        // Decaying integrands underflow before the weight blows up; treat a
        // residual non-finite product as an integrand failure.
        if (std::isinf(val))
            throw NonFiniteIntegrand("integrate: transformed integrand diverges");
        return val;
    };
    QuadState st2{g};
    st2.max_evals = 4'000'000;
    return integrate_finite(st2, 0.0, 1.0 - 1e-14, eps);
}

namespace {

MaxResult golden_section(const ScalarFn& f, double a, double b, Tolerance tol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int iter = 0; iter < tol.max_iter; ++iter) {
        if (b - a <= tol.abs_tol + tol.rel_tol * std::fabs(a)) break;
        if (f1 >= f2) {  // ties shrink toward the left end
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

}  // namespace

MaxResult maximize_1d(const ScalarFn& f, Interval domain, Tolerance tol,
                      int grid_size) {
    if (domain.unbounded())
        throw DomainViolation("maximize_1d: domain must be bounded");
    if (grid_size < 2) grid_size = 2;

    const double a = domain.lo, b = domain.hi;
    double best_x = a, best_f = f(a);
    for (int i = 1; i <= grid_size; ++i) {
        const double x = a + (b - a) * i / grid_size;
        const double fx = f(x);
        if (fx > best_f) {  // strict: ties stay at the smaller abscissa
            best_x = x; best_f = fx;
        }
    }
    const double cell = (b - a) / grid_size;
    const double lo = std::max(a, best_x - cell);
    const double hi = std::min(b, best_x + cell);
    MaxResult refined = golden_section(f, lo, hi, tol);
    if (refined.max > best_f) return refined;
    return {best_x, best_f};
}

}  // namespace bidlab
