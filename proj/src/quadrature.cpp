#include "chainlab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "chainlab/errors.hpp"

namespace chainlab {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    double val = gauss_kronrod<double, 15>::integrate(f, a, b, 12, rel_tol, &err);
    return val;
}

namespace {

// golden-section refinement after a coarse bracket of the maximum
double locate_peak(const std::function<double(double)>& g, double guess) {
    double x = guess, step = 0.5;
    double gx = g(x);
    // hill-climb to bracket
    for (int iter = 0; iter < 200; ++iter) {
        double gl = g(x - step), gr = g(x + step);
        if (gl <= gx && gr <= gx) break;
        if (gr > gx) { x += step; gx = gr; } else { x -= step; gx = gl; }
        step *= 1.6;
    }
    double a = x - step, b = x + step;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double gc = g(c), gd = g(d);
    while (b - a > 1e-12 * (1.0 + std::abs(a) + std::abs(b))) {
        if (gc > gd) { b = d; d = c; gd = gc; c = b - phi * (b - a); gc = g(c); }
        else         { a = c; c = d; gc = gd; d = a + phi * (b - a); gd = g(d); }
    }
    return 0.5 * (a + b);
}

// march outward until g drops below cutoff relative to the peak
double find_cut(const std::function<double(double)>& g, double peak, double gmax,
                double dir, double drop) {
    double step = 0.25, x = peak;
    for (int iter = 0; iter < 400; ++iter) {
        double xn = x + dir * step;
        if (g(xn) < gmax - drop) {
            // bisect the crossing for a tight bound
            double lo = x, hi = xn;
            for (int k = 0; k < 60; ++k) {
                double mid = 0.5 * (lo + hi);
                (g(mid) < gmax - drop ? hi : lo) = mid;
            }
            return hi;
        }
        x = xn;
        step *= 1.5;
    }
    throw NumericalError("log_integral_exp: integrand does not decay; check potential growth");
}

}  // namespace

LogIntegral log_integral_exp(const std::function<double(double)>& g, double guess) {
    const double drop = -std::log(1e-16);  // truncate below 1e-16 of the peak
    double peak = locate_peak(g, guess);
    double gmax = g(peak);
    if (!std::isfinite(gmax))
        throw NumericalError("log_integral_exp: non-finite integrand at peak");
    double lo = find_cut(g, peak, gmax, -1.0, drop);
    double hi = find_cut(g, peak, gmax, +1.0, drop);
    double val = integrate([&](double r) { return std::exp(g(r) - gmax); }, lo, hi, 1e-13);
    return {gmax + std::log(val), peak, lo, hi};
}

}  // namespace chainlab
