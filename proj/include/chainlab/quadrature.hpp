#pragma once

#include <functional>

namespace chainlab {

/// Adaptive Gauss-Kronrod integral of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12);

/// log of integral_R exp(g(r)) dr for unimodal-tailed g that -> -inf at +-inf.
/// Locates the maximum of g near `guess`, truncates where exp(g - g_max) < 1e-16
/// and integrates the rescaled integrand adaptively.
struct LogIntegral {
    double log_value;   // log of the integral
    double peak;        // argmax of g
    double lo, hi;      // truncation interval actually used
};
LogIntegral log_integral_exp(const std::function<double(double)>& g, double guess = 0.0);

}  // namespace chainlab
