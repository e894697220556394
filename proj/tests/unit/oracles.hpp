#pragma once

// independent reference computations used as test oracles; everything here
// deliberately avoids the library's own quadrature/FFT paths

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracles {

inline constexpr double pi = std::numbers::pi;

/// plain trapezoid log-integral of exp(g) on [lo, hi]
inline double trapezoid_log_integral(const std::function<double(double)>& g, double lo,
                                     double hi, int n) {
    double h = (hi - lo) / n;
    double gmax = -1e300;
    for (int i = 0; i <= n; ++i) gmax = std::max(gmax, g(lo + i * h));
    double s = 0.5 * (std::exp(g(lo) - gmax) + std::exp(g(hi) - gmax));
    for (int i = 1; i < n; ++i) s += std::exp(g(lo + i * h) - gmax);
    return gmax + std::log(s * h);
}

/// mean of f under density ~ exp(g) on [lo, hi]
inline double trapezoid_mean(const std::function<double(double)>& g,
                             const std::function<double(double)>& f, double lo, double hi,
                             int n) {
    double h = (hi - lo) / n;
    double gmax = -1e300;
    for (int i = 0; i <= n; ++i) gmax = std::max(gmax, g(lo + i * h));
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= n; ++i) {
        double x = lo + i * h;
        double w = (i == 0 || i == n) ? 0.5 : 1.0;
        double e = std::exp(g(x) - gmax);
        num += w * f(x) * e;
        den += w * e;
    }
    return num / den;
}

/// <q_x^2> of the pinned harmonic ring: (1/(beta N)) sum_j 1/(nu2 + 4 a sin^2(pi j/N))
inline double pinned_harmonic_qq(double a, double nu2, double beta, int n) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        double sj = std::sin(pi * j / n);
        s += 1.0 / (nu2 + 4.0 * a * sj * sj);
    }
    return s / (beta * n);
}

/// symmetric alpha-stable CDF by Gil-Pelaez inversion of exp(-|theta|^alpha)
inline double stable_cdf(double x, double alpha) {
    // F(x) = 1/2 + (1/pi) int_0^inf sin(theta x) exp(-theta^alpha) / theta dtheta
    // integrate to where the envelope is negligible, fine Simpson grid
    double theta_max = std::pow(-std::log(1e-17), 1.0 / alpha);
    int n = 40000;  // even
    double h = theta_max / n;
    auto f = [&](double th) {
        if (th <= 0.0) return x;  // limit of sin(th x)/th
        return std::sin(th * x) * std::exp(-std::pow(th, alpha)) / th;
    };
    double s = f(0.0) + f(theta_max);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return 0.5 + (s * h / 3.0) / pi;
}

/// two-sided Kolmogorov-Smirnov statistic of samples against a CDF
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double fx = cdf(samples[i]);
        d = std::max(d, std::abs(fx - i / n));
        d = std::max(d, std::abs((i + 1) / n - fx));
    }
    return d;
}

struct MeanVar {
    double mean = 0.0, stderr_ = 0.0;
};
inline MeanVar mean_stderr(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= v.size();
    double s2 = 0.0;
    for (double x : v) s2 += (x - m) * (x - m);
    s2 /= (v.size() - 1.0);
    return {m, std::sqrt(s2 / v.size())};
}

}  // namespace oracles
