#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chainlab/errors.hpp"
#include "chainlab/fracheat.hpp"
#include "oracles.hpp"

using namespace chainlab;

namespace {
constexpr double pi = std::numbers::pi;

FracHeatProblem gaussian_problem(double alpha, double c, double length, int n, double width) {
    FracHeatProblem p;
    p.alpha = alpha;
    p.c = c;
    p.length = length;
    p.u0.resize(n);
    for (int i = 0; i < n; ++i) {
        double y = (i + 0.5) * length / n - 0.5 * length;
        p.u0[i] = std::exp(-0.5 * y * y / (width * width));
    }
    return p;
}

double mass(const std::vector<double>& u, double dy) {
    double s = 0.0;
    for (double v : u) s += v;
    return s * dy;
}

double l2(const std::vector<double>& u) {
    double s = 0.0;
    for (double v : u) s += v * v;
    return std::sqrt(s);
}

}  // namespace

TEST_SUITE("fracheat") {

TEST_CASE("identity at t = 0 and input validation") {
    auto p = gaussian_problem(1.5, 1.0, 40.0, 256, 1.0);
    auto u = solve(p, 0.0);
    for (int i = 0; i < 256; ++i) CHECK(u[i] == doctest::Approx(p.u0[i]).epsilon(1e-13));

    FracHeatProblem bad = p;
    bad.alpha = 2.5;
    CHECK_THROWS_AS(solve(bad, 1.0), ConfigError);
    bad = p;
    bad.u0.resize(100);  // not a power of two
    CHECK_THROWS_AS(solve(bad, 1.0), ConfigError);
    CHECK_THROWS_AS(solve(p, -1.0), ConfigError);
}

TEST_CASE("alpha = 2 reproduces the classical heat kernel") {
    const double c = 0.7, t = 1.3, w0 = 1.0, length = 60.0;
    auto p = gaussian_problem(2.0, c, length, 1024, w0);
    auto u = solve(p, t);
    // gaussian bump of variance w0^2 spreads to w0^2 + 2 c t
    double var = w0 * w0 + 2.0 * c * t;
    double amp = w0 / std::sqrt(var);
    for (int i = 0; i < 1024; ++i) {
        double y = (i + 0.5) * length / 1024 - 0.5 * length;
        double ref = amp * std::exp(-0.5 * y * y / var);
        CHECK(u[i] == doctest::Approx(ref).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("mass conservation, contraction, semigroup property") {
    auto p = gaussian_problem(1.5, 1.0, 40.0, 512, 0.8);
    double dy = p.dy();
    auto u1 = solve(p, 0.9);
    CHECK(mass(u1, dy) == doctest::Approx(mass(p.u0, dy)).epsilon(1e-12));
    CHECK(l2(u1) <= l2(p.u0) * (1.0 + 1e-12));

    FracHeatProblem p2 = p;
    p2.u0 = u1;
    auto two_step = solve(p2, 0.6);
    auto one_shot = solve(p, 1.5);
    for (int i = 0; i < 512; ++i)
        CHECK(two_step[i] == doctest::Approx(one_shot[i]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("stable sampler: gaussian and cauchy members") {
    RngStream rng(83, 0);
    const int n = 100000;
    auto g = sample_stable(2.0, 1.0, n, rng);
    double m2 = 0.0;
    for (double x : g) m2 += x * x;
    m2 /= n;
    // var = 2 scale; stderr of the variance ~ sqrt(2/n)*var
    CHECK(std::abs(m2 - 2.0) <= 3.0 * 2.0 * std::sqrt(2.0 / n));

    auto c = sample_stable(1.0, 1.0, n, rng);
    std::sort(c.begin(), c.end());
    double med = c[n / 2];
    double iqr = c[3 * n / 4] - c[n / 4];
    // cauchy quartiles at +-1: iqr = 2, median 0; quartile stderr ~ 1/(f sqrt n)
    double q_se = 1.0 / (std::sqrt(static_cast<double>(n)) * (1.0 / (2.0 * pi)));
    CHECK(std::abs(med) <= 3.0 * q_se / 2.0);
    CHECK(std::abs(iqr - 2.0) <= 3.0 * q_se);
}

TEST_CASE("stable sampler: characteristic function at alpha = 1.5") {
    RngStream rng(89, 0);
    const int n = 200000;
    const double scale = 0.7;
    auto xs = sample_stable(1.5, scale, n, rng);
    for (double theta : {0.3, 0.7, 1.2}) {
        double re = 0.0;
        for (double x : xs) re += std::cos(theta * x);
        re /= n;
        double expected = std::exp(-scale * std::pow(theta, 1.5));
        // Var(cos) <= 1/2/n
        CHECK(std::abs(re - expected) <= 3.0 * std::sqrt(0.5 / n));
    }
}

TEST_CASE("stable sampler: KS test against the numerically integrated CDF") {
    RngStream rng(97, 0);
    const int n = 50000;
    const double crit_1pct = 1.6276 / std::sqrt(static_cast<double>(n));
    for (double alpha : {1.0, 1.5, 2.0}) {
        auto xs = sample_stable(alpha, 1.0, n, rng);
        double d = oracles::ks_statistic(
            xs, [&](double x) { return oracles::stable_cdf(x, alpha); });
        CHECK(d < crit_1pct);
    }
}

TEST_CASE("point-mass evolution matches the stable sampler density") {
    // narrow gaussian initial condition; the solution is that gaussian
    // convolved with the stable kernel of scale c t
    const double alpha = 1.5, c = 1.0, t = 1.0, length = 80.0, w0 = 0.25;
    const int n = 1024;
    auto p = gaussian_problem(alpha, c, length, n, w0);
    // normalize to unit mass so the profile is a probability density
    double m = mass(p.u0, p.dy());
    for (auto& v : p.u0) v /= m;
    auto u = solve(p, t);

    RngStream rng(101, 0);
    const int ns = 400000;
    auto stable = sample_stable(alpha, c * t, ns, rng);
    std::vector<double> hist(n, 0.0);
    int inside = 0;
    for (int i = 0; i < ns; ++i) {
        double y = 0.5 * length + w0 * rng.normal() + stable[i];
        if (y < 0.0 || y >= length) continue;  // wrap-around mass is ~1e-4 here
        hist[static_cast<int>(y / p.dy())] += 1.0;
        ++inside;
    }
    for (auto& h : hist) h /= inside * p.dy();
    double total = mass(u, p.dy());
    double l1 = 0.0;
    for (int i = 0; i < n; ++i) l1 += std::abs(hist[i] - u[i] / total) * p.dy();
    CHECK(l1 <= 0.05);
}

TEST_CASE("ladder self-test: fractional solution in place of the transport run") {
    const double alpha = 1.5, c_true = 0.37, length = 40.0, t = 1.0;
    const int n = 256;
    auto base = gaussian_problem(alpha, c_true, length, n, 1.0);
    ScalingLadder ladder;
    ladder.epsilons = {1.0 / 8, 1.0 / 16, 1.0 / 32};
    ladder.length = length;
    ladder.t = t;
    ladder.alpha = alpha;
    for (std::size_t i = 0; i < 3; ++i) ladder.profiles.push_back(solve(base, t));

    FracHeatProblem guess = base;
    guess.c = 1.0;  // wrong on purpose; the fit must recover c_true
    auto rep = kinetic_to_fractional_check(ladder, guess, true);
    CHECK(rep.fitted_c == doctest::Approx(c_true).epsilon(1e-4));
    for (double d : rep.l2_distances) CHECK(d <= 1e-6);
    CHECK(rep.monotone_decreasing);
}

}  // TEST_SUITE
