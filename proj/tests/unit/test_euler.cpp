#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chainlab/errors.hpp"
#include "chainlab/euler.hpp"
#include "oracles.hpp"

using namespace chainlab;

namespace {
constexpr double pi = std::numbers::pi;

ThermoTable harmonic_table() {
    ThermoTableSpec ts;
    ts.r_min = -1.2;
    ts.r_max = 1.2;
    ts.u_max = 3.0;
    ts.nr = 96;
    ts.nu = 96;
    return ThermoTable(PotentialSpec::harmonic(1.0), ts);
}

HydroField sine_wave(int n, double re, double base_u, double amp) {
    HydroField f = HydroField::uniform(n, 1.0, re, 0.0, base_u);
    for (int i = 0; i < n; ++i) {
        f.r[i] = re + amp * std::sin(2.0 * pi * f.y_center(i));
        f.e[i] = base_u;
    }
    return f;
}

}  // namespace

TEST_SUITE("euler") {

TEST_CASE("constant field is a machine-precision fixed point") {
    auto table = harmonic_table();
    HydroField f = HydroField::uniform(64, 1.0, 0.2, 0.0, 1.0);
    HydroField g = f;
    for (int s = 0; s < 50; ++s) euler_step(g, table, 0.4);
    for (int i = 0; i < 64; ++i) {
        CHECK(g.r[i] == doctest::Approx(f.r[i]).epsilon(1e-14));
        CHECK(g.p[i] == doctest::Approx(f.p[i]).epsilon(1e-14));
        CHECK(g.e[i] == doctest::Approx(f.e[i]).epsilon(1e-14));
    }
}

TEST_CASE("exact discrete conservation of the three invariants") {
    auto table = harmonic_table();
    HydroField f = sine_wave(128, 0.0, 1.0, 0.05);
    auto t0 = f.totals();
    for (int s = 0; s < 200; ++s) euler_step(f, table, 0.4);
    auto t1 = f.totals();
    CHECK(std::abs(t1.r - t0.r) <= 1e-12 * (1.0 + std::abs(t0.r)) * 128);
    CHECK(std::abs(t1.p - t0.p) <= 1e-12 * 128);
    CHECK(std::abs(t1.e - t0.e) <= 1e-12 * t0.e * 128);
}

TEST_CASE("linear waves travel at the harmonic sound speed") {
    // P = r for the a=1 harmonic family, so the linearized system has unit
    // sound speed; a standing r-wave with p=0 oscillates at omega = 2 pi c / L
    auto table = harmonic_table();
    const int n = 512;
    HydroField f = sine_wave(n, 0.0, 1.0, 0.01);
    // track the first fourier mode of r through one half period
    auto mode = [&](const HydroField& g) {
        double re = 0.0;
        for (int i = 0; i < n; ++i) re += g.r[i] * std::sin(2.0 * pi * g.y_center(i));
        return re * 2.0 / n;
    };
    double a0 = mode(f);
    CHECK(a0 == doctest::Approx(0.01).epsilon(1e-3));
    // standing wave: amplitude(t) = a0 cos(2 pi c t); first zero at t = L/(4c)
    double t_zero = -1.0;
    double prev = a0;
    while (f.time < 0.6) {
        euler_step(f, table, 0.25);
        double cur = mode(f);
        if (prev > 0.0 && cur <= 0.0) {
            t_zero = f.time;
            break;
        }
        prev = cur;
    }
    REQUIRE(t_zero > 0.0);
    double speed = 1.0 / (4.0 * t_zero);
    CHECK(speed == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("entropy production halves with the cell width on smooth data") {
    ThermoTableSpec ts;
    ts.r_min = -1.0;
    ts.r_max = 1.0;
    ts.u_max = 3.0;
    ts.nr = 96;
    ts.nu = 96;
    ThermoTable table(PotentialSpec::fpu(1.0, 0.3, 0.6), ts);

    auto drift = [&](int n) {
        HydroField f = HydroField::uniform(n, 1.0, 0.0, 0.0, 1.0);
        for (int i = 0; i < n; ++i) {
            f.r[i] = 0.12 * std::sin(2.0 * pi * f.y_center(i));
            f.p[i] = 0.05 * std::cos(2.0 * pi * f.y_center(i));
            f.e[i] = 1.0 + 0.5 * f.p[i] * f.p[i] + 0.05 * std::sin(4.0 * pi * f.y_center(i));
        }
        double s0 = entropy_diagnostic(f, table).total;
        euler_evolve(f, table, 0.4, 0.15);
        return entropy_diagnostic(f, table).total - s0;
    };
    double d1 = drift(128), d2 = drift(256);
    CHECK(std::abs(d2) < std::abs(d1));
    CHECK(std::abs(d1) / std::abs(d2) == doctest::Approx(2.0).epsilon(0.45));
}

TEST_CASE("galilean boost commutes with the scheme") {
    auto table = harmonic_table();
    const int n = 96;
    const double v0 = 0.3;
    HydroField f = sine_wave(n, 0.0, 1.2, 0.04);
    HydroField g = f;
    for (int i = 0; i < n; ++i) {
        g.p[i] = f.p[i] + v0;
        g.e[i] = f.e[i] + v0 * f.p[i] + 0.5 * v0 * v0;
    }
    for (int s = 0; s < 60; ++s) {
        euler_step(f, table, 0.3);
        euler_step(g, table, 0.3);
    }
    for (int i = 0; i < n; ++i) {
        CHECK(g.r[i] == doctest::Approx(f.r[i]).epsilon(1e-12));
        CHECK(g.p[i] - v0 == doctest::Approx(f.p[i]).epsilon(1e-12));
        double uf = f.e[i] - 0.5 * f.p[i] * f.p[i];
        double ug = g.e[i] - 0.5 * g.p[i] * g.p[i];
        CHECK(ug == doctest::Approx(uf).epsilon(1e-11));
    }
}

TEST_CASE("domain exit raises a blow-up error with location") {
    auto table = harmonic_table();
    HydroField f = HydroField::uniform(32, 1.0, 0.0, 0.0, 1.0);
    f.e[7] = 0.02;  // internal energy below the table floor
    try {
        euler_step(f, table, 0.4);
        FAIL("expected BlowupError");
    } catch (const BlowupError& e) {
        CHECK(e.cell == 7);
    }
    CHECK_THROWS_AS(euler_step(f, table, 0.9), ConfigError);  // cfl out of range
}

}  // TEST_SUITE
