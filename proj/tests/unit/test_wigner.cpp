#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chainlab/chain.hpp"
#include "chainlab/errors.hpp"
#include "chainlab/sampling.hpp"
#include "chainlab/wigner.hpp"
#include "oracles.hpp"

using namespace chainlab;

namespace {
constexpr double pi = std::numbers::pi;

// excite a single travelling lattice mode j0 with unit-ish energy
ChainState plane_wave(int n, int j0, double a) {
    ChainState s = ChainState::zeros(n, Representation::Stretch);
    double k = static_cast<double>(j0) / n;
    double omega = 2.0 * std::sqrt(a) * std::abs(std::sin(pi * k));
    double amp = 0.05;
    std::vector<double> q(n);
    for (int x = 0; x < n; ++x) q[x] = amp * std::cos(2.0 * pi * k * x);
    for (int x = 0; x < n; ++x) s.conf[x] = q[(x + 1) % n] - q[x];
    for (int x = 0; x < n; ++x) s.p[x] = amp * omega * std::sin(2.0 * pi * k * x);
    return s;
}

}  // namespace

TEST_SUITE("wigner") {

TEST_CASE("input contracts") {
    RngStream rng(1, 0);
    auto anharmonic = PotentialSpec::fpu(1.0, 0.0, 1.0);
    ChainState s = sample_equilibrium(PotentialSpec::harmonic(), 0.0, 0.0, 1.0, 64, rng);
    CHECK_THROWS_AS(wigner_transform(s, anharmonic, 1.0 / 8), UnsupportedError);
    ChainState odd = ChainState::zeros(60, Representation::Stretch);
    CHECK_THROWS_AS(wigner_transform(odd, PotentialSpec::harmonic(), 1.0 / 8), ConfigError);
}

TEST_CASE("single mode concentrates at its wavenumber with the mode energy") {
    auto spec = PotentialSpec::harmonic(1.0);
    const int n = 512;
    const int j0 = 96;  // k0 = 0.1875
    ChainState s = plane_wave(n, j0, 1.0);
    WignerOptions opt;
    opt.n_y = 16;
    opt.n_k = 64;
    WignerField w = wigner_transform(s, spec, 1.0 / 16, opt);

    CHECK(w.integral() == doctest::Approx(total_energy(s, spec)).epsilon(1e-6));

    // k marginal peaks in the cell containing k0 (and possibly its mirror)
    std::vector<double> kmarg(opt.n_k, 0.0);
    for (int iy = 0; iy < opt.n_y; ++iy)
        for (int ik = 0; ik < opt.n_k; ++ik) kmarg[ik] += w.at(iy, ik);
    int cell_k0 = j0 * opt.n_k / n;
    double peak = *std::max_element(kmarg.begin(), kmarg.end());
    CHECK(kmarg[cell_k0] == doctest::Approx(peak).epsilon(1e-9));
    double total = 0.0;
    for (double v : kmarg) total += v;
    CHECK(kmarg[cell_k0] / total > 0.45);  // mirror mode carries the rest

    // flat in y: every y cell within a few percent of the mean
    for (int iy = 0; iy < opt.n_y; ++iy) {
        double row = 0.0;
        for (int ik = 0; ik < opt.n_k; ++ik) row += w.at(iy, ik);
        CHECK(row == doctest::Approx(total / opt.n_y).epsilon(0.05));
    }
}

TEST_CASE("energy sum rule holds for random equilibrium states") {
    auto spec = PotentialSpec::harmonic(1.0);
    RngStream rng(3, 0);
    for (int rep = 0; rep < 3; ++rep) {
        ChainState s = sample_equilibrium(spec, 0.0, 0.0, 0.7, 256, rng);
        WignerField w = wigner_transform(s, spec, 1.0 / 16);
        CHECK(w.integral() == doctest::Approx(total_energy(s, spec)).epsilon(1e-6));
    }
    // pinned harmonic states carry displacements directly
    auto pinned = PotentialSpec::harmonic(1.0).with_quadratic_pinning(1.0);
    ChainState q = sample_gibbs_mcmc(pinned, 1.0, 256, 200, rng);
    WignerField wq = wigner_transform(q, pinned, 1.0 / 16);
    CHECK(wq.integral() == doctest::Approx(total_energy(q, pinned)).epsilon(1e-6));
}

TEST_CASE("equilibrium ensemble is flat in y and k") {
    auto spec = PotentialSpec::harmonic(1.0);
    RngStream rng(5, 0);
    const double temperature = 1.0;
    WignerField mean;
    const int draws = 400;
    for (int d = 0; d < draws; ++d) {
        ChainState s = sample_equilibrium(spec, 0.0, 0.0, 1.0 / temperature, 256, rng);
        WignerOptions opt;
        opt.n_y = 8;
        opt.n_k = 8;
        WignerField w = wigner_transform(s, spec, 1.0 / 16, opt);
        wigner_accumulate(mean, w, d);
    }
    // equipartition: each cell's density ~ T with MC fluctuations
    for (double v : mean.values) CHECK(v == doctest::Approx(temperature).epsilon(0.1));
}

TEST_CASE("wave packet moves at the group velocity") {
    auto spec = PotentialSpec::harmonic(1.0);
    const int n = 1024;
    const double k0 = 0.22;
    const double sigma_x = 30.0;
    const int x0 = 300;
    // gaussian envelope times a carrier; p set for a right-mover via the
    // analytic time derivative
    ChainState s = ChainState::zeros(n, Representation::Stretch);
    std::vector<double> q(n);
    double omega0 = 2.0 * std::sin(pi * k0);
    for (int x = 0; x < n; ++x) {
        double env = std::exp(-0.5 * (x - x0) * (x - x0) / (sigma_x * sigma_x));
        q[x] = 0.05 * env * std::cos(2.0 * pi * k0 * x);
        s.p[x] = 0.05 * env * omega0 * std::sin(2.0 * pi * k0 * x);
    }
    for (int x = 0; x < n; ++x) s.conf[x] = q[(x + 1) % n] - q[x];

    auto centroid = [&](const ChainState& st) {
        WignerOptions opt;
        opt.n_y = 128;
        opt.n_k = 32;
        WignerField w = wigner_transform(st, spec, 1.0, opt);
        // weight by the k-cells around k0 only, to drop the mirror branch
        double num = 0.0, den = 0.0;
        for (int iy = 0; iy < opt.n_y; ++iy)
            for (int ik = 0; ik < opt.n_k; ++ik) {
                double kc = w.k_center(ik);
                if (std::abs(kc - k0) > 0.08) continue;
                double v = std::max(w.at(iy, ik), 0.0);
                num += v * w.y_center(iy);
                den += v;
            }
        return num / den;
    };

    double c_before = centroid(s);
    RngStream rng(7, 0);
    const double t_run = 200.0;
    evolve(s, spec, {0.0, 0.02}, t_run, rng);
    double c_after = centroid(s);

    double v_group = std::cos(pi * k0);  // omega'(k0)/(2 pi) with c = 2
    double expected = v_group * t_run;
    CHECK(c_after - c_before == doctest::Approx(expected).epsilon(0.08));
}

}  // TEST_SUITE
