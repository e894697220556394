#include "chainlab/chain.hpp"

#include <cmath>
#include <numeric>

#include "chainlab/errors.hpp"

namespace chainlab {

ChainState ChainState::zeros(int n, Representation rep) {
    ChainState s;
    s.n_sites = n;
    s.rep = rep;
    s.p.assign(n, 0.0);
    s.conf.assign(n, 0.0);
    return s;
}

void ChainState::check(const PotentialSpec& spec) const {
    if (n_sites < 3) throw ConfigError("chain needs at least 3 sites");
    if (static_cast<int>(p.size()) != n_sites || static_cast<int>(conf.size()) != n_sites)
        throw ConfigError("chain state arrays must have length n_sites");
    bool want_q = spec.pinned();
    if (want_q != (rep == Representation::Displacement))
        throw ConfigError("chain representation does not match pinning of the potential");
}

namespace {

inline int wrap(int i, int n) { return (i % n + n) % n; }

void forces(const ChainState& s, const PotentialSpec& spec, std::vector<double>& f,
            std::vector<double>& dv) {
    const int n = s.n_sites;
    f.resize(n);
    dv.resize(n);
    if (s.rep == Representation::Stretch) {
        for (int x = 0; x < n; ++x) dv[x] = spec.dv(s.conf[x]);
        for (int x = 0; x < n; ++x) f[x] = dv[x] - dv[wrap(x - 1, n)];
    } else {
        for (int x = 0; x < n; ++x) dv[x] = spec.dv(s.conf[wrap(x + 1, n)] - s.conf[x]);
        for (int x = 0; x < n; ++x)
            f[x] = dv[x] - dv[wrap(x - 1, n)] - spec.dw(s.conf[x]);
    }
}

}  // namespace

void hamiltonian_step(ChainState& state, const PotentialSpec& spec, double dt) {
    const int n = state.n_sites;
    static thread_local std::vector<double> f, dv;
    forces(state, spec, f, dv);
    for (int x = 0; x < n; ++x) state.p[x] += 0.5 * dt * f[x];
    if (state.rep == Representation::Stretch) {
        for (int x = 0; x < n; ++x) state.conf[x] += dt * (state.p[wrap(x + 1, n)] - state.p[x]);
    } else {
        for (int x = 0; x < n; ++x) state.conf[x] += dt * state.p[x];
    }
    forces(state, spec, f, dv);
    for (int x = 0; x < n; ++x) {
        state.p[x] += 0.5 * dt * f[x];
        if (!std::isfinite(state.p[x]))
            throw NumericalError("hamiltonian_step: non-finite momentum (force overflow)");
    }
    state.time += dt;
}

namespace {

/// Rotate the triple about the unit axis (1,1,1)/sqrt(3) by angle theta.
inline void rotate_triple(double& a, double& b, double& c, double theta) {
    const double inv3 = 1.0 / 3.0;
    const double inv_sqrt3 = 0.5773502691896258;
    double m = (a + b + c) * inv3;
    double da = a - m, db = b - m, dc = c - m;
    // cross product (1,1,1)/sqrt(3) x d
    double ca = (dc - db) * inv_sqrt3;
    double cb = (da - dc) * inv_sqrt3;
    double cc = (db - da) * inv_sqrt3;
    double cs = std::cos(theta), sn = std::sin(theta);
    a = m + cs * da + sn * ca;
    b = m + cs * db + sn * cb;
    c = m + cs * dc + sn * cc;
}

}  // namespace

void noise_step(ChainState& state, double gamma, double dt, RngStream& rng) {
    if (gamma < 0.0) throw ConfigError("noise strength gamma must be >= 0");
    if (gamma == 0.0) return;
    const int n = state.n_sites;
    const double scale = std::sqrt(gamma * dt);
    static thread_local std::vector<int> order;
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    // fresh permutation per sweep: adjacent triple rotations do not commute
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[static_cast<int>(rng.below(i + 1))]);
    for (int z : order) {
        double theta = scale * rng.normal();
        rotate_triple(state.p[wrap(z - 1, n)], state.p[z], state.p[wrap(z + 1, n)], theta);
    }
}

void evolve(ChainState& state, const PotentialSpec& spec, const DynamicsParams& params,
            double t_final, RngStream& rng, const std::vector<Observer>& observers) {
    state.check(spec);
    if (t_final < state.time) throw ConfigError("evolve: t_final must be >= state.time");
    if (params.dt <= 0.0) throw ConfigError("evolve: dt must be positive");

    auto notify = [&](long step) {
        for (const auto& ob : observers)
            if (ob.fn && (step % std::max(ob.stride, 1) == 0)) ob.fn(state);
    };

    long n_steps = static_cast<long>(std::ceil((t_final - state.time) / params.dt - 1e-9));
    notify(0);
    for (long s = 0; s < n_steps; ++s) {
        double dt = std::min(params.dt, t_final - state.time);
        noise_step(state, params.gamma, 0.5 * dt, rng);
        hamiltonian_step(state, spec, dt);
        noise_step(state, params.gamma, 0.5 * dt, rng);
        if (s + 1 < n_steps) notify(s + 1);
    }
    state.time = t_final;
    notify(n_steps);
}

std::vector<double> energy_field(const ChainState& state, const PotentialSpec& spec) {
    const int n = state.n_sites;
    std::vector<double> e(n);
    if (state.rep == Representation::Stretch) {
        // symmetric split: E_x = p_x^2/2 + (V(r_{x-1}) + V(r_x))/2
        std::vector<double> v(n);
        for (int x = 0; x < n; ++x) v[x] = spec.v(state.conf[x]);
        for (int x = 0; x < n; ++x)
            e[x] = 0.5 * state.p[x] * state.p[x] + 0.5 * (v[wrap(x - 1, n)] + v[x]);
    } else {
        for (int x = 0; x < n; ++x)
            e[x] = 0.5 * state.p[x] * state.p[x] +
                   spec.v(state.conf[wrap(x + 1, n)] - state.conf[x]) + spec.w(state.conf[x]);
    }
    return e;
}

double total_energy(const ChainState& state, const PotentialSpec& spec) {
    double kin = 0.0, pot = 0.0;
    for (double px : state.p) kin += 0.5 * px * px;
    const int n = state.n_sites;
    if (state.rep == Representation::Stretch) {
        for (int x = 0; x < n; ++x) pot += spec.v(state.conf[x]);
    } else {
        for (int x = 0; x < n; ++x)
            pot += spec.v(state.conf[wrap(x + 1, n)] - state.conf[x]) + spec.w(state.conf[x]);
    }
    return kin + pot;
}

ConservationReport conservation_report(const ChainState& now, const ChainState& initial,
                                       const PotentialSpec& spec) {
    auto sum = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    };
    ConservationReport r;
    r.total_energy = total_energy(now, spec);
    r.total_momentum = sum(now.p);
    r.total_stretch = now.rep == Representation::Stretch ? sum(now.conf) : 0.0;
    double e0 = total_energy(initial, spec);
    double p0 = sum(initial.p);
    double s0 = initial.rep == Representation::Stretch ? sum(initial.conf) : 0.0;
    r.energy_drift = r.total_energy - e0;
    r.momentum_drift = r.total_momentum - p0;
    r.stretch_drift = r.total_stretch - s0;
    return r;
}

BondCurrents energy_current(const ChainState& state, const PotentialSpec& spec, double gamma) {
    if (state.rep != Representation::Stretch)
        throw UnsupportedError("energy_current is defined for the stretch representation");
    const int n = state.n_sites;
    BondCurrents out;
    out.antisymmetric.resize(n);
    out.stochastic.resize(n);
    std::vector<double> phi(n);
    for (int x = 0; x < n; ++x) {
        double pm = state.p[wrap(x - 1, n)], p0 = state.p[x], pp = state.p[wrap(x + 1, n)];
        phi[x] = pp * pp + 4.0 * p0 * p0 + pm * pm + pp * pm - 2.0 * pp * p0 - 2.0 * p0 * pm;
    }
    for (int x = 0; x < n; ++x) {
        out.antisymmetric[x] =
            -0.5 * (state.p[x] + state.p[wrap(x + 1, n)]) * spec.dv(state.conf[x]);
        out.stochastic[x] = -(gamma / 6.0) * (phi[wrap(x + 1, n)] - phi[x]);
    }
    return out;
}

std::vector<double> momentum_current(const ChainState& state, const PotentialSpec& spec,
                                     double gamma) {
    if (state.rep != Representation::Stretch)
        throw UnsupportedError("momentum_current is defined for the stretch representation");
    const int n = state.n_sites;
    std::vector<double> g(n), j(n);
    for (int x = 0; x < n; ++x)
        g[x] = 4.0 * state.p[x] + state.p[wrap(x - 1, n)] + state.p[wrap(x + 1, n)];
    for (int x = 0; x < n; ++x)
        j[x] = spec.dv(state.conf[x]) + (gamma / 6.0) * (g[wrap(x + 1, n)] - g[x]);
    return j;
}

double total_antisymmetric_current(const ChainState& state, const PotentialSpec& spec) {
    const int n = state.n_sites;
    double s = 0.0;
    for (int x = 0; x < n; ++x)
        s += -0.5 * (state.p[x] + state.p[wrap(x + 1, n)]) * spec.dv(state.conf[x]);
    return s;
}

double stability_bound(const PotentialSpec& spec, const ChainState& state) {
    const int n = state.n_sites;
    double vpp_max = 0.0, wpp_max = 0.0;
    if (state.rep == Representation::Stretch) {
        for (int x = 0; x < n; ++x) vpp_max = std::max(vpp_max, spec.d2v(state.conf[x]));
    } else {
        for (int x = 0; x < n; ++x) {
            vpp_max = std::max(vpp_max, spec.d2v(state.conf[wrap(x + 1, n)] - state.conf[x]));
            wpp_max = std::max(wpp_max, spec.d2w(state.conf[x]));
        }
    }
    vpp_max = std::max(vpp_max, 1e-8);
    double omega_max = std::sqrt(wpp_max + 4.0 * vpp_max);
    return 0.1 / omega_max;
}

}  // namespace chainlab
