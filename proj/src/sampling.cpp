#include "chainlab/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "chainlab/errors.hpp"
#include "chainlab/quadrature.hpp"

namespace chainlab {

StretchSampler::StretchSampler(const PotentialSpec& spec, double lambda, double beta,
                               int table_size)
    : spec_(spec), lambda_(lambda), beta_(beta) {
    if (beta <= 0.0) throw ConfigError("StretchSampler requires beta > 0");
    spec.validate();
    auto g = [&](double r) { return -beta * spec_.v(r) + lambda * r; };
    LogIntegral li = log_integral_exp(g, 0.0);
    lo_ = li.lo;
    hi_ = li.hi;
    log_norm_ = li.log_value;

    // cumulative density on a fine uniform grid (composite Simpson per cell)
    grid_r_.resize(table_size + 1);
    grid_cdf_.resize(table_size + 1);
    double h = (hi_ - lo_) / table_size;
    auto dens = [&](double r) { return std::exp(g(r) - log_norm_); };
    double acc = 0.0;
    grid_r_[0] = lo_;
    grid_cdf_[0] = 0.0;
    double f0 = dens(lo_);
    for (int i = 1; i <= table_size; ++i) {
        double r1 = lo_ + i * h;
        double fm = dens(r1 - 0.5 * h), f1 = dens(r1);
        acc += h / 6.0 * (f0 + 4.0 * fm + f1);
        grid_r_[i] = r1;
        grid_cdf_[i] = acc;
        f0 = f1;
    }
    // normalize the tiny quadrature residue so the table is an exact CDF
    for (auto& cval : grid_cdf_) cval /= acc;
}

double StretchSampler::density_log(double r) const {
    return -beta_ * spec_.v(r) + lambda_ * r - log_norm_;
}

double StretchSampler::cdf(double r) const {
    if (r <= lo_) return 0.0;
    if (r >= hi_) return 1.0;
    auto it = std::upper_bound(grid_r_.begin(), grid_r_.end(), r);
    std::size_t i = static_cast<std::size_t>(it - grid_r_.begin()) - 1;
    double t = (r - grid_r_[i]) / (grid_r_[i + 1] - grid_r_[i]);
    return grid_cdf_[i] + t * (grid_cdf_[i + 1] - grid_cdf_[i]);
}

double StretchSampler::sample(RngStream& rng) const {
    double u = rng.uniform();
    auto it = std::upper_bound(grid_cdf_.begin(), grid_cdf_.end(), u);
    std::size_t i = std::min<std::size_t>(
        static_cast<std::size_t>(it - grid_cdf_.begin()), grid_cdf_.size() - 1);
    if (i == 0) i = 1;
    double c0 = grid_cdf_[i - 1], c1 = grid_cdf_[i];
    double t = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.5;
    double r = grid_r_[i - 1] + t * (grid_r_[i] - grid_r_[i - 1]);
    // one Newton polish on F(r) = u using the smooth density
    double f = std::exp(density_log(r));
    if (f > 1e-14) {
        double err = cdf(r) - u;
        double step = err / f;
        double cell = grid_r_[i] - grid_r_[i - 1];
        if (std::abs(step) < 2.0 * cell) r -= step;
    }
    return std::clamp(r, lo_, hi_);
}

ChainState sample_equilibrium(const PotentialSpec& spec, double lambda, double pi_momentum,
                              double beta, int n_sites, RngStream& rng) {
    spec.validate();
    if (spec.pinned())
        throw UnsupportedError(
            "sample_equilibrium: product measure holds for unpinned chains; use "
            "sample_gibbs_mcmc for pinned models");
    if (beta <= 0.0) throw ConfigError("sample_equilibrium requires beta > 0");
    ChainState s = ChainState::zeros(n_sites, Representation::Stretch);
    double sigma_p = 1.0 / std::sqrt(beta);
    for (int x = 0; x < n_sites; ++x) s.p[x] = pi_momentum + sigma_p * rng.normal();
    if (spec.interaction == InteractionKind::Harmonic) {
        // exact Gaussian marginal: mean lambda/(a beta), variance 1/(a beta)
        double mean = lambda / (spec.a * beta);
        double sig = 1.0 / std::sqrt(spec.a * beta);
        for (int x = 0; x < n_sites; ++x) s.conf[x] = mean + sig * rng.normal();
    } else {
        StretchSampler sampler(spec, lambda, beta);
        for (int x = 0; x < n_sites; ++x) s.conf[x] = sampler.sample(rng);
    }
    return s;
}

ChainState sample_gibbs_mcmc(const PotentialSpec& spec, double beta, int n_sites, int sweeps,
                             RngStream& rng) {
    spec.validate();
    if (!spec.pinned())
        throw UnsupportedError("sample_gibbs_mcmc targets pinned chains; unpinned chains have "
                               "an exact product sampler");
    if (beta <= 0.0) throw ConfigError("sample_gibbs_mcmc requires beta > 0");
    if (sweeps < 0) throw ConfigError("sweeps must be >= 0");

    ChainState s = ChainState::zeros(n_sites, Representation::Displacement);
    const int n = n_sites;
    auto wrap = [n](int i) { return (i % n + n) % n; };
    // proposal width from the local stiffness at the ground state
    double stiff = 2.0 * spec.d2v(0.0) + spec.d2w(0.0);
    double step = 2.4 / std::sqrt(std::max(beta * stiff, 1e-12));

    auto local_energy = [&](int x, double qx) {
        return spec.v(s.conf[wrap(x + 1)] - qx) + spec.v(qx - s.conf[wrap(x - 1)]) + spec.w(qx);
    };
    for (int sw = 0; sw < sweeps; ++sw) {
        for (int x = 0; x < n; ++x) {
            double q_old = s.conf[x];
            double q_new = q_old + step * rng.normal();
            double dE = local_energy(x, q_new) - local_energy(x, q_old);
            if (dE <= 0.0 || rng.uniform() < std::exp(-beta * dE)) s.conf[x] = q_new;
        }
    }
    double sigma_p = 1.0 / std::sqrt(beta);
    for (int x = 0; x < n; ++x) s.p[x] = sigma_p * rng.normal();
    return s;
}

}  // namespace chainlab
