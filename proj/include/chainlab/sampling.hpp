#pragma once

#include "chainlab/chain.hpp"
#include "chainlab/potential.hpp"
#include "chainlab/rng.hpp"

namespace chainlab {

/// Draws from the single-site stretch density ~ exp(-beta V(r) + lambda r)
/// through a precomputed inverse-CDF table polished by one Newton step.
class StretchSampler {
public:
    StretchSampler(const PotentialSpec& spec, double lambda, double beta, int table_size = 8192);

    double sample(RngStream& rng) const;
    double cdf(double r) const;  // for distribution tests
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double density_log(double r) const;

    PotentialSpec spec_;
    double lambda_, beta_;
    double lo_, hi_, log_norm_;
    std::vector<double> grid_r_, grid_cdf_;
};

/// Exact draw from the product equilibrium measure of the unpinned chain:
/// momenta i.i.d. N(pi, 1/beta), stretches i.i.d. ~ exp(-beta V + lambda r).
ChainState sample_equilibrium(const PotentialSpec& spec, double lambda, double pi_momentum,
                              double beta, int n_sites, RngStream& rng);

/// Pinned-chain Gibbs sampler: single-site Metropolis sweeps over q from the
/// ground state, exact Gaussian momenta. sweeps = 0 leaves q untouched.
ChainState sample_gibbs_mcmc(const PotentialSpec& spec, double beta, int n_sites, int sweeps,
                             RngStream& rng);

}  // namespace chainlab
