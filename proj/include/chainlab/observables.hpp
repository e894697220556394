#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "chainlab/chain.hpp"
#include "chainlab/potential.hpp"

namespace chainlab {

/// eps * sum_x G(eps x) E_x for a test function sampled at the sites.
double empirical_energy_profile(const ChainState& state, const PotentialSpec& spec, double eps,
                                const std::vector<double>& g_at_sites);
double empirical_energy_profile(const ChainState& state, const PotentialSpec& spec, double eps,
                                const std::function<double(double)>& g);

struct CorrelationMeta {
    double temperature = 0.0;
    double gamma = 0.0;
    int n_sites = 0;
    int n_trajectories = 0;
    double run_length = 0.0;
    double dt = 0.0;
    std::string potential;
    bool warning = false;
    std::string warning_text;
};

/// Space-summed current-current correlation sum_x <j^a_{x,x+1}(t) j^a_{0,1}(0)>
/// on a lag grid, with batch-means error bars over independent trajectories.
struct CorrelationSeries {
    std::vector<double> lags;
    std::vector<double> values;
    std::vector<double> stderrs;
    CorrelationMeta meta;

    void write_csv(const std::filesystem::path& path) const;
};

struct AutocorrOptions {
    double t_max = 20.0;        // largest lag retained
    double run_length = 500.0;  // length of each stationary trajectory
    int n_trajectories = 16;
    int lag_stride = 1;         // store the current every lag_stride steps
    int gibbs_burn_in = 400;    // sweeps for the pinned initial sampler
    double error_target = 0.1;  // warn if stderr(C)/C(0) exceeds this
    int workers = 1;
};

CorrelationSeries current_autocorrelation(const PotentialSpec& spec, const DynamicsParams& params,
                                          double temperature, int n_sites,
                                          const AutocorrOptions& opts, std::uint64_t master_seed);

/// chi(T) convention for the conductivity normalization.
struct ChiMode {
    enum class Kind { TemperatureSquared, Custom };
    Kind kind = Kind::TemperatureSquared;
    double custom_value = 0.0;  // used when kind == Custom

    static ChiMode temperature_squared() { return {}; }
    static ChiMode custom(double value) { return {Kind::Custom, value}; }
};

struct GreenKuboEstimate {
    std::vector<double> taus;              // integration cutoffs
    std::vector<double> integral_partial;  // I(tau)
    std::vector<double> integral_err;
    double kappa = 0.0;  // (I(tau_max) + gamma T^2) / (2 chi)
    double chi = 0.0;
    std::string chi_mode;
    double stochastic_floor = 0.0;  // gamma T^2 / (2 chi)
    bool divergence_flag = false;   // I(tau) still rising at the largest cutoffs

    void write_csv(const std::filesystem::path& path) const;
};

GreenKuboEstimate green_kubo(const CorrelationSeries& series, double gamma, double temperature,
                             const ChiMode& chi_mode);

/// Static space-summed energy susceptibility sum_x (<E_x E_0> - u^2) by
/// Monte Carlo over exact product-measure draws (unpinned chains).
double energy_susceptibility(const PotentialSpec& spec, double lambda, double beta, int n_sites,
                             int n_samples, RngStream& rng);

}  // namespace chainlab
