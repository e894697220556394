#include "chainlab/observables.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

#include "chainlab/csv.hpp"
#include "chainlab/errors.hpp"
#include "chainlab/fft.hpp"
#include "chainlab/parallel.hpp"
#include "chainlab/sampling.hpp"

namespace chainlab {

double empirical_energy_profile(const ChainState& state, const PotentialSpec& spec, double eps,
                                const std::vector<double>& g_at_sites) {
    if (static_cast<int>(g_at_sites.size()) != state.n_sites)
        throw ConfigError("test function must be sampled at every site");
    auto e = energy_field(state, spec);
    double s = 0.0;
    for (int x = 0; x < state.n_sites; ++x) s += g_at_sites[x] * e[x];
    return eps * s;
}

double empirical_energy_profile(const ChainState& state, const PotentialSpec& spec, double eps,
                                const std::function<double(double)>& g) {
    std::vector<double> gs(state.n_sites);
    for (int x = 0; x < state.n_sites; ++x) gs[x] = g(eps * x);
    return empirical_energy_profile(state, spec, eps, gs);
}

namespace {

// linear autocorrelation sum_t J_t J_{t+l}, l = 0..n_lags-1, via zero-padded FFT
std::vector<double> autocorr_fft(const std::vector<double>& j, int n_lags) {
    std::size_t m = j.size();
    std::size_t p = 1;
    while (p < 2 * m) p <<= 1;
    std::vector<std::complex<double>> buf(p, 0.0);
    for (std::size_t t = 0; t < m; ++t) buf[t] = j[t];
    fft(buf, -1);
    for (auto& z : buf) z = std::norm(z);
    fft(buf, +1);
    std::vector<double> out(n_lags);
    for (int l = 0; l < n_lags; ++l) out[l] = buf[l].real() / static_cast<double>(p);
    return out;
}

}  // namespace

CorrelationSeries current_autocorrelation(const PotentialSpec& spec, const DynamicsParams& params,
                                          double temperature, int n_sites,
                                          const AutocorrOptions& opts,
                                          std::uint64_t master_seed) {
    spec.validate();
    if (temperature <= 0.0) throw ConfigError("current_autocorrelation requires T > 0");
    if (opts.n_trajectories < 2)
        throw ConfigError("current_autocorrelation needs >= 2 trajectories for error bars");
    const double beta = 1.0 / temperature;
    const double sample_dt = params.dt * opts.lag_stride;
    const int n_lags = static_cast<int>(std::floor(opts.t_max / sample_dt)) + 1;
    const long n_keep = static_cast<long>(std::floor(opts.run_length / sample_dt)) + 1;
    if (n_keep < 4 * n_lags)
        throw ConfigError("run_length should be at least 4x t_max for a stable estimate");

    std::vector<std::vector<double>> per_traj(opts.n_trajectories);
    parallel_for(opts.n_trajectories, opts.workers, [&](std::size_t i) {
        RngStream rng(master_seed, 1000 + i);
        ChainState state = spec.pinned()
                               ? sample_gibbs_mcmc(spec, beta, n_sites, opts.gibbs_burn_in, rng)
                               : sample_equilibrium(spec, 0.0, 0.0, beta, n_sites, rng);
        std::vector<double> series;
        series.reserve(n_keep);
        std::vector<Observer> obs{{opts.lag_stride, [&](const ChainState& s) {
                                       series.push_back(total_antisymmetric_current(s, spec));
                                   }}};
        evolve(state, spec, params, state.time + opts.run_length, rng, obs);

        double mean = 0.0;
        for (double v : series) mean += v;
        mean /= static_cast<double>(series.size());
        for (double& v : series) v -= mean;
        auto raw = autocorr_fft(series, n_lags);
        const double m = static_cast<double>(series.size());
        for (int l = 0; l < n_lags; ++l) raw[l] /= (m - l) * n_sites;
        per_traj[i] = std::move(raw);
    });

    CorrelationSeries cs;
    cs.lags.resize(n_lags);
    cs.values.assign(n_lags, 0.0);
    cs.stderrs.assign(n_lags, 0.0);
    const double nt = opts.n_trajectories;
    for (int l = 0; l < n_lags; ++l) {
        cs.lags[l] = l * sample_dt;
        double mean = 0.0;
        for (auto& tr : per_traj) mean += tr[l];
        mean /= nt;
        double var = 0.0;
        for (auto& tr : per_traj) var += (tr[l] - mean) * (tr[l] - mean);
        var /= nt - 1.0;
        cs.values[l] = mean;
        cs.stderrs[l] = std::sqrt(var / nt);
    }

    cs.meta.temperature = temperature;
    cs.meta.gamma = params.gamma;
    cs.meta.n_sites = n_sites;
    cs.meta.n_trajectories = opts.n_trajectories;
    cs.meta.run_length = opts.run_length;
    cs.meta.dt = params.dt;
    cs.meta.potential = spec.describe();
    double c0 = std::abs(cs.values[0]);
    double worst = 0.0;
    for (double e : cs.stderrs) worst = std::max(worst, e);
    if (c0 > 0.0 && worst / c0 > opts.error_target) {
        cs.meta.warning = true;
        cs.meta.warning_text = "statistical error above target: max stderr / C(0) = " +
                               format_double(worst / c0);
    }
    return cs;
}

void CorrelationSeries::write_csv(const std::filesystem::path& path) const {
    CsvWriter w(path);
    w.comment("space-summed energy-current autocorrelation");
    w.comment("T=" + format_double(meta.temperature) + " gamma=" + format_double(meta.gamma) +
              " N=" + std::to_string(meta.n_sites) + " trajectories=" +
              std::to_string(meta.n_trajectories) + " run_length=" +
              format_double(meta.run_length) + " dt=" + format_double(meta.dt));
    w.comment("potential " + meta.potential);
    if (meta.warning) w.comment("WARNING " + meta.warning_text);
    w.header("lag,value,stderr");
    for (std::size_t i = 0; i < lags.size(); ++i) w.row({lags[i], values[i], stderrs[i]});
}

GreenKuboEstimate green_kubo(const CorrelationSeries& series, double gamma, double temperature,
                             const ChiMode& chi_mode) {
    if (series.lags.empty()) throw ConfigError("green_kubo: empty correlation series");
    GreenKuboEstimate gk;
    gk.chi = chi_mode.kind == ChiMode::Kind::TemperatureSquared ? temperature * temperature
                                                                : chi_mode.custom_value;
    gk.chi_mode = chi_mode.kind == ChiMode::Kind::TemperatureSquared ? "T^2" : "custom";
    if (gk.chi <= 0.0) throw ConfigError("green_kubo: chi must be positive");

    const std::size_t n = series.lags.size();
    gk.taus.resize(n);
    gk.integral_partial.resize(n);
    gk.integral_err.resize(n);
    double acc = 0.0, var = 0.0;
    gk.taus[0] = series.lags[0];
    gk.integral_partial[0] = 0.0;
    gk.integral_err[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        double h = series.lags[i] - series.lags[i - 1];
        acc += 0.5 * h * (series.values[i] + series.values[i - 1]);
        double e = 0.5 * h * (series.stderrs[i] + series.stderrs[i - 1]);
        var += e * e;  // lag estimates treated as independent; batch errors dominate
        gk.taus[i] = series.lags[i];
        gk.integral_partial[i] = acc;
        gk.integral_err[i] = std::sqrt(var);
    }

    gk.stochastic_floor = gamma * temperature * temperature / (2.0 * gk.chi);
    gk.kappa = (gk.integral_partial.back() + gamma * temperature * temperature) / (2.0 * gk.chi);

    // still-rising test between tau_max/2 and tau_max
    std::size_t half = n / 2;
    if (n >= 4) {
        double delta = gk.integral_partial[n - 1] - gk.integral_partial[half];
        double sigma = std::sqrt(std::max(gk.integral_err[n - 1] * gk.integral_err[n - 1] -
                                              gk.integral_err[half] * gk.integral_err[half],
                                          1e-300));
        gk.divergence_flag = delta > 3.0 * sigma;
    }
    return gk;
}

void GreenKuboEstimate::write_csv(const std::filesystem::path& path) const {
    CsvWriter w(path);
    w.comment("green-kubo running integral and conductivity estimate");
    w.comment("kappa=" + format_double(kappa) + " chi=" + format_double(chi) + " chi_mode=" +
              chi_mode + " stochastic_floor=" + format_double(stochastic_floor) +
              " divergence_flag=" + (divergence_flag ? std::string("1") : std::string("0")));
    w.header("tau,integral,integral_err");
    for (std::size_t i = 0; i < taus.size(); ++i)
        w.row({taus[i], integral_partial[i], integral_err[i]});
}

double energy_susceptibility(const PotentialSpec& spec, double lambda, double beta, int n_sites,
                             int n_samples, RngStream& rng) {
    if (n_samples < 16) throw ConfigError("energy_susceptibility needs n_samples >= 16");
    // translation invariance: sum_x Cov(E_x, E_0) = Var(sum_x E_x) / N
    double mean = 0.0, m2 = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        ChainState state = sample_equilibrium(spec, lambda, 0.0, beta, n_sites, rng);
        double e = total_energy(state, spec);
        double d = e - mean;
        mean += d / (s + 1);
        m2 += d * (e - mean);
    }
    return m2 / (n_samples - 1) / n_sites;
}

}  // namespace chainlab
