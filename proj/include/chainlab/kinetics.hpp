#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <vector>

#include "chainlab/potential.hpp"
#include "chainlab/rng.hpp"

namespace chainlab {

/// Lattice dispersion relation on k in [0,1).
struct DispersionSpec {
    enum class Kind { Acoustic, Gapped };  // unpinned / pinned
    Kind kind = Kind::Acoustic;
    double c = 1.0;   // acoustic: omega = c |sin(pi k)|; gapped: sqrt(nu^2 + 4 c^2 sin^2(pi k))
    double nu = 0.0;  // gap, gapped case only

    double omega(double k) const;
    double omega_prime(double k) const;
    /// transport velocity omega'(k) / (2 pi), in sites per unit time
    double velocity(double k) const;

    static DispersionSpec acoustic(double c_ = 1.0) { return {Kind::Acoustic, c_, 0.0}; }
    static DispersionSpec gapped(double c_, double nu_) { return {Kind::Gapped, c_, nu_}; }
    /// dispersion of the harmonic chain with this potential
    static DispersionSpec from_potential(const PotentialSpec& spec);
};

/// Mode-scattering kernel C(k,k') >= 0, symmetric, O(k^2) at long waves.
struct KernelSpec {
    enum class Form { Product, Tabulated };
    Form form = Form::Product;
    double c_k = 1.0;            // product form: c_k sin^2(pi k) sin^2(pi k')
    int table_n = 0;             // tabulated form: values on midpoint grid
    std::vector<double> table;   // row-major C(k_i, k_j), k_i = (i+1/2)/table_n

    double value(double k, double kp) const;
    void validate() const;

    static KernelSpec product(double c_k = 1.0) {
        KernelSpec s;
        s.form = Form::Product;
        s.c_k = c_k;
        return s;
    }
    static KernelSpec tabulated(int n, std::vector<double> values);
};

/// Exact scattering kernel of the triple momentum-exchange noise acting on a
/// harmonic chain, tabulated on an n x n midpoint grid:
/// C(k,k') = (32/3) sin^2(pi k) sin^2(pi k') sin^2(pi(k+k')),
/// total rate gamma (4/3) sin^2(pi k)(1 + 2 cos^2(pi k)).
KernelSpec momentum_exchange_kernel(int n = 1024);

/// lambda(k) = gamma * int_0^1 C(k,k') dk'
double total_rate(const KernelSpec& kernel, double gamma, double k);

/// One phonon path: ballistic flight at velocity(k) between exponential
/// scattering events.
struct PhononTrajectory {
    std::vector<double> jump_times;  // strictly increasing, in (0, t_final]
    std::vector<double> modes;       // modes[i] active on [jump_times[i-1], jump_times[i])
    std::vector<double> y_at_jump;   // position at each jump time
    double k0 = 0.0;
    double t_final = 0.0;
    double y_final = 0.0;
    double k_final = 0.0;

    double position_at(double t) const;  // exact piecewise-linear evaluation
};

PhononTrajectory sample_trajectory(const DispersionSpec& disp, const KernelSpec& kernel,
                                   double gamma, double k0, double t_final, RngStream& rng);

/// Draws k' ~ C(k, .) / lambda(k) by inverse CDF on precomputed tables.
class ModeJumpSampler {
public:
    ModeJumpSampler(const KernelSpec& kernel, int grid_n = 4096);
    double sample(double k_from, RngStream& rng) const;
    double rate(double gamma, double k_from) const;  // gamma * int C(k_from, .)

private:
    KernelSpec kernel_;
    int grid_n_ = 0;
    bool separable_ = false;
    std::vector<double> cdf_;        // separable case: single target CDF
    std::vector<double> row_cdf_;    // tabulated case: per-source-row CDFs
    std::vector<double> row_rate_;   // int C(k_i, .) dk'
};

/// Ensemble positions at a ladder of horizon times, trajectories in rows.
struct EnsemblePositions {
    std::vector<double> horizons;
    std::vector<std::vector<double>> y;  // y[i][m] = trajectory i at horizons[m]
    std::vector<std::uint64_t> jump_counts;
};

struct EnsembleOptions {
    int n_trajectories = 10000;
    int workers = 1;
    std::uint64_t master_seed = 1;
    std::uint64_t stream_base = 50000;
};

/// Samples trajectories with k0 ~ Uniform[0,1) and records positions at each
/// horizon (the largest horizon bounds the simulated time).
EnsemblePositions sample_ensemble(const DispersionSpec& disp, const KernelSpec& kernel,
                                  double gamma, const std::vector<double>& horizons,
                                  const EnsembleOptions& opts);

enum class ExponentMethod { CharFnFit, QuantileRatio };

struct ExponentEstimate {
    double alpha = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;  // bootstrap 95% interval
    ExponentMethod method = ExponentMethod::CharFnFit;
    double excess_kurtosis = 0.0;  // of rescaled positions at the largest horizon
    int n_used = 0;

    void write_report(const std::filesystem::path& path) const;
};

/// Scaling exponent alpha of Y(t) ~ t^{1/alpha}. Variance-based estimators
/// are deliberately not offered: second moments diverge for alpha < 2.
ExponentEstimate estimate_scaling_exponent(const EnsemblePositions& ensemble,
                                           ExponentMethod method, RngStream& rng);

}  // namespace chainlab
