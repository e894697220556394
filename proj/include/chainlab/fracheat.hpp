#pragma once

#include <filesystem>
#include <vector>

#include "chainlab/kinetics.hpp"
#include "chainlab/rng.hpp"
#include "chainlab/transport.hpp"

namespace chainlab {

/// d_t u = -c (-Laplacian_y)^{alpha/2} u on a periodic domain of length L,
/// initial profile sampled on a power-of-two grid.
struct FracHeatProblem {
    double alpha = 1.5;  // in (0, 2]
    double c = 1.0;      // diffusivity
    double length = 1.0;
    std::vector<double> u0;

    void validate() const;
    double dy() const { return length / u0.size(); }
};

/// Exact-in-time spectral solution at time t (Fourier multiplier
/// exp(-c |2 pi m / L|^alpha t), Hermitian symmetry enforced).
std::vector<double> solve(const FracHeatProblem& problem, double t);

/// Symmetric alpha-stable variates with characteristic function
/// exp(-scale |theta|^alpha) (Chambers-Mallows-Stuck).
std::vector<double> sample_stable(double alpha, double scale, int n, RngStream& rng);
double sample_stable_one(double alpha, RngStream& rng);  // unit scale

/// k-averaged transport profiles across a dyadic epsilon ladder, all on the
/// same macroscopic grid: run epsilon m with advection scaled by
/// epsilon^{1-alpha} and collision rate by epsilon^{-alpha}.
struct ScalingLadder {
    std::vector<double> epsilons;
    std::vector<std::vector<double>> profiles;  // one per epsilon
    double length = 1.0;
    double t = 1.0;
    double alpha = 1.5;
};

ScalingLadder run_scaling_ladder(const DispersionSpec& disp, const KernelSpec& kernel,
                                 double gamma, const std::vector<double>& u0, double length,
                                 double t, double alpha, const std::vector<double>& epsilons,
                                 int n_k, double cfl = 0.6);

struct LadderReport {
    std::vector<double> epsilons;
    std::vector<double> l2_distances;
    double fitted_c = 0.0;
    double fit_residual = 0.0;
    bool monotone_decreasing = false;  // within a small tolerance

    void write_report(const std::filesystem::path& path) const;
};

/// Compare each rescaled transport profile against the fractional solution,
/// with c fitted once at the largest epsilon when fit_c is set (the
/// continuum diffusivity constant is model dependent and never asserted).
LadderReport kinetic_to_fractional_check(const ScalingLadder& ladder, FracHeatProblem problem,
                                         bool fit_c);

}  // namespace chainlab
