#pragma once

#include <filesystem>
#include <optional>

#include "chainlab/interp.hpp"
#include "chainlab/potential.hpp"

namespace chainlab {

/// log Z(lambda, beta) = log int exp(-beta V(r) + lambda r) dr
double log_partition(const PotentialSpec& spec, double lambda, double beta);

/// Moments of the single-site stretch marginal ~ exp(-beta V + lambda r).
struct TiltedMoments {
    double log_z;
    double mean_r, mean_v;
    double var_r, var_v, cov_rv;
};
TiltedMoments tilted_moments(const PotentialSpec& spec, double lambda, double beta);

struct ThermoPoint {
    double lambda = 0.0;
    double beta = 0.0;
    double rbar = 0.0;
    double ubar = 0.0;
    double pressure = 0.0;
    double entropy = 0.0;
    double log_z = 0.0;
};

/// Thermodynamics at mean stretch r and mean energy per site u (kinetic +
/// potential): solves the dual problem
///   S(r,u) = inf_{lambda, beta>0} { beta u - lambda r + log(Z(lambda,beta) sqrt(2 pi / beta)) }
/// by damped Newton. At the optimum mean stretch matches r, mean energy
/// matches u, and P = lambda/beta = <V'(r)>.
ThermoPoint solve_thermo(const PotentialSpec& spec, double r, double u);

struct ThermoTableSpec {
    double r_min = -1.0, r_max = 1.0;
    double u_margin_lo = 0.05;  // offset above ground-state energy
    double u_max = 3.0;
    int nr = 256, nu = 256;
    bool cubic = true;
};

/// Precomputed thermodynamics on an (r,u) rectangle, immutable after build.
/// The u-grid starts u_margin_lo above the worst-case ground state so every
/// node is in-domain.
class ThermoTable {
public:
    ThermoTable(const PotentialSpec& spec, const ThermoTableSpec& ts);

    double pressure(double r, double u) const;
    double entropy(double r, double u) const;

    /// Upper bound for the characteristic speed sqrt(dP/dr + P dP/du),
    /// from centered finite differences of the tabulated pressure.
    double char_speed(double r, double u) const;

    bool in_domain(double r, double u) const { return p_.contains(r, u); }
    double u_min() const { return p_.y_min(); }
    double u_max() const { return p_.y_max(); }
    double r_min() const { return p_.x_min(); }
    double r_max() const { return p_.x_max(); }
    const PotentialSpec& spec() const { return spec_; }

    const Grid2D& pressure_grid() const { return p_; }
    const Grid2D& entropy_grid() const { return s_; }
    const Grid2D& lambda_grid() const { return lam_; }
    const Grid2D& beta_grid() const { return bet_; }
    const Grid2D& logz_grid() const { return lz_; }

    void write_csv(const std::filesystem::path& path) const;

private:
    double interp(const Grid2D& g, double r, double u) const;

    PotentialSpec spec_;
    bool cubic_;
    Grid2D p_, s_, lam_, bet_, lz_, dpdr_, dpdu_;
};

}  // namespace chainlab
