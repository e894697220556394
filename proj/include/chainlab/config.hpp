#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chainlab/kinetics.hpp"
#include "chainlab/potential.hpp"

namespace chainlab {

enum class ExperimentKind {
    ChainRun,
    GreenKubo,
    PhononMc,
    Transport,
    FracHeat,
    Euler,
    ThermoTable,
};

std::string to_string(ExperimentKind k);

struct ChainSection {
    int n_sites = 256;
    double beta = 1.0;
    double lambda = 0.0;
    double pi = 0.0;
    int gibbs_sweeps = 400;
    bool operator==(const ChainSection&) const = default;
};

struct DynamicsSection {
    double gamma = 1.0;
    double dt = 0.02;
    bool operator==(const DynamicsSection&) const = default;
};

struct RunSection {
    double t_final = 10.0;
    int snapshot_stride = 0;  // 0: initial and final snapshots only
    bool operator==(const RunSection&) const = default;
};

struct CorrelationSection {
    double t_max = 20.0;
    double run_length = 500.0;
    int n_trajectories = 16;
    int lag_stride = 2;
    std::string chi_mode = "t2";  // t2 | susceptibility
    int chi_samples = 2000;
    bool operator==(const CorrelationSection&) const = default;
};

struct PhononSection {
    std::string dispersion = "acoustic";  // acoustic | gapped
    double c = 1.0;
    double nu = 1.0;
    std::string kernel = "product";  // product | exchange
    double c_k = 1.0;
    int kernel_n = 1024;
    double gamma = 1.0;
    int n_trajectories = 20000;
    std::string method = "char_fn";        // char_fn | quantile
    std::vector<double> horizons;          // defaults from the dispersion kind
    bool operator==(const PhononSection&) const = default;
};

struct TransportSection {
    int n_y = 128, n_k = 64;
    double length = 16.0;
    double t_final = 2.0;
    double cfl = 0.6;
    double bump_center = 8.0, bump_width = 1.0, bump_height = 1.0, background = 0.1;
    bool operator==(const TransportSection&) const = default;
};

struct FracHeatSection {
    double alpha = 1.5;
    double c = 1.0;
    double length = 40.0;
    int n = 512;
    double t_final = 1.0;
    double bump_center = 20.0, bump_width = 0.5, bump_height = 1.0, background = 0.0;
    bool operator==(const FracHeatSection&) const = default;
};

struct EulerSection {
    int n_cells = 256;
    double length = 1.0;
    double cfl = 0.4;
    double t_final = 0.2;
    double base_r = 0.0, base_u = 1.0;
    double amp_r = 0.01, amp_p = 0.0;
    bool operator==(const EulerSection&) const = default;
};

struct ThermoSection {
    double r_min = -1.0, r_max = 1.0;
    double u_max = 3.0;
    double u_margin = 0.05;
    int nr = 128, nu = 128;
    std::string interp = "cubic";  // cubic | linear
    bool operator==(const ThermoSection&) const = default;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::ChainRun;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    int workers = 1;
    bool verbose = false;

    PotentialSpec potential;
    ChainSection chain;
    DynamicsSection dynamics;
    RunSection run;
    CorrelationSection correlation;
    PhononSection phonon;
    TransportSection transport;
    FracHeatSection frac_heat;
    EulerSection euler;
    ThermoSection thermo;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Parse the line-oriented key = value format with [section] headers.
/// Collects every validation problem (unknown key, bad type, constraint
/// violation) with its line number and throws a single ConfigError listing
/// them all.
ExperimentConfig parse_config(const std::string& text);

/// Canonical emission; emit(parse(text)) parses back to an equal config.
std::string emit_config(const ExperimentConfig& config);

/// Horizons used when [phonon] horizons is omitted: eps^{-alpha} for the
/// dyadic ladder eps = 2^-3 .. 2^-8 with alpha from the dispersion kind.
std::vector<double> default_horizons(const std::string& dispersion_kind);

}  // namespace chainlab
