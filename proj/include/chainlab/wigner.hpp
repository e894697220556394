#pragma once

#include <filesystem>
#include <vector>

#include "chainlab/chain.hpp"
#include "chainlab/potential.hpp"

namespace chainlab {

struct WignerOptions {
    int n_y = 64;               // output cells in macroscopic position
    int n_k = 64;               // output cells in mode number
    double window_sites = 8.0;  // Gaussian window width (lattice sites) in the
                                // separation variable; sets the k resolution
};

/// Position-mode energy density of a harmonic chain on an (y, k) grid.
/// Cell values are energies per site per unit k; integral() recovers the
/// total chain energy.
struct WignerField {
    int n_y = 0, n_k = 0;
    int n_sites = 0;
    double epsilon = 0.0;
    double window_sites = 0.0;
    std::vector<double> values;  // row-major [iy][ik]

    double& at(int iy, int ik) { return values[static_cast<std::size_t>(iy) * n_k + ik]; }
    double at(int iy, int ik) const { return values[static_cast<std::size_t>(iy) * n_k + ik]; }

    double y_center(int iy) const;  // macroscopic position eps * x
    double k_center(int ik) const;

    /// Discrete integral recovering the total chain energy.
    double integral() const;

    void write_csv(const std::filesystem::path& path) const;
};

/// Wigner energy density of a harmonic chain state. Builds the mode field
/// psi(k) = (omega(k) qhat(k) + i phat(k)) / sqrt2 (unpinned q reconstructed
/// from stretches in the zero-mean gauge; the k=0 mode carries only the
/// momentum part), transports it to position space and assembles the windowed
/// two-point energy density. Requires a harmonic interaction and a
/// power-of-two number of sites divisible by n_y and n_k.
WignerField wigner_transform(const ChainState& state, const PotentialSpec& spec, double epsilon,
                             const WignerOptions& opts = {});

/// Accumulate the ensemble mean of fields (e.g. over equilibrium draws).
void wigner_accumulate(WignerField& mean, const WignerField& sample, int count_so_far);

}  // namespace chainlab
