#pragma once

#include <filesystem>
#include <vector>

#include "chainlab/kinetics.hpp"

namespace chainlab {

/// W(y,k) on a periodic y-grid (cell centers) times a midpoint k-grid.
struct TransportField {
    int n_y = 0, n_k = 0;
    double length = 1.0;  // periodic domain length in y
    double time = 0.0;
    std::vector<double> w;  // row-major [iy][ik]

    static TransportField zeros(int n_y, int n_k, double length);

    double& at(int iy, int ik) { return w[static_cast<std::size_t>(iy) * n_k + ik]; }
    double at(int iy, int ik) const { return w[static_cast<std::size_t>(iy) * n_k + ik]; }
    double dy() const { return length / n_y; }
    double y_center(int iy) const { return (iy + 0.5) * dy(); }
    double k_center(int ik) const { return (ik + 0.5) / n_k; }

    /// int int W dy dk on the grid
    double mass() const;
    /// k-averaged profile int W dk per y cell
    std::vector<double> k_integrated() const;

    void write_csv(const std::filesystem::path& path) const;
};

struct TransportOptions {
    double cfl = 0.6;
    /// coefficient scalings used by the macroscopic rescaling ladder:
    /// advection velocity is multiplied by speed_scale, the collision rate by
    /// collision_scale
    double speed_scale = 1.0;
    double collision_scale = 1.0;
};

/// Solve d_t W + v(k) d_y W = gamma int C(k,k') (W(k') - W(k)) dk' by
/// operator splitting: first-order upwind advection per mode and an exact
/// exponential collision step (eigendecomposition of the symmetrized
/// collision matrix; conserves int W dk per cell to rounding).
TransportField solve_transport(const TransportField& initial, const DispersionSpec& disp,
                               const KernelSpec& kernel, double gamma, double t_final,
                               const TransportOptions& opts = {});

}  // namespace chainlab
