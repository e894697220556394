#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "chainlab/thermo.hpp"

namespace chainlab {

/// Conserved fields of the hyperbolic system on a periodic y-grid:
/// stretch r, momentum p, total energy e per cell.
struct HydroField {
    int n_cells = 0;
    double length = 1.0;
    double time = 0.0;
    std::vector<double> r, p, e;

    static HydroField uniform(int n, double length, double r0, double p0, double e0);
    double dy() const { return length / n_cells; }
    double y_center(int i) const { return (i + 0.5) * dy(); }
    double internal_energy(int i) const { return e[i] - 0.5 * p[i] * p[i]; }

    struct Totals {
        double r, p, e;
    };
    Totals totals() const;

    void write_csv(const std::filesystem::path& path, const ThermoTable* table = nullptr) const;
};

/// One conservative local Lax-Friedrichs step for
///   d_t r = d_y p,  d_t p = d_y P(r,u),  d_t e = d_y (p P(r,u)),  u = e - p^2/2
/// (flux vector -(p, P, p P)). Time step from the CFL number against the
/// tabulated characteristic speed, capped by dt_cap. Returns the dt taken.
/// Throws BlowupError if a cell exits the thermodynamic domain (pre-shock
/// breakdown).
double euler_step(HydroField& field, const ThermoTable& table, double cfl,
                  double dt_cap = 1e300);

/// Advance to t_final; invokes the callback after every step when set.
void euler_evolve(HydroField& field, const ThermoTable& table, double cfl, double t_final,
                  const std::function<void(const HydroField&)>& callback = {});

struct EntropyDiagnostic {
    std::vector<double> per_cell;
    double total = 0.0;  // cell-summed entropy times dy
};
EntropyDiagnostic entropy_diagnostic(const HydroField& field, const ThermoTable& table);

}  // namespace chainlab
