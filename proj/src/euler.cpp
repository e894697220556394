#include "chainlab/euler.hpp"

#include <cmath>
#include <sstream>

#include "chainlab/csv.hpp"
#include "chainlab/errors.hpp"

namespace chainlab {

HydroField HydroField::uniform(int n, double length, double r0, double p0, double e0) {
    HydroField f;
    f.n_cells = n;
    f.length = length;
    f.r.assign(n, r0);
    f.p.assign(n, p0);
    f.e.assign(n, e0);
    return f;
}

HydroField::Totals HydroField::totals() const {
    Totals t{0.0, 0.0, 0.0};
    for (int i = 0; i < n_cells; ++i) {
        t.r += r[i];
        t.p += p[i];
        t.e += e[i];
    }
    return t;
}

void HydroField::write_csv(const std::filesystem::path& path, const ThermoTable* table) const {
    CsvWriter w(path);
    w.comment("hydrodynamic fields; time=" + format_double(time) +
              " length=" + format_double(length));
    w.header(table ? "y,r,p,e,S" : "y,r,p,e");
    for (int i = 0; i < n_cells; ++i) {
        if (table)
            w.row({y_center(i), r[i], p[i], e[i], table->entropy(r[i], internal_energy(i))});
        else
            w.row({y_center(i), r[i], p[i], e[i]});
    }
}

namespace {

void check_cell(const HydroField& f, const ThermoTable& table, int i) {
    double u = f.internal_energy(i);
    if (!std::isfinite(u) || !std::isfinite(f.r[i]) || !table.in_domain(f.r[i], u)) {
        std::ostringstream os;
        os << "euler_step: cell " << i << " left the thermodynamic domain at t=" << f.time
           << " (r=" << f.r[i] << ", u=" << u << "); likely gradient blow-up, run halted";
        throw BlowupError(os.str(), i, f.time);
    }
}

}  // namespace

double euler_step(HydroField& field, const ThermoTable& table, double cfl, double dt_cap) {
    if (cfl <= 0.0 || cfl > 0.5) throw ConfigError("euler_step: cfl must lie in (0, 0.5]");
    const int n = field.n_cells;
    if (n < 4) throw ConfigError("euler_step: need at least 4 cells");

    std::vector<double> press(n), speed(n);
    double a_max = 1e-12;
    for (int i = 0; i < n; ++i) {
        check_cell(field, table, i);
        double u = field.internal_energy(i);
        press[i] = table.pressure(field.r[i], u);
        speed[i] = table.char_speed(field.r[i], u);
        a_max = std::max(a_max, speed[i]);
    }
    const double dy = field.dy();
    const double dt = std::min(cfl * dy / a_max, dt_cap);

    // fluxes of the conservation form d_t U + d_y F = 0 with F = -(p, P, pP)
    auto flux_r = [&](int i) { return -field.p[i]; };
    auto flux_p = [&](int i) { return -press[i]; };
    auto flux_e = [&](int i) { return -field.p[i] * press[i]; };

    std::vector<double> fr(n), fp(n), fe(n);  // interface fluxes at i+1/2
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        double a = std::max(speed[i], speed[j]) * 1.05;  // local Lax-Friedrichs bound
        fr[i] = 0.5 * (flux_r(i) + flux_r(j)) - 0.5 * a * (field.r[j] - field.r[i]);
        fp[i] = 0.5 * (flux_p(i) + flux_p(j)) - 0.5 * a * (field.p[j] - field.p[i]);
        fe[i] = 0.5 * (flux_e(i) + flux_e(j)) - 0.5 * a * (field.e[j] - field.e[i]);
    }
    const double lam = dt / dy;
    for (int i = 0; i < n; ++i) {
        int im = (i - 1 + n) % n;
        field.r[i] -= lam * (fr[i] - fr[im]);
        field.p[i] -= lam * (fp[i] - fp[im]);
        field.e[i] -= lam * (fe[i] - fe[im]);
    }
    field.time += dt;
    for (int i = 0; i < n; ++i) check_cell(field, table, i);
    return dt;
}

void euler_evolve(HydroField& field, const ThermoTable& table, double cfl, double t_final,
                  const std::function<void(const HydroField&)>& callback) {
    if (t_final < field.time) throw ConfigError("euler_evolve: t_final < field time");
    while (field.time < t_final - 1e-12) {
        euler_step(field, table, cfl, t_final - field.time);
        if (callback) callback(field);
    }
}

EntropyDiagnostic entropy_diagnostic(const HydroField& field, const ThermoTable& table) {
    EntropyDiagnostic d;
    d.per_cell.resize(field.n_cells);
    for (int i = 0; i < field.n_cells; ++i) {
        d.per_cell[i] = table.entropy(field.r[i], field.internal_energy(i));
        d.total += d.per_cell[i];
    }
    d.total *= field.dy();
    return d;
}

}  // namespace chainlab
