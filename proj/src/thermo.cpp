#include "chainlab/thermo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "chainlab/csv.hpp"
#include "chainlab/errors.hpp"
#include "chainlab/quadrature.hpp"

namespace chainlab {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

double initial_peak_guess(const PotentialSpec& spec, double lambda, double beta) {
    // harmonic solution lambda/(a beta) is a good start for every family
    double a_eff = std::max(spec.d2v(0.0), 0.1);
    return lambda / (a_eff * beta);
}
}  // namespace

double log_partition(const PotentialSpec& spec, double lambda, double beta) {
    if (beta <= 0.0) throw ConfigError("log_partition requires beta > 0");
    spec.validate();
    auto g = [&](double r) { return -beta * spec.v(r) + lambda * r; };
    return log_integral_exp(g, initial_peak_guess(spec, lambda, beta)).log_value;
}

TiltedMoments tilted_moments(const PotentialSpec& spec, double lambda, double beta) {
    if (beta <= 0.0) throw ConfigError("tilted_moments requires beta > 0");
    auto g = [&](double r) { return -beta * spec.v(r) + lambda * r; };
    LogIntegral li = log_integral_exp(g, initial_peak_guess(spec, lambda, beta));

    auto avg = [&](const std::function<double(double)>& f) {
        return integrate([&](double r) { return f(r) * std::exp(g(r) - li.log_value); },
                         li.lo, li.hi, 1e-12);
    };
    double mr = avg([](double r) { return r; });
    double mv = avg([&](double r) { return spec.v(r); });
    double mrr = avg([&](double r) { return (r - mr) * (r - mr); });
    double mvv = avg([&](double r) { double d = spec.v(r) - mv; return d * d; });
    double mrv = avg([&](double r) { return (r - mr) * (spec.v(r) - mv); });
    return {li.log_value, mr, mv, mrr, mvv, mrv};
}

ThermoPoint solve_thermo(const PotentialSpec& spec, double r, double u) {
    spec.validate();
    if (spec.pinned())
        throw UnsupportedError("solve_thermo: tabulated thermodynamics is for unpinned chains");
    double e0 = ground_state_energy(spec, r);
    if (!(u > e0))
        throw DomainError("solve_thermo: energy u <= ground-state energy at this stretch");

    // dual objective G(lambda, beta) = beta u - lambda r + logZ + (1/2) log(2 pi / beta),
    // jointly convex, minimized by damped Newton with beta kept positive.
    double a_eff = std::max(spec.d2v(0.0), 1e-2);
    double beta = 1.0 / std::max(u - spec.v(r), 0.05 * (u - e0) + 1e-12);
    double lambda = a_eff * beta * r;

    double g_l = 0.0, g_b = 0.0;
    TiltedMoments m{};
    auto grads = [&](double lam, double bet) {
        m = tilted_moments(spec, lam, bet);
        g_l = -r + m.mean_r;
        g_b = u - m.mean_v - 0.5 / bet;
    };
    auto objective = [&](double lam, double bet) {
        double lz = log_integral_exp(
                        [&](double rr) { return -bet * spec.v(rr) + lam * rr; },
                        initial_peak_guess(spec, lam, bet))
                        .log_value;
        return bet * u - lam * r + lz + 0.5 * std::log(two_pi / bet);
    };

    grads(lambda, beta);
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
        double tol = 1e-11 * (1.0 + std::abs(u) + std::abs(r));
        if (std::abs(g_l) < tol && std::abs(g_b) < tol) {
            converged = true;
            break;
        }
        // Hessian of G
        double h_ll = m.var_r;
        double h_lb = -m.cov_rv;
        double h_bb = m.var_v + 0.5 / (beta * beta);
        double det = h_ll * h_bb - h_lb * h_lb;
        double dl, db;
        if (det > 1e-300 && h_ll > 0.0) {
            dl = -(h_bb * g_l - h_lb * g_b) / det;
            db = -(h_ll * g_b - h_lb * g_l) / det;
        } else {  // fall back to gradient descent scaled by the diagonal
            dl = -g_l / std::max(h_ll, 1e-12);
            db = -g_b / std::max(h_bb, 1e-12);
        }
        double step = 1.0;
        if (beta + db <= 0.0) step = -0.9 * beta / db;
        double f0 = objective(lambda, beta);
        for (int ls = 0; ls < 60; ++ls) {
            double lam_n = lambda + step * dl, bet_n = beta + step * db;
            if (bet_n > 0.0 && objective(lam_n, bet_n) <= f0 + 1e-14 * std::abs(f0)) {
                lambda = lam_n;
                beta = bet_n;
                break;
            }
            step *= 0.5;
            if (ls == 59) { lambda += step * dl; beta = std::max(beta + step * db, 1e-12); }
        }
        grads(lambda, beta);
    }
    if (!converged) {
        std::ostringstream os;
        os << "solve_thermo: Newton did not converge at r=" << r << " u=" << u
           << " (residuals " << g_l << ", " << g_b << ")";
        throw NumericalError(os.str());
    }

    ThermoPoint tp;
    tp.lambda = lambda;
    tp.beta = beta;
    tp.rbar = r;
    tp.ubar = u;
    tp.pressure = lambda / beta;
    tp.log_z = m.log_z;
    tp.entropy = beta * u - lambda * r + m.log_z + 0.5 * std::log(two_pi / beta);
    return tp;
}

ThermoTable::ThermoTable(const PotentialSpec& spec, const ThermoTableSpec& ts)
    : spec_(spec), cubic_(ts.cubic) {
    spec.validate();
    if (ts.nr < 8 || ts.nu < 8) throw ConfigError("ThermoTable needs at least an 8x8 grid");
    double e0_max = std::max(ground_state_energy(spec, ts.r_min),
                             ground_state_energy(spec, ts.r_max));
    for (int i = 0; i < ts.nr; ++i) {
        double r = ts.r_min + (ts.r_max - ts.r_min) * i / (ts.nr - 1);
        e0_max = std::max(e0_max, ground_state_energy(spec, r));
    }
    double u_lo = e0_max + ts.u_margin_lo;
    if (!(ts.u_max > u_lo))
        throw ConfigError("ThermoTable: u_max must exceed ground state + margin");

    p_ = Grid2D(ts.r_min, ts.r_max, ts.nr, u_lo, ts.u_max, ts.nu);
    s_ = lam_ = bet_ = lz_ = dpdr_ = dpdu_ = p_;

    for (int j = 0; j < ts.nu; ++j) {
        for (int i = 0; i < ts.nr; ++i) {
            ThermoPoint tp = solve_thermo(spec, p_.x(i), p_.y(j));
            p_.at(i, j) = tp.pressure;
            s_.at(i, j) = tp.entropy;
            lam_.at(i, j) = tp.lambda;
            bet_.at(i, j) = tp.beta;
            lz_.at(i, j) = tp.log_z;
        }
    }
    for (int j = 0; j < ts.nu; ++j)
        for (int i = 0; i < ts.nr; ++i) {
            int i0 = std::max(i - 1, 0), i1 = std::min(i + 1, ts.nr - 1);
            int j0 = std::max(j - 1, 0), j1 = std::min(j + 1, ts.nu - 1);
            dpdr_.at(i, j) = (p_.at(i1, j) - p_.at(i0, j)) / ((i1 - i0) * p_.dx());
            dpdu_.at(i, j) = (p_.at(i, j1) - p_.at(i, j0)) / ((j1 - j0) * p_.dy());
        }
}

double ThermoTable::interp(const Grid2D& g, double r, double u) const {
    if (!g.contains(r, u)) {
        std::ostringstream os;
        os << "ThermoTable lookup (r=" << r << ", u=" << u << ") outside table domain ["
           << r_min() << "," << r_max() << "]x[" << u_min() << "," << u_max() << "]";
        throw DomainError(os.str());
    }
    return cubic_ ? g.cubic(r, u) : g.linear(r, u);
}

double ThermoTable::pressure(double r, double u) const { return interp(p_, r, u); }
double ThermoTable::entropy(double r, double u) const { return interp(s_, r, u); }

double ThermoTable::char_speed(double r, double u) const {
    double pr = interp(dpdr_, r, u);
    double pu = interp(dpdu_, r, u);
    double p = interp(p_, r, u);
    double c2 = pr + p * pu;
    return std::sqrt(std::max(c2, 0.0));
}

void ThermoTable::write_csv(const std::filesystem::path& path) const {
    CsvWriter w(path);
    w.comment("thermodynamic table, potential " + spec_.describe());
    w.header("r,u,lambda,beta,pressure,entropy,logZ");
    for (int j = 0; j < p_.ny(); ++j)
        for (int i = 0; i < p_.nx(); ++i)
            w.row({p_.x(i), p_.y(j), lam_.at(i, j), bet_.at(i, j), p_.at(i, j), s_.at(i, j),
                   lz_.at(i, j)});
}

}  // namespace chainlab
