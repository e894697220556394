#include "chainlab/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chainlab/csv.hpp"
#include "chainlab/errors.hpp"
#include "chainlab/parallel.hpp"

namespace chainlab {

namespace {
constexpr double pi = std::numbers::pi;
}

double DispersionSpec::omega(double k) const {
    double s = std::sin(pi * k);
    return kind == Kind::Acoustic ? c * std::abs(s) : std::sqrt(nu * nu + 4.0 * c * c * s * s);
}

double DispersionSpec::omega_prime(double k) const {
    if (kind == Kind::Acoustic) {
        // omega = c |sin(pi k)|: derivative c pi cos(pi k) sign(sin)
        double sgn = std::sin(pi * k) >= 0.0 ? 1.0 : -1.0;
        return c * pi * std::cos(pi * k) * sgn;
    }
    double w = omega(k);
    if (w == 0.0) return 0.0;
    return 2.0 * pi * c * c * std::sin(2.0 * pi * k) / w;
}

double DispersionSpec::velocity(double k) const { return omega_prime(k) / (2.0 * pi); }

DispersionSpec DispersionSpec::from_potential(const PotentialSpec& spec) {
    if (spec.interaction != InteractionKind::Harmonic)
        throw UnsupportedError("dispersion is defined for harmonic interactions");
    if (!spec.pinned()) return acoustic(2.0 * std::sqrt(spec.a));
    if (spec.pinning != PinningKind::Quadratic)
        throw UnsupportedError("dispersion requires quadratic pinning");
    return gapped(std::sqrt(spec.a), std::sqrt(spec.nu2));
}

void KernelSpec::validate() const {
    if (form == Form::Product) {
        if (c_k <= 0.0) throw ConfigError("product kernel requires c_k > 0");
        return;
    }
    if (table_n < 8) throw ConfigError("tabulated kernel needs at least an 8x8 grid");
    if (static_cast<int>(table.size()) != table_n * table_n)
        throw ConfigError("tabulated kernel values must be table_n x table_n");
    for (int i = 0; i < table_n; ++i)
        for (int j = 0; j < i; ++j) {
            double cij = table[static_cast<std::size_t>(i) * table_n + j];
            double cji = table[static_cast<std::size_t>(j) * table_n + i];
            if (cij < 0.0 || std::abs(cij - cji) > 1e-10 * (1.0 + std::abs(cij)))
                throw ConfigError("tabulated kernel must be nonnegative and symmetric");
        }
}

double KernelSpec::value(double k, double kp) const {
    if (form == Form::Product) {
        double s = std::sin(pi * k), sp = std::sin(pi * kp);
        return c_k * s * s * sp * sp;
    }
    auto idx = [this](double x) {
        x -= std::floor(x);
        int i = static_cast<int>(x * table_n);
        return std::min(i, table_n - 1);
    };
    return table[static_cast<std::size_t>(idx(k)) * table_n + idx(kp)];
}

KernelSpec KernelSpec::tabulated(int n, std::vector<double> values) {
    KernelSpec s;
    s.form = Form::Tabulated;
    s.table_n = n;
    s.table = std::move(values);
    s.validate();
    return s;
}

KernelSpec momentum_exchange_kernel(int n) {
    std::vector<double> vals(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        double ki = (i + 0.5) / n;
        double si = std::sin(pi * ki);
        for (int j = 0; j < n; ++j) {
            double kj = (j + 0.5) / n;
            double sj = std::sin(pi * kj);
            double sij = std::sin(pi * (ki + kj));
            vals[static_cast<std::size_t>(i) * n + j] =
                (32.0 / 3.0) * si * si * sj * sj * sij * sij;
        }
    }
    return KernelSpec::tabulated(n, std::move(vals));
}

double total_rate(const KernelSpec& kernel, double gamma, double k) {
    if (gamma < 0.0) throw ConfigError("total_rate requires gamma >= 0");
    kernel.validate();
    if (kernel.form == KernelSpec::Form::Product) {
        double s = std::sin(pi * k);
        return gamma * kernel.c_k * s * s * 0.5;  // int sin^2 = 1/2
    }
    // midpoint rule on the table's own grid
    double acc = 0.0;
    for (int j = 0; j < kernel.table_n; ++j) acc += kernel.value(k, (j + 0.5) / kernel.table_n);
    return gamma * acc / kernel.table_n;
}

ModeJumpSampler::ModeJumpSampler(const KernelSpec& kernel, int grid_n)
    : kernel_(kernel), grid_n_(grid_n) {
    kernel.validate();
    separable_ = kernel.form == KernelSpec::Form::Product;
    if (separable_) {
        // target density ~ sin^2(pi k'), independent of the source mode
        cdf_.resize(grid_n_ + 1);
        cdf_[0] = 0.0;
        for (int i = 0; i < grid_n_; ++i) {
            double k = (i + 0.5) / grid_n_;
            double s = std::sin(pi * k);
            cdf_[i + 1] = cdf_[i] + s * s;
        }
        for (auto& v : cdf_) v /= cdf_.back();
    } else {
        grid_n_ = kernel.table_n;
        row_cdf_.resize(static_cast<std::size_t>(grid_n_) * (grid_n_ + 1));
        row_rate_.resize(grid_n_);
        for (int i = 0; i < grid_n_; ++i) {
            double* row = &row_cdf_[static_cast<std::size_t>(i) * (grid_n_ + 1)];
            row[0] = 0.0;
            for (int j = 0; j < grid_n_; ++j)
                row[j + 1] = row[j] + kernel.table[static_cast<std::size_t>(i) * grid_n_ + j];
            row_rate_[i] = row[grid_n_] / grid_n_;
            if (row[grid_n_] > 0.0)
                for (int j = 0; j <= grid_n_; ++j) row[j] /= row[grid_n_];
        }
    }
}

double ModeJumpSampler::rate(double gamma, double k_from) const {
    if (separable_) {
        double s = std::sin(pi * k_from);
        return gamma * kernel_.c_k * s * s * 0.5;
    }
    double x = k_from - std::floor(k_from);
    int i = std::min(static_cast<int>(x * grid_n_), grid_n_ - 1);
    return gamma * row_rate_[i];
}

double ModeJumpSampler::sample(double k_from, RngStream& rng) const {
    const double u = rng.uniform();
    const double* cdf;
    if (separable_) {
        cdf = cdf_.data();
    } else {
        double x = k_from - std::floor(k_from);
        int i = std::min(static_cast<int>(x * grid_n_), grid_n_ - 1);
        cdf = &row_cdf_[static_cast<std::size_t>(i) * (grid_n_ + 1)];
    }
    const double* it = std::upper_bound(cdf, cdf + grid_n_ + 1, u);
    int cell = std::clamp(static_cast<int>(it - cdf) - 1, 0, grid_n_ - 1);
    double t = (cdf[cell + 1] > cdf[cell]) ? (u - cdf[cell]) / (cdf[cell + 1] - cdf[cell]) : 0.5;
    return (cell + t) / grid_n_;
}

double PhononTrajectory::position_at(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= t_final) return y_final;
    // walk the segments; jump_times is short for typical use
    double t_prev = 0.0, y_prev = 0.0;
    for (std::size_t i = 0; i < jump_times.size(); ++i) {
        if (t < jump_times[i]) {
            double frac = (t - t_prev);
            double v = (jump_times[i] - t_prev) > 0.0
                           ? (y_at_jump[i] - y_prev) / (jump_times[i] - t_prev)
                           : 0.0;
            return y_prev + v * frac;
        }
        t_prev = jump_times[i];
        y_prev = y_at_jump[i];
    }
    // ballistic tail after the final jump
    double denom = t_final - t_prev;
    double v = denom > 0.0 ? (y_final - y_prev) / denom : 0.0;
    return y_prev + v * (t - t_prev);
}

PhononTrajectory sample_trajectory(const DispersionSpec& disp, const KernelSpec& kernel,
                                   double gamma, double k0, double t_final, RngStream& rng) {
    if (t_final <= 0.0) throw ConfigError("sample_trajectory requires t_final > 0");
    ModeJumpSampler sampler(kernel);
    PhononTrajectory tr;
    tr.k0 = k0;
    tr.t_final = t_final;
    double t = 0.0, y = 0.0, k = k0;
    for (;;) {
        double lam = sampler.rate(gamma, k);
        double hold = lam > 0.0 ? rng.exponential() / lam
                                : std::numeric_limits<double>::infinity();
        double v = disp.velocity(k);
        if (t + hold >= t_final) {
            y += v * (t_final - t);
            break;
        }
        t += hold;
        y += v * hold;
        tr.jump_times.push_back(t);
        tr.y_at_jump.push_back(y);
        tr.modes.push_back(k);
        k = sampler.sample(k, rng);
    }
    tr.y_final = y;
    tr.k_final = k;
    return tr;
}

EnsemblePositions sample_ensemble(const DispersionSpec& disp, const KernelSpec& kernel,
                                  double gamma, const std::vector<double>& horizons,
                                  const EnsembleOptions& opts) {
    if (horizons.empty()) throw ConfigError("sample_ensemble needs at least one horizon");
    for (double h : horizons)
        if (h <= 0.0) throw ConfigError("horizons must be positive");
    double t_max = *std::max_element(horizons.begin(), horizons.end());

    EnsemblePositions out;
    out.horizons = horizons;
    out.y.assign(opts.n_trajectories, {});
    out.jump_counts.assign(opts.n_trajectories, 0);

    ModeJumpSampler sampler(kernel);
    parallel_for(opts.n_trajectories, opts.workers, [&](std::size_t i) {
        RngStream rng(opts.master_seed, opts.stream_base + i);
        double k0 = rng.uniform();
        // inline walk so positions at every horizon come out in one pass
        std::vector<double> ys(horizons.size());
        double t = 0.0, y = 0.0, k = k0;
        std::uint64_t jumps = 0;
        std::vector<std::pair<double, std::size_t>> order(horizons.size());
        for (std::size_t m = 0; m < horizons.size(); ++m) order[m] = {horizons[m], m};
        std::sort(order.begin(), order.end());
        std::size_t next_h = 0;
        for (;;) {
            double lam = sampler.rate(gamma, k);
            double hold = lam > 0.0 ? rng.exponential() / lam
                                    : std::numeric_limits<double>::infinity();
            double v = disp.velocity(k);
            double t_next = t + hold;
            while (next_h < order.size() && order[next_h].first <= t_next) {
                ys[order[next_h].second] = y + v * (order[next_h].first - t);
                ++next_h;
            }
            if (next_h >= order.size() || t_next >= t_max) break;
            t = t_next;
            y += v * hold;
            k = sampler.sample(k, rng);
            ++jumps;
        }
        out.y[i] = std::move(ys);
        out.jump_counts[i] = jumps;
    });
    return out;
}

namespace {

double quantile(std::vector<double> v, double q) {
    std::size_t i = static_cast<std::size_t>(q * (v.size() - 1));
    std::nth_element(v.begin(), v.begin() + i, v.end());
    return v[i];
}

struct FitResult {
    double alpha;
    bool ok;
};

// slope of log(-log|phi(theta)|) vs log theta over a window where the
// characteristic function is well resolved
FitResult charfn_alpha(const std::vector<double>& y, const std::vector<std::size_t>& idx) {
    std::vector<double> abs_y;
    abs_y.reserve(idx.size());
    for (auto i : idx) abs_y.push_back(std::abs(y[i]));
    double spread = quantile(abs_y, 0.75);
    if (!(spread > 0.0)) return {0.0, false};
    const int n_theta = 12;
    std::vector<double> lx, ly;
    for (int t = 0; t < n_theta; ++t) {
        double theta = (0.2 + 2.6 * t / (n_theta - 1)) / spread;
        double re = 0.0, im = 0.0;
        for (auto i : idx) {
            re += std::cos(theta * y[i]);
            im += std::sin(theta * y[i]);
        }
        re /= idx.size();
        im /= idx.size();
        double mod = std::sqrt(re * re + im * im);
        if (mod < 0.2 || mod > 0.92) continue;  // noise floor / degenerate -log
        lx.push_back(std::log(theta));
        ly.push_back(std::log(-std::log(mod)));
    }
    if (lx.size() < 4) return {0.0, false};
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx <= 0.0) return {0.0, false};
    return {sxy / sxx, true};
}

// slope of log IQR vs log t across the horizon ladder gives 1/alpha
FitResult quantile_alpha(const EnsemblePositions& e, const std::vector<std::size_t>& idx) {
    std::vector<double> lx, ly;
    for (std::size_t m = 0; m < e.horizons.size(); ++m) {
        std::vector<double> ym;
        ym.reserve(idx.size());
        for (auto i : idx) ym.push_back(e.y[i][m]);
        double iqr = quantile(ym, 0.75) - quantile(ym, 0.25);
        if (!(iqr > 0.0)) return {0.0, false};
        lx.push_back(std::log(e.horizons[m]));
        ly.push_back(std::log(iqr));
    }
    if (lx.size() < 2) return {0.0, false};
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    double slope = sxy / sxx;
    if (!(slope > 1e-6)) return {0.0, false};
    return {1.0 / slope, true};
}

}  // namespace

ExponentEstimate estimate_scaling_exponent(const EnsemblePositions& ensemble,
                                           ExponentMethod method, RngStream& rng) {
    const std::size_t n = ensemble.y.size();
    if (n < 100) throw ConfigError("estimate_scaling_exponent needs a large ensemble");
    bool all_ballistic = true;
    for (auto c : ensemble.jump_counts)
        if (c > 0) {
            all_ballistic = false;
            break;
        }
    if (!ensemble.jump_counts.empty() && all_ballistic)
        throw NumericalError("estimate_scaling_exponent: degenerate ensemble, no scattering");

    std::size_t last = ensemble.horizons.size() - 1;
    for (std::size_t m = 0; m < ensemble.horizons.size(); ++m)
        if (ensemble.horizons[m] > ensemble.horizons[last]) last = m;
    std::vector<double> y_last(n);
    for (std::size_t i = 0; i < n; ++i) y_last[i] = ensemble.y[i][last];

    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;

    auto fit = [&](const std::vector<std::size_t>& idx) -> FitResult {
        return method == ExponentMethod::CharFnFit ? charfn_alpha(y_last, idx)
                                                   : quantile_alpha(ensemble, idx);
    };

    FitResult point = fit(all);
    if (!point.ok)
        throw NumericalError("estimate_scaling_exponent: fit window empty or degenerate spread");

    const int n_boot = 120;
    std::vector<double> boots;
    boots.reserve(n_boot);
    std::vector<std::size_t> idx(n);
    for (int b = 0; b < n_boot; ++b) {
        for (std::size_t i = 0; i < n; ++i) idx[i] = rng.below(n);
        FitResult fr = fit(idx);
        if (fr.ok) boots.push_back(fr.alpha);
    }
    std::sort(boots.begin(), boots.end());

    ExponentEstimate est;
    est.alpha = point.alpha;
    est.method = method;
    est.n_used = static_cast<int>(n);
    if (boots.size() >= 20) {
        est.ci_lo = boots[static_cast<std::size_t>(0.025 * (boots.size() - 1))];
        est.ci_hi = boots[static_cast<std::size_t>(0.975 * (boots.size() - 1))];
    } else {
        est.ci_lo = est.ci_hi = point.alpha;
    }

    // excess kurtosis of the largest-horizon positions (diffusive diagnostics)
    double mean = 0.0;
    for (double v : y_last) mean += v;
    mean /= n;
    double m2 = 0.0, m4 = 0.0;
    for (double v : y_last) {
        double d = v - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m4 /= n;
    est.excess_kurtosis = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
    return est;
}

void ExponentEstimate::write_report(const std::filesystem::path& path) const {
    CsvWriter w(path);
    w.raw_line("alpha = " + format_double(alpha));
    w.raw_line("ci_lo = " + format_double(ci_lo));
    w.raw_line("ci_hi = " + format_double(ci_hi));
    w.raw_line(std::string("method = ") +
               (method == ExponentMethod::CharFnFit ? "char_fn_fit" : "quantile_ratio"));
    w.raw_line("excess_kurtosis = " + format_double(excess_kurtosis));
    w.raw_line("n_trajectories = " + std::to_string(n_used));
}

}  // namespace chainlab
