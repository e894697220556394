#include "chainlab/fracheat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chainlab/csv.hpp"
#include "chainlab/errors.hpp"
#include "chainlab/fft.hpp"

namespace chainlab {

namespace {
constexpr double pi = std::numbers::pi;
bool power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

void FracHeatProblem::validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw ConfigError("fractional order alpha must be in (0,2]");
    if (c <= 0.0) throw ConfigError("diffusivity c must be positive");
    if (length <= 0.0) throw ConfigError("domain length must be positive");
    if (!power_of_two(u0.size())) throw ConfigError("initial profile size must be a power of two");
}

std::vector<double> solve(const FracHeatProblem& problem, double t) {
    problem.validate();
    if (t < 0.0) throw ConfigError("solve: t must be >= 0");
    const std::size_t n = problem.u0.size();
    auto spec = fft_forward(problem.u0);
    for (std::size_t j = 0; j < n; ++j) {
        // signed mode number, |m| <= n/2
        double m = j <= n / 2 ? static_cast<double>(j) : static_cast<double>(j) - n;
        double xi = 2.0 * pi * std::abs(m) / problem.length;
        spec[j] *= std::exp(-problem.c * std::pow(xi, problem.alpha) * t);
    }
    // enforce Hermitian symmetry so the output is exactly real
    for (std::size_t j = 1; j < n / 2; ++j) {
        auto avg = 0.5 * (spec[j] + std::conj(spec[n - j]));
        spec[j] = avg;
        spec[n - j] = std::conj(avg);
    }
    spec[n / 2] = spec[n / 2].real();
    return fft_backward_real(std::move(spec));
}

double sample_stable_one(double alpha, RngStream& rng) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw ConfigError("stable index alpha must be in (0,2]");
    double u = pi * (rng.uniform() - 0.5);  // uniform on (-pi/2, pi/2)
    double e = rng.exponential();
    if (alpha == 1.0) return std::tan(u);
    double s = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha);
    double w = std::cos((1.0 - alpha) * u) / e;
    return s * std::pow(w, (1.0 - alpha) / alpha);
}

std::vector<double> sample_stable(double alpha, double scale, int n, RngStream& rng) {
    if (scale <= 0.0) throw ConfigError("stable scale must be positive");
    std::vector<double> out(n);
    double mult = std::pow(scale, 1.0 / alpha);
    for (int i = 0; i < n; ++i) out[i] = mult * sample_stable_one(alpha, rng);
    return out;
}

ScalingLadder run_scaling_ladder(const DispersionSpec& disp, const KernelSpec& kernel,
                                 double gamma, const std::vector<double>& u0, double length,
                                 double t, double alpha, const std::vector<double>& epsilons,
                                 int n_k, double cfl) {
    if (epsilons.empty()) throw ConfigError("run_scaling_ladder needs a nonempty epsilon list");
    const int n_y = static_cast<int>(u0.size());
    ScalingLadder out;
    out.epsilons = epsilons;
    out.length = length;
    out.t = t;
    out.alpha = alpha;
    for (double eps : epsilons) {
        if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("epsilons must lie in (0,1)");
        TransportField f = TransportField::zeros(n_y, n_k, length);
        for (int iy = 0; iy < n_y; ++iy)
            for (int ik = 0; ik < n_k; ++ik) f.at(iy, ik) = u0[iy];
        TransportOptions opts;
        opts.cfl = cfl;
        opts.speed_scale = std::pow(eps, 1.0 - alpha);
        opts.collision_scale = std::pow(eps, -alpha);
        f = solve_transport(f, disp, kernel, gamma, t, opts);
        out.profiles.push_back(f.k_integrated());
    }
    return out;
}

namespace {

double l2_distance(const std::vector<double>& a, const std::vector<double>& b, double dy) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s * dy);
}

}  // namespace

LadderReport kinetic_to_fractional_check(const ScalingLadder& ladder, FracHeatProblem problem,
                                         bool fit_c) {
    if (ladder.profiles.empty()) throw ConfigError("empty scaling ladder");
    problem.alpha = ladder.alpha;
    problem.length = ladder.length;
    for (const auto& pr : ladder.profiles)
        if (pr.size() != problem.u0.size())
            throw ConfigError("ladder profiles and problem grid must match");

    const double dy = problem.dy();
    // largest epsilon anchors the diffusivity fit
    std::size_t anchor = 0;
    for (std::size_t m = 1; m < ladder.epsilons.size(); ++m)
        if (ladder.epsilons[m] > ladder.epsilons[anchor]) anchor = m;

    auto distance_with_c = [&](double c) {
        FracHeatProblem p = problem;
        p.c = c;
        auto u = solve(p, ladder.t);
        return l2_distance(ladder.profiles[anchor], u, dy);
    };

    LadderReport rep;
    if (fit_c) {
        // golden-section on log c around the initial guess
        double lo = std::log(problem.c) - 6.0, hi = std::log(problem.c) + 6.0;
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
        double f1 = distance_with_c(std::exp(x1)), f2 = distance_with_c(std::exp(x2));
        for (int it = 0; it < 80; ++it) {
            if (f1 < f2) {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = distance_with_c(std::exp(x1));
            } else {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = distance_with_c(std::exp(x2));
            }
        }
        problem.c = std::exp(0.5 * (x1 + x2));
        rep.fit_residual = distance_with_c(problem.c);
    } else {
        rep.fit_residual = distance_with_c(problem.c);
    }
    rep.fitted_c = problem.c;

    auto reference = solve(problem, ladder.t);
    rep.epsilons = ladder.epsilons;
    for (const auto& pr : ladder.profiles)
        rep.l2_distances.push_back(l2_distance(pr, reference, dy));

    // trend check in decreasing epsilon, 10% slack for Monte Carlo style noise
    std::vector<std::size_t> order(ladder.epsilons.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return ladder.epsilons[a] > ladder.epsilons[b];
    });
    rep.monotone_decreasing = true;
    for (std::size_t m = 1; m < order.size(); ++m)
        if (rep.l2_distances[order[m]] > 1.1 * rep.l2_distances[order[m - 1]])
            rep.monotone_decreasing = false;
    return rep;
}

void LadderReport::write_report(const std::filesystem::path& path) const {
    CsvWriter w(path);
    w.raw_line("fitted_c = " + format_double(fitted_c));
    w.raw_line("fit_residual = " + format_double(fit_residual));
    w.raw_line(std::string("monotone_decreasing = ") + (monotone_decreasing ? "1" : "0"));
    w.raw_line("epsilon,l2_distance");
    for (std::size_t i = 0; i < epsilons.size(); ++i)
        w.raw_line(format_double(epsilons[i]) + "," + format_double(l2_distances[i]));
}

}  // namespace chainlab
