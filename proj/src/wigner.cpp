#include "chainlab/wigner.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "chainlab/csv.hpp"
#include "chainlab/errors.hpp"
#include "chainlab/fft.hpp"

namespace chainlab {

namespace {
constexpr double pi = std::numbers::pi;
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

double WignerField::y_center(int iy) const {
    double sites_per_cell = static_cast<double>(n_sites) / n_y;
    return epsilon * (iy + 0.5) * sites_per_cell;
}

double WignerField::k_center(int ik) const {
    double modes_per_cell = static_cast<double>(n_sites) / n_k;
    return (ik + 0.5) * modes_per_cell / n_sites;
}

double WignerField::integral() const {
    // cell value is the mean of the site-resolved density over the block;
    // block sums are value * (N/n_y) * (N/n_k), and the k-sum carries 1/N
    double s = 0.0;
    for (double v : values) s += v;
    double njy = static_cast<double>(n_sites) / n_y;
    double njk = static_cast<double>(n_sites) / n_k;
    return s * njy * njk / n_sites;
}

void WignerField::write_csv(const std::filesystem::path& path) const {
    CsvWriter w(path);
    w.comment("wigner energy density; epsilon=" + format_double(epsilon) +
              " n_sites=" + std::to_string(n_sites) +
              " window_sites=" + format_double(window_sites));
    w.header("y,k,value");
    for (int iy = 0; iy < n_y; ++iy)
        for (int ik = 0; ik < n_k; ++ik) w.row({y_center(iy), k_center(ik), at(iy, ik)});
}

WignerField wigner_transform(const ChainState& state, const PotentialSpec& spec, double epsilon,
                             const WignerOptions& opts) {
    spec.validate();
    if (spec.interaction != InteractionKind::Harmonic)
        throw UnsupportedError("wigner_transform: the mode field is defined for harmonic chains");
    if (spec.pinning == PinningKind::Quartic)
        throw UnsupportedError("wigner_transform: quartic pinning has no harmonic dispersion");
    const int n = state.n_sites;
    if (!power_of_two(n)) throw ConfigError("wigner_transform: n_sites must be a power of two");
    if (n % opts.n_y != 0 || n % opts.n_k != 0)
        throw ConfigError("wigner_transform: n_y and n_k must divide n_sites");
    if (epsilon <= 0.0) throw ConfigError("wigner_transform: epsilon must be positive");

    // displacement field; unpinned states store stretches, integrate them in
    // the zero-mean gauge
    std::vector<double> q(n);
    if (state.rep == Representation::Stretch) {
        double acc = 0.0;
        for (int x = 0; x < n; ++x) {
            q[x] = acc;
            acc += state.conf[x];
        }
        double mean = 0.0;
        for (double v : q) mean += v;
        mean /= n;
        for (double& v : q) v -= mean;
    } else {
        q = state.conf;
    }

    auto qhat = fft_forward(q);
    auto phat = fft_forward(state.p);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<std::complex<double>> psi(n);
    for (int j = 0; j < n; ++j) {
        double s = std::sin(pi * j / n);
        double omega = spec.pinned() ? std::sqrt(spec.nu2 + 4.0 * spec.a * s * s)
                                     : 2.0 * std::sqrt(spec.a) * std::abs(s);
        psi[j] = inv_sqrt2 * (omega * qhat[j] + std::complex<double>(0.0, 1.0) * phat[j]);
    }

    // wave field in position space; sum_x |phi_x|^2 = total energy
    auto phi = psi;
    fft(phi, +1);
    for (auto& z : phi) z /= static_cast<double>(n);

    const double sigma = std::max(opts.window_sites, 1.0);
    const int h_max = std::min(n / 2 - 1, static_cast<int>(std::ceil(4.0 * sigma)));

    // block-averaged two-point function C_h(block) = avg_x conj(phi_x) phi_{x+h}
    const int block = n / opts.n_y;
    std::vector<std::complex<double>> ch(static_cast<std::size_t>(opts.n_y) * (2 * h_max + 1));
    for (int h = -h_max; h <= h_max; ++h) {
        double win = std::exp(-0.5 * (h / sigma) * (h / sigma));
        for (int b = 0; b < opts.n_y; ++b) {
            std::complex<double> acc = 0.0;
            for (int x = b * block; x < (b + 1) * block; ++x)
                acc += std::conj(phi[x]) * phi[(x + h + n) % n];
            ch[static_cast<std::size_t>(b) * (2 * h_max + 1) + (h + h_max)] =
                win * acc / static_cast<double>(block);
        }
    }

    // k-block averages of e^{-i 2 pi j h / N} over each output cell
    const int kblock = n / opts.n_k;
    std::vector<std::complex<double>> a(static_cast<std::size_t>(opts.n_k) * (2 * h_max + 1));
    for (int c = 0; c < opts.n_k; ++c)
        for (int h = -h_max; h <= h_max; ++h) {
            std::complex<double> acc = 0.0;
            for (int j = c * kblock; j < (c + 1) * kblock; ++j)
                acc += std::polar(1.0, -2.0 * pi * j * h / n);
            a[static_cast<std::size_t>(c) * (2 * h_max + 1) + (h + h_max)] =
                acc / static_cast<double>(kblock);
        }

    WignerField out;
    out.n_y = opts.n_y;
    out.n_k = opts.n_k;
    out.n_sites = n;
    out.epsilon = epsilon;
    out.window_sites = opts.window_sites;
    out.values.assign(static_cast<std::size_t>(opts.n_y) * opts.n_k, 0.0);
    for (int b = 0; b < opts.n_y; ++b)
        for (int c = 0; c < opts.n_k; ++c) {
            std::complex<double> acc = 0.0;
            const auto* cb = &ch[static_cast<std::size_t>(b) * (2 * h_max + 1)];
            const auto* ac = &a[static_cast<std::size_t>(c) * (2 * h_max + 1)];
            for (int t = 0; t < 2 * h_max + 1; ++t) acc += cb[t] * ac[t];
            out.at(b, c) = acc.real();
        }
    return out;
}

void wigner_accumulate(WignerField& mean, const WignerField& sample, int count_so_far) {
    if (mean.values.empty()) {
        mean = sample;
        return;
    }
    if (mean.values.size() != sample.values.size())
        throw ConfigError("wigner_accumulate: mismatched grids");
    double w = 1.0 / (count_so_far + 1);
    for (std::size_t i = 0; i < mean.values.size(); ++i)
        mean.values[i] += w * (sample.values[i] - mean.values[i]);
}

}  // namespace chainlab
