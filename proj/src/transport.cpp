#include "chainlab/transport.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "chainlab/csv.hpp"
#include "chainlab/errors.hpp"

namespace chainlab {

TransportField TransportField::zeros(int n_y, int n_k, double length) {
    TransportField f;
    f.n_y = n_y;
    f.n_k = n_k;
    f.length = length;
    f.w.assign(static_cast<std::size_t>(n_y) * n_k, 0.0);
    return f;
}

double TransportField::mass() const {
    double s = 0.0;
    for (double v : w) s += v;
    return s * dy() / n_k;
}

std::vector<double> TransportField::k_integrated() const {
    std::vector<double> out(n_y, 0.0);
    for (int iy = 0; iy < n_y; ++iy) {
        double s = 0.0;
        for (int ik = 0; ik < n_k; ++ik) s += at(iy, ik);
        out[iy] = s / n_k;
    }
    return out;
}

void TransportField::write_csv(const std::filesystem::path& path) const {
    CsvWriter wr(path);
    wr.comment("transport field W(y,k); time=" + format_double(time) +
               " length=" + format_double(length));
    wr.header("y,k,value");
    for (int iy = 0; iy < n_y; ++iy)
        for (int ik = 0; ik < n_k; ++ik) wr.row({y_center(iy), k_center(ik), at(iy, ik)});
}

TransportField solve_transport(const TransportField& initial, const DispersionSpec& disp,
                               const KernelSpec& kernel, double gamma, double t_final,
                               const TransportOptions& opts) {
    if (opts.cfl <= 0.0 || opts.cfl >= 1.0)
        throw ConfigError("solve_transport: cfl must lie in (0,1)");
    if (t_final < initial.time) throw ConfigError("solve_transport: t_final < field time");
    if (gamma < 0.0) throw ConfigError("solve_transport: gamma must be >= 0");
    kernel.validate();

    const int n_y = initial.n_y, n_k = initial.n_k;
    TransportField f = initial;
    if (t_final == initial.time) return f;

    std::vector<double> vel(n_k);
    double v_max = 0.0;
    for (int ik = 0; ik < n_k; ++ik) {
        vel[ik] = opts.speed_scale * disp.velocity(f.k_center(ik));
        v_max = std::max(v_max, std::abs(vel[ik]));
    }
    double dt = t_final - f.time;
    long n_steps = 1;
    if (v_max > 0.0) {
        double dt_cfl = opts.cfl * f.dy() / v_max;
        n_steps = static_cast<long>(std::ceil((t_final - f.time) / dt_cfl - 1e-12));
        n_steps = std::max(n_steps, 1L);
        dt = (t_final - f.time) / n_steps;
    }

    // exact collision propagator over dt: the intensity matrix
    // A_ij = gamma_eff (C(k_i,k_j)/n_k - delta_ij lambda_i) is symmetrizable;
    // rates use the same midpoint sum as the gain so the column sums vanish
    // and the matrix exponential conserves mass exactly.
    const double gamma_eff = gamma * opts.collision_scale;
    Eigen::MatrixXd prop(n_k, n_k);
    {
        Eigen::MatrixXd c(n_k, n_k);
        for (int i = 0; i < n_k; ++i)
            for (int j = 0; j < n_k; ++j)
                c(i, j) = kernel.value(f.k_center(i), f.k_center(j)) / n_k;
        Eigen::VectorXd lam = c.rowwise().sum();
        Eigen::MatrixXd a = c;
        a.diagonal() -= lam;
        // a is symmetric already (uniform weights, symmetric kernel)
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
        Eigen::VectorXd expv =
            (es.eigenvalues().array() * gamma_eff * dt).exp().matrix();
        prop = es.eigenvectors() * expv.asDiagonal() * es.eigenvectors().transpose();
    }

    std::vector<double> buf(static_cast<std::size_t>(n_y) * n_k);
    Eigen::VectorXd col(n_k), colp(n_k);
    for (long s = 0; s < n_steps; ++s) {
        // upwind advection per mode
        for (int ik = 0; ik < n_k; ++ik) {
            double nu = vel[ik] * dt / f.dy();
            if (nu >= 0.0) {
                for (int iy = 0; iy < n_y; ++iy) {
                    int im = (iy - 1 + n_y) % n_y;
                    buf[static_cast<std::size_t>(iy) * n_k + ik] =
                        f.at(iy, ik) - nu * (f.at(iy, ik) - f.at(im, ik));
                }
            } else {
                for (int iy = 0; iy < n_y; ++iy) {
                    int ip = (iy + 1) % n_y;
                    buf[static_cast<std::size_t>(iy) * n_k + ik] =
                        f.at(iy, ik) - nu * (f.at(ip, ik) - f.at(iy, ik));
                }
            }
        }
        f.w.swap(buf);
        // exact collision relaxation per cell
        if (gamma_eff > 0.0) {
            for (int iy = 0; iy < n_y; ++iy) {
                for (int ik = 0; ik < n_k; ++ik) col[ik] = f.at(iy, ik);
                colp.noalias() = prop * col;
                for (int ik = 0; ik < n_k; ++ik) f.at(iy, ik) = colp[ik];
            }
        }
    }
    f.time = t_final;
    return f;
}

}  // namespace chainlab
