#pragma once

#include <cmath>
#include <vector>

namespace chainlab {

/// Catmull-Rom cubic through 4 equally spaced samples; t in [0,1] between f1 and f2.
inline double cubic_kernel(double f0, double f1, double f2, double f3, double t) {
    double a = -0.5 * f0 + 1.5 * f1 - 1.5 * f2 + 0.5 * f3;
    double b = f0 - 2.5 * f1 + 2.0 * f2 - 0.5 * f3;
    double c = 0.5 * (f2 - f0);
    return ((a * t + b) * t + c) * t + f1;
}

/// Uniform-grid interpolation over a regular 2-D table, linear or cubic.
/// Edge cells clamp the cubic stencil.
class Grid2D {
public:
    Grid2D() = default;
    Grid2D(double x0, double x1, int nx, double y0, double y1, int ny)
        : x0_(x0), y0_(y0), nx_(nx), ny_(ny),
          dx_((x1 - x0) / (nx - 1)), dy_((y1 - y0) / (ny - 1)),
          data_(static_cast<std::size_t>(nx) * ny, 0.0) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double x(int i) const { return x0_ + i * dx_; }
    double y(int j) const { return y0_ + j * dy_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }
    double x_min() const { return x0_; }
    double x_max() const { return x0_ + (nx_ - 1) * dx_; }
    double y_min() const { return y0_; }
    double y_max() const { return y0_ + (ny_ - 1) * dy_; }

    double& at(int i, int j) { return data_[static_cast<std::size_t>(j) * nx_ + i]; }
    double at(int i, int j) const { return data_[static_cast<std::size_t>(j) * nx_ + i]; }

    bool contains(double x, double y) const {
        return x >= x_min() - 1e-12 && x <= x_max() + 1e-12 &&
               y >= y_min() - 1e-12 && y <= y_max() + 1e-12;
    }

    double linear(double x, double y) const {
        auto [i, tx] = locate(x, x0_, dx_, nx_);
        auto [j, ty] = locate(y, y0_, dy_, ny_);
        double f00 = at(i, j), f10 = at(i + 1, j), f01 = at(i, j + 1), f11 = at(i + 1, j + 1);
        return (1 - tx) * (1 - ty) * f00 + tx * (1 - ty) * f10 +
               (1 - tx) * ty * f01 + tx * ty * f11;
    }

    double cubic(double x, double y) const {
        auto [i, tx] = locate(x, x0_, dx_, nx_);
        auto [j, ty] = locate(y, y0_, dy_, ny_);
        double col[4];
        for (int m = -1; m <= 2; ++m) {
            int jj = clampi(j + m, ny_);
            col[m + 1] = cubic_kernel(at(clampi(i - 1, nx_), jj), at(i, jj),
                                      at(clampi(i + 1, nx_), jj), at(clampi(i + 2, nx_), jj), tx);
        }
        return cubic_kernel(col[0], col[1], col[2], col[3], ty);
    }

private:
    static int clampi(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

    static std::pair<int, double> locate(double v, double v0, double dv, int n) {
        double s = (v - v0) / dv;
        int i = static_cast<int>(std::floor(s));
        if (i < 0) i = 0;
        if (i > n - 2) i = n - 2;
        return {i, s - i};
    }

    double x0_ = 0, y0_ = 0;
    int nx_ = 0, ny_ = 0;
    double dx_ = 1, dy_ = 1;
    std::vector<double> data_;
};

}  // namespace chainlab
