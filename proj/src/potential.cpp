#include "chainlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chainlab/errors.hpp"

namespace chainlab {

void PotentialSpec::validate() const {
    switch (interaction) {
        case InteractionKind::Harmonic:
            if (a <= 0.0) throw ConfigError("harmonic interaction requires a > 0");
            break;
        case InteractionKind::Fpu:
            if (c < 0.0) throw ConfigError("fpu interaction requires quartic coefficient c >= 0");
            if (c == 0.0 && b != 0.0)
                throw ConfigError("fpu interaction with c = 0 and b != 0 is unbounded below");
            if (c == 0.0 && a <= 0.0)
                throw ConfigError("fpu interaction with c = 0 requires a > 0");
            break;
        case InteractionKind::Polynomial: {
            if (poly.size() < 3)
                throw ConfigError("polynomial interaction needs degree >= 2");
            std::size_t deg = poly.size() - 1;
            while (deg > 0 && poly[deg] == 0.0) --deg;
            if (deg < 2 || deg % 2 != 0 || poly[deg] <= 0.0)
                throw ConfigError(
                    "polynomial interaction must have even leading degree >= 2 with positive "
                    "leading coefficient");
            break;
        }
    }
    switch (pinning) {
        case PinningKind::None:
            break;
        case PinningKind::Quadratic:
            if (nu2 <= 0.0) throw ConfigError("quadratic pinning requires nu2 > 0");
            break;
        case PinningKind::Quartic:
            if (w4 < 0.0 || (w4 == 0.0 && nu2 <= 0.0))
                throw ConfigError("quartic pinning requires w4 >= 0 and nu2 > 0 when w4 = 0");
            break;
    }
}

double PotentialSpec::v(double r) const {
    switch (interaction) {
        case InteractionKind::Harmonic: return 0.5 * a * r * r;
        case InteractionKind::Fpu:
            return r * r * (0.5 * a + r * (b / 3.0 + 0.25 * c * r));
        case InteractionKind::Polynomial: {
            double s = 0.0;
            for (std::size_t i = poly.size(); i-- > 0;) s = s * r + poly[i];
            return s;
        }
    }
    return 0.0;
}

double PotentialSpec::dv(double r) const {
    switch (interaction) {
        case InteractionKind::Harmonic: return a * r;
        case InteractionKind::Fpu: return r * (a + r * (b + c * r));
        case InteractionKind::Polynomial: {
            double s = 0.0;
            for (std::size_t i = poly.size(); i-- > 1;) s = s * r + i * poly[i];
            return s;
        }
    }
    return 0.0;
}

double PotentialSpec::d2v(double r) const {
    switch (interaction) {
        case InteractionKind::Harmonic: return a;
        case InteractionKind::Fpu: return a + r * (2.0 * b + 3.0 * c * r);
        case InteractionKind::Polynomial: {
            double s = 0.0;
            for (std::size_t i = poly.size(); i-- > 2;) s = s * r + i * (i - 1) * poly[i];
            return s;
        }
    }
    return 0.0;
}

double PotentialSpec::w(double q) const {
    switch (pinning) {
        case PinningKind::None: return 0.0;
        case PinningKind::Quadratic: return 0.5 * nu2 * q * q;
        case PinningKind::Quartic: return 0.5 * nu2 * q * q + 0.25 * w4 * q * q * q * q;
    }
    return 0.0;
}

double PotentialSpec::dw(double q) const {
    switch (pinning) {
        case PinningKind::None: return 0.0;
        case PinningKind::Quadratic: return nu2 * q;
        case PinningKind::Quartic: return nu2 * q + w4 * q * q * q;
    }
    return 0.0;
}

double PotentialSpec::d2w(double q) const {
    switch (pinning) {
        case PinningKind::None: return 0.0;
        case PinningKind::Quadratic: return nu2;
        case PinningKind::Quartic: return nu2 + 3.0 * w4 * q * q;
    }
    return 0.0;
}

std::string PotentialSpec::describe() const {
    std::ostringstream os;
    switch (interaction) {
        case InteractionKind::Harmonic: os << "harmonic(a=" << a << ")"; break;
        case InteractionKind::Fpu: os << "fpu(a=" << a << ",b=" << b << ",c=" << c << ")"; break;
        case InteractionKind::Polynomial: {
            os << "polynomial(";
            for (std::size_t i = 0; i < poly.size(); ++i) os << (i ? "," : "") << poly[i];
            os << ")";
            break;
        }
    }
    switch (pinning) {
        case PinningKind::None: break;
        case PinningKind::Quadratic: os << "+pin(nu2=" << nu2 << ")"; break;
        case PinningKind::Quartic: os << "+pin(nu2=" << nu2 << ",w4=" << w4 << ")"; break;
    }
    return os.str();
}

double ground_state_energy(const PotentialSpec& spec, double r) {
    // convex envelope of V over a window comfortably containing r,
    // via the lower hull of sampled (r, V) points
    double span = std::max(8.0, 4.0 * std::abs(r));
    const int n = 4001;
    std::vector<std::pair<double, double>> pts(n);
    for (int i = 0; i < n; ++i) {
        double x = -span + 2.0 * span * i / (n - 1);
        pts[i] = {x, spec.v(x)};
    }
    std::vector<int> hull;
    for (int i = 0; i < n; ++i) {
        while (hull.size() >= 2) {
            auto [x1, y1] = pts[hull[hull.size() - 2]];
            auto [x2, y2] = pts[hull[hull.size() - 1]];
            auto [x3, y3] = pts[i];
            if ((y2 - y1) * (x3 - x2) <= (y3 - y2) * (x2 - x1)) break;
            hull.pop_back();
        }
        hull.push_back(i);
    }
    // interpolate the hull at r
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        double x1 = pts[hull[k]].first, x2 = pts[hull[k + 1]].first;
        if (r >= x1 && r <= x2) {
            double y1 = pts[hull[k]].second, y2 = pts[hull[k + 1]].second;
            double t = (x2 > x1) ? (r - x1) / (x2 - x1) : 0.0;
            return (1 - t) * y1 + t * y2;
        }
    }
    return spec.v(r);
}

}  // namespace chainlab
