#pragma once

#include <string>
#include <vector>

namespace chainlab {

enum class InteractionKind { Harmonic, Fpu, Polynomial };
enum class PinningKind { None, Quadratic, Quartic };

/// Interaction potential V(r) between neighbours plus optional on-site
/// pinning W(q). Coefficients are dimensionless, unit masses throughout.
struct PotentialSpec {
    InteractionKind interaction = InteractionKind::Harmonic;
    double a = 1.0;  // quadratic coefficient: V = a r^2/2 (+ b r^3/3 + c r^4/4 for fpu)
    double b = 0.0;
    double c = 0.0;
    std::vector<double> poly;  // polynomial mode: V(r) = sum_i poly[i] r^i

    PinningKind pinning = PinningKind::None;
    double nu2 = 0.0;  // W(q) = nu2 q^2/2 (+ w4 q^4/4 for quartic pinning)
    double w4 = 0.0;

    bool pinned() const { return pinning != PinningKind::None; }
    bool operator==(const PotentialSpec&) const = default;

    /// Throws ConfigError unless V is bounded below with superlinear growth
    /// and W is a valid pinning choice.
    void validate() const;

    double v(double r) const;
    double dv(double r) const;
    double d2v(double r) const;

    double w(double q) const;
    double dw(double q) const;
    double d2w(double q) const;

    std::string describe() const;

    static PotentialSpec harmonic(double a = 1.0) {
        PotentialSpec s;
        s.interaction = InteractionKind::Harmonic;
        s.a = a;
        return s;
    }
    static PotentialSpec fpu(double a, double b, double c) {
        PotentialSpec s;
        s.interaction = InteractionKind::Fpu;
        s.a = a; s.b = b; s.c = c;
        return s;
    }
    PotentialSpec with_quadratic_pinning(double nu2_) const {
        PotentialSpec s = *this;
        s.pinning = PinningKind::Quadratic;
        s.nu2 = nu2_;
        return s;
    }
};

/// Ground-state potential energy at mean stretch r: the convex envelope of V
/// evaluated at r (a non-convex V can phase-separate between two stretches).
/// Admissible internal energies lie strictly above this.
double ground_state_energy(const PotentialSpec& spec, double r);

}  // namespace chainlab
