#pragma once

#include <functional>
#include <vector>

#include "chainlab/potential.hpp"
#include "chainlab/rng.hpp"

namespace chainlab {

/// Periodic chain state. Unpinned chains store inter-particle stretches
/// r_x = q_{x+1} - q_x; pinned chains store displacements q_x.
enum class Representation { Stretch, Displacement };

struct ChainState {
    int n_sites = 0;
    Representation rep = Representation::Stretch;
    std::vector<double> p;     // momenta
    std::vector<double> conf;  // r (Stretch) or q (Displacement)
    double time = 0.0;

    static ChainState zeros(int n, Representation rep);
    void check(const PotentialSpec& spec) const;  // size/representation consistency
};

struct DynamicsParams {
    double gamma = 0.0;  // noise strength
    double dt = 1e-2;
};

struct ConservationReport {
    double total_energy = 0.0, total_momentum = 0.0, total_stretch = 0.0;
    double energy_drift = 0.0, momentum_drift = 0.0, stretch_drift = 0.0;
};

struct Observer {
    int stride = 1;  // invoke every `stride` steps (and at t0 and t_final)
    std::function<void(const ChainState&)> fn;
};

/// One velocity-Verlet step of the deterministic flow.
void hamiltonian_step(ChainState& state, const PotentialSpec& spec, double dt);

/// One full sweep of the conservative momentum-exchange noise: every site z,
/// in a fresh random order, rotates (p_{z-1}, p_z, p_{z+1}) about (1,1,1) by
/// an independent N(0, gamma dt) angle. Conserves sum p and sum p^2 to
/// rounding; positions untouched.
void noise_step(ChainState& state, double gamma, double dt, RngStream& rng);

/// Strang splitting: half noise sweep, Verlet step, half noise sweep.
void evolve(ChainState& state, const PotentialSpec& spec, const DynamicsParams& params,
            double t_final, RngStream& rng, const std::vector<Observer>& observers = {});

/// Per-site energies; sums exactly to the Hamiltonian.
std::vector<double> energy_field(const ChainState& state, const PotentialSpec& spec);
double total_energy(const ChainState& state, const PotentialSpec& spec);

ConservationReport conservation_report(const ChainState& now, const ChainState& initial,
                                       const PotentialSpec& spec);

/// Per-bond energy currents j_{x,x+1}: Hamiltonian part
/// -(p_x+p_{x+1}) V'(r_x)/2 and noise part -(gamma/6) (phi_{x+1} - phi_x).
struct BondCurrents {
    std::vector<double> antisymmetric;
    std::vector<double> stochastic;
};
BondCurrents energy_current(const ChainState& state, const PotentialSpec& spec, double gamma);

/// Per-bond momentum currents V'(r_x) + (gamma/6)(g_{x+1} - g_x),
/// g_x = 4 p_x + p_{x-1} + p_{x+1}.
std::vector<double> momentum_current(const ChainState& state, const PotentialSpec& spec,
                                     double gamma);

/// Space-summed Hamiltonian energy current (the Green-Kubo integrand source).
double total_antisymmetric_current(const ChainState& state, const PotentialSpec& spec);

/// Conservative step-size bound 0.1 / omega_max from the stiffest local
/// curvature of V and W over the current configuration.
double stability_bound(const PotentialSpec& spec, const ChainState& state);

}  // namespace chainlab
