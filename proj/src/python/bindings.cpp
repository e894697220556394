#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "chainlab/chain.hpp"
#include "chainlab/config.hpp"
#include "chainlab/errors.hpp"
#include "chainlab/euler.hpp"
#include "chainlab/fracheat.hpp"
#include "chainlab/kinetics.hpp"
#include "chainlab/observables.hpp"
#include "chainlab/runner.hpp"
#include "chainlab/sampling.hpp"
#include "chainlab/thermo.hpp"
#include "chainlab/transport.hpp"
#include "chainlab/wigner.hpp"

namespace py = pybind11;
using namespace chainlab;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(v.size());
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

std::vector<double> from_array(const py::array_t<double>& a) {
    auto r = a.unchecked<1>();
    std::vector<double> out(r.shape(0));
    for (py::ssize_t i = 0; i < r.shape(0); ++i) out[i] = r(i);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "oscillator-chain energy transport laboratory (C++ core)";
    m.attr("__version__") = version;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_ValueError);

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("master_seed"),
             py::arg("stream_id") = 0)
        .def("uniform", &RngStream::uniform)
        .def("normal", &RngStream::normal)
        .def("exponential", &RngStream::exponential)
        .def_property_readonly("stream_id", &RngStream::stream_id);

    // ---- potentials & thermodynamics
    py::enum_<InteractionKind>(m, "InteractionKind")
        .value("harmonic", InteractionKind::Harmonic)
        .value("fpu", InteractionKind::Fpu)
        .value("polynomial", InteractionKind::Polynomial);
    py::enum_<PinningKind>(m, "PinningKind")
        .value("none", PinningKind::None)
        .value("quadratic", PinningKind::Quadratic)
        .value("quartic", PinningKind::Quartic);

    py::class_<PotentialSpec>(m, "PotentialSpec")
        .def(py::init<>())
        .def_readwrite("interaction", &PotentialSpec::interaction)
        .def_readwrite("a", &PotentialSpec::a)
        .def_readwrite("b", &PotentialSpec::b)
        .def_readwrite("c", &PotentialSpec::c)
        .def_readwrite("poly", &PotentialSpec::poly)
        .def_readwrite("pinning", &PotentialSpec::pinning)
        .def_readwrite("nu2", &PotentialSpec::nu2)
        .def_readwrite("w4", &PotentialSpec::w4)
        .def_static("harmonic", &PotentialSpec::harmonic, py::arg("a") = 1.0)
        .def_static("fpu", &PotentialSpec::fpu, py::arg("a"), py::arg("b"), py::arg("c"))
        .def("with_quadratic_pinning", &PotentialSpec::with_quadratic_pinning, py::arg("nu2"))
        .def("pinned", &PotentialSpec::pinned)
        .def("validate", &PotentialSpec::validate)
        .def("v", &PotentialSpec::v)
        .def("dv", &PotentialSpec::dv)
        .def("d2v", &PotentialSpec::d2v)
        .def("describe", &PotentialSpec::describe);

    m.def("log_partition", &log_partition, py::arg("spec"), py::arg("lambda_"), py::arg("beta"));
    m.def("ground_state_energy", &ground_state_energy);

    py::class_<ThermoPoint>(m, "ThermoPoint")
        .def_readonly("lambda_", &ThermoPoint::lambda)
        .def_readonly("beta", &ThermoPoint::beta)
        .def_readonly("rbar", &ThermoPoint::rbar)
        .def_readonly("ubar", &ThermoPoint::ubar)
        .def_readonly("pressure", &ThermoPoint::pressure)
        .def_readonly("entropy", &ThermoPoint::entropy)
        .def_readonly("log_z", &ThermoPoint::log_z);
    m.def("solve_thermo", &solve_thermo, py::arg("spec"), py::arg("r"), py::arg("u"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<ThermoTableSpec>(m, "ThermoTableSpec")
        .def(py::init<>())
        .def_readwrite("r_min", &ThermoTableSpec::r_min)
        .def_readwrite("r_max", &ThermoTableSpec::r_max)
        .def_readwrite("u_margin_lo", &ThermoTableSpec::u_margin_lo)
        .def_readwrite("u_max", &ThermoTableSpec::u_max)
        .def_readwrite("nr", &ThermoTableSpec::nr)
        .def_readwrite("nu", &ThermoTableSpec::nu)
        .def_readwrite("cubic", &ThermoTableSpec::cubic);
    py::class_<ThermoTable>(m, "ThermoTable")
        .def(py::init<const PotentialSpec&, const ThermoTableSpec&>(), py::arg("spec"),
             py::arg("table_spec"), py::call_guard<py::gil_scoped_release>())
        .def("pressure", &ThermoTable::pressure)
        .def("entropy", &ThermoTable::entropy)
        .def("char_speed", &ThermoTable::char_speed)
        .def("in_domain", &ThermoTable::in_domain)
        .def("write_csv", &ThermoTable::write_csv);

    // ---- chain state & dynamics
    py::enum_<Representation>(m, "Representation")
        .value("stretch", Representation::Stretch)
        .value("displacement", Representation::Displacement);

    py::class_<ChainState>(m, "ChainState")
        .def(py::init<>())
        .def_static("zeros", &ChainState::zeros, py::arg("n"), py::arg("rep"))
        .def_readwrite("n_sites", &ChainState::n_sites)
        .def_readwrite("rep", &ChainState::rep)
        .def_readwrite("time", &ChainState::time)
        .def_property(
            "p", [](const ChainState& s) { return to_array(s.p); },
            [](ChainState& s, const py::array_t<double>& a) { s.p = from_array(a); })
        .def_property(
            "conf", [](const ChainState& s) { return to_array(s.conf); },
            [](ChainState& s, const py::array_t<double>& a) { s.conf = from_array(a); });

    m.def("sample_equilibrium", &sample_equilibrium, py::arg("spec"), py::arg("lambda_"),
          py::arg("pi"), py::arg("beta"), py::arg("n_sites"), py::arg("rng"));
    m.def("sample_gibbs_mcmc", &sample_gibbs_mcmc, py::arg("spec"), py::arg("beta"),
          py::arg("n_sites"), py::arg("sweeps"), py::arg("rng"),
          py::call_guard<py::gil_scoped_release>());

    m.def("hamiltonian_step", &hamiltonian_step);
    m.def("noise_step", &noise_step);
    m.def(
        "evolve",
        [](ChainState& s, const PotentialSpec& spec, double gamma, double dt, double t_final,
           RngStream& rng) {
            py::gil_scoped_release release;
            evolve(s, spec, {gamma, dt}, t_final, rng);
        },
        py::arg("state"), py::arg("spec"), py::arg("gamma"), py::arg("dt"), py::arg("t_final"),
        py::arg("rng"));
    m.def("energy_field",
          [](const ChainState& s, const PotentialSpec& spec) { return to_array(energy_field(s, spec)); });
    m.def("total_energy", &total_energy);
    m.def("energy_current", [](const ChainState& s, const PotentialSpec& spec, double gamma) {
        auto bc = energy_current(s, spec, gamma);
        return py::make_tuple(to_array(bc.antisymmetric), to_array(bc.stochastic));
    });
    m.def("momentum_current", [](const ChainState& s, const PotentialSpec& spec, double gamma) {
        return to_array(momentum_current(s, spec, gamma));
    });
    m.def("stability_bound", &stability_bound);
    m.def("empirical_energy_profile",
          [](const ChainState& s, const PotentialSpec& spec, double eps,
             const py::array_t<double>& g) {
              return empirical_energy_profile(s, spec, eps, from_array(g));
          });

    // ---- correlations & conductivity
    py::class_<AutocorrOptions>(m, "AutocorrOptions")
        .def(py::init<>())
        .def_readwrite("t_max", &AutocorrOptions::t_max)
        .def_readwrite("run_length", &AutocorrOptions::run_length)
        .def_readwrite("n_trajectories", &AutocorrOptions::n_trajectories)
        .def_readwrite("lag_stride", &AutocorrOptions::lag_stride)
        .def_readwrite("gibbs_burn_in", &AutocorrOptions::gibbs_burn_in)
        .def_readwrite("workers", &AutocorrOptions::workers);
    py::class_<CorrelationSeries>(m, "CorrelationSeries")
        .def_property_readonly("lags", [](const CorrelationSeries& s) { return to_array(s.lags); })
        .def_property_readonly("values",
                               [](const CorrelationSeries& s) { return to_array(s.values); })
        .def_property_readonly("stderrs",
                               [](const CorrelationSeries& s) { return to_array(s.stderrs); })
        .def_property_readonly("warning",
                               [](const CorrelationSeries& s) { return s.meta.warning; })
        .def("write_csv", &CorrelationSeries::write_csv);
    m.def(
        "current_autocorrelation",
        [](const PotentialSpec& spec, double gamma, double dt, double temperature, int n_sites,
           const AutocorrOptions& opts, std::uint64_t seed) {
            py::gil_scoped_release release;
            return current_autocorrelation(spec, {gamma, dt}, temperature, n_sites, opts, seed);
        },
        py::arg("spec"), py::arg("gamma"), py::arg("dt"), py::arg("temperature"),
        py::arg("n_sites"), py::arg("options"), py::arg("seed"));

    py::class_<ChiMode>(m, "ChiMode")
        .def_static("temperature_squared", &ChiMode::temperature_squared)
        .def_static("custom", &ChiMode::custom, py::arg("value"));
    py::class_<GreenKuboEstimate>(m, "GreenKuboEstimate")
        .def_property_readonly("taus", [](const GreenKuboEstimate& g) { return to_array(g.taus); })
        .def_property_readonly(
            "integral_partial",
            [](const GreenKuboEstimate& g) { return to_array(g.integral_partial); })
        .def_property_readonly("integral_err",
                               [](const GreenKuboEstimate& g) { return to_array(g.integral_err); })
        .def_readonly("kappa", &GreenKuboEstimate::kappa)
        .def_readonly("chi", &GreenKuboEstimate::chi)
        .def_readonly("stochastic_floor", &GreenKuboEstimate::stochastic_floor)
        .def_readonly("divergence_flag", &GreenKuboEstimate::divergence_flag)
        .def("write_csv", &GreenKuboEstimate::write_csv);
    m.def("green_kubo", &green_kubo, py::arg("series"), py::arg("gamma"), py::arg("temperature"),
          py::arg("chi_mode"));
    m.def("energy_susceptibility", &energy_susceptibility, py::arg("spec"), py::arg("lambda_"),
          py::arg("beta"), py::arg("n_sites"), py::arg("n_samples"), py::arg("rng"),
          py::call_guard<py::gil_scoped_release>());

    // ---- wigner
    py::class_<WignerOptions>(m, "WignerOptions")
        .def(py::init<>())
        .def_readwrite("n_y", &WignerOptions::n_y)
        .def_readwrite("n_k", &WignerOptions::n_k)
        .def_readwrite("window_sites", &WignerOptions::window_sites);
    py::class_<WignerField>(m, "WignerField")
        .def_readonly("n_y", &WignerField::n_y)
        .def_readonly("n_k", &WignerField::n_k)
        .def_readonly("epsilon", &WignerField::epsilon)
        .def_property_readonly("values",
                               [](const WignerField& f) {
                                   py::array_t<double> out({f.n_y, f.n_k});
                                   std::copy(f.values.begin(), f.values.end(),
                                             out.mutable_data());
                                   return out;
                               })
        .def("integral", &WignerField::integral)
        .def("write_csv", &WignerField::write_csv);
    m.def("wigner_transform", &wigner_transform, py::arg("state"), py::arg("spec"),
          py::arg("epsilon"), py::arg("options") = WignerOptions{},
          py::call_guard<py::gil_scoped_release>());

    // ---- phonon kinetics
    py::class_<DispersionSpec>(m, "DispersionSpec")
        .def_static("acoustic", &DispersionSpec::acoustic, py::arg("c") = 1.0)
        .def_static("gapped", &DispersionSpec::gapped, py::arg("c"), py::arg("nu"))
        .def_static("from_potential", &DispersionSpec::from_potential)
        .def("omega", &DispersionSpec::omega)
        .def("omega_prime", &DispersionSpec::omega_prime)
        .def("velocity", &DispersionSpec::velocity);
    py::class_<KernelSpec>(m, "KernelSpec")
        .def_static("product", &KernelSpec::product, py::arg("c_k") = 1.0)
        .def_static("tabulated", &KernelSpec::tabulated, py::arg("n"), py::arg("values"))
        .def("value", &KernelSpec::value);
    m.def("momentum_exchange_kernel", &momentum_exchange_kernel, py::arg("n") = 1024);
    m.def("total_rate", &total_rate, py::arg("kernel"), py::arg("gamma"), py::arg("k"));

    py::class_<PhononTrajectory>(m, "PhononTrajectory")
        .def_property_readonly(
            "jump_times", [](const PhononTrajectory& t) { return to_array(t.jump_times); })
        .def_property_readonly("modes",
                               [](const PhononTrajectory& t) { return to_array(t.modes); })
        .def_readonly("y_final", &PhononTrajectory::y_final)
        .def_readonly("k_final", &PhononTrajectory::k_final)
        .def("position_at", &PhononTrajectory::position_at);
    m.def("sample_trajectory", &sample_trajectory, py::arg("dispersion"), py::arg("kernel"),
          py::arg("gamma"), py::arg("k0"), py::arg("t_final"), py::arg("rng"));

    py::class_<EnsembleOptions>(m, "EnsembleOptions")
        .def(py::init<>())
        .def_readwrite("n_trajectories", &EnsembleOptions::n_trajectories)
        .def_readwrite("workers", &EnsembleOptions::workers)
        .def_readwrite("master_seed", &EnsembleOptions::master_seed);
    py::class_<EnsemblePositions>(m, "EnsemblePositions")
        .def(py::init<>())
        .def_readwrite("horizons", &EnsemblePositions::horizons)
        .def_readwrite("y", &EnsemblePositions::y)
        .def_readwrite("jump_counts", &EnsemblePositions::jump_counts);
    m.def("sample_ensemble", &sample_ensemble, py::arg("dispersion"), py::arg("kernel"),
          py::arg("gamma"), py::arg("horizons"), py::arg("options"),
          py::call_guard<py::gil_scoped_release>());

    py::enum_<ExponentMethod>(m, "ExponentMethod")
        .value("char_fn_fit", ExponentMethod::CharFnFit)
        .value("quantile_ratio", ExponentMethod::QuantileRatio);
    py::class_<ExponentEstimate>(m, "ExponentEstimate")
        .def_readonly("alpha", &ExponentEstimate::alpha)
        .def_readonly("ci_lo", &ExponentEstimate::ci_lo)
        .def_readonly("ci_hi", &ExponentEstimate::ci_hi)
        .def_readonly("excess_kurtosis", &ExponentEstimate::excess_kurtosis)
        .def("write_report", &ExponentEstimate::write_report);
    m.def("estimate_scaling_exponent", &estimate_scaling_exponent, py::arg("ensemble"),
          py::arg("method"), py::arg("rng"), py::call_guard<py::gil_scoped_release>());

    // ---- transport
    py::class_<TransportField>(m, "TransportField")
        .def_static("zeros", &TransportField::zeros, py::arg("n_y"), py::arg("n_k"),
                    py::arg("length"))
        .def_readonly("n_y", &TransportField::n_y)
        .def_readonly("n_k", &TransportField::n_k)
        .def_readonly("length", &TransportField::length)
        .def_readonly("time", &TransportField::time)
        .def_property(
            "w",
            [](const TransportField& f) {
                py::array_t<double> out({f.n_y, f.n_k});
                std::copy(f.w.begin(), f.w.end(), out.mutable_data());
                return out;
            },
            [](TransportField& f, const py::array_t<double>& a) {
                auto r = a.unchecked<2>();
                for (int i = 0; i < f.n_y; ++i)
                    for (int j = 0; j < f.n_k; ++j) f.at(i, j) = r(i, j);
            })
        .def("mass", &TransportField::mass)
        .def("k_integrated",
             [](const TransportField& f) { return to_array(f.k_integrated()); })
        .def("write_csv", &TransportField::write_csv);
    py::class_<TransportOptions>(m, "TransportOptions")
        .def(py::init<>())
        .def_readwrite("cfl", &TransportOptions::cfl)
        .def_readwrite("speed_scale", &TransportOptions::speed_scale)
        .def_readwrite("collision_scale", &TransportOptions::collision_scale);
    m.def("solve_transport", &solve_transport, py::arg("initial"), py::arg("dispersion"),
          py::arg("kernel"), py::arg("gamma"), py::arg("t_final"),
          py::arg("options") = TransportOptions{}, py::call_guard<py::gil_scoped_release>());

    // ---- fractional heat
    py::class_<FracHeatProblem>(m, "FracHeatProblem")
        .def(py::init<>())
        .def_readwrite("alpha", &FracHeatProblem::alpha)
        .def_readwrite("c", &FracHeatProblem::c)
        .def_readwrite("length", &FracHeatProblem::length)
        .def_property(
            "u0", [](const FracHeatProblem& p) { return to_array(p.u0); },
            [](FracHeatProblem& p, const py::array_t<double>& a) { p.u0 = from_array(a); });
    m.def("frac_heat_solve",
          [](const FracHeatProblem& p, double t) { return to_array(solve(p, t)); });
    m.def(
        "sample_stable",
        [](double alpha, double scale, int n, RngStream& rng) {
            return to_array(sample_stable(alpha, scale, n, rng));
        },
        py::arg("alpha"), py::arg("scale"), py::arg("n"), py::arg("rng"));

    py::class_<ScalingLadder>(m, "ScalingLadder")
        .def_readonly("epsilons", &ScalingLadder::epsilons)
        .def_readonly("profiles", &ScalingLadder::profiles)
        .def_readonly("t", &ScalingLadder::t)
        .def_readonly("alpha", &ScalingLadder::alpha);
    m.def(
        "run_scaling_ladder",
        [](const DispersionSpec& d, const KernelSpec& k, double gamma,
           const py::array_t<double>& u0, double length, double t, double alpha,
           const std::vector<double>& eps, int n_k, double cfl) {
            auto u = from_array(u0);
            py::gil_scoped_release release;
            return run_scaling_ladder(d, k, gamma, u, length, t, alpha, eps, n_k, cfl);
        },
        py::arg("dispersion"), py::arg("kernel"), py::arg("gamma"), py::arg("u0"),
        py::arg("length"), py::arg("t"), py::arg("alpha"), py::arg("epsilons"), py::arg("n_k"),
        py::arg("cfl") = 0.6);
    py::class_<LadderReport>(m, "LadderReport")
        .def_readonly("epsilons", &LadderReport::epsilons)
        .def_readonly("l2_distances", &LadderReport::l2_distances)
        .def_readonly("fitted_c", &LadderReport::fitted_c)
        .def_readonly("fit_residual", &LadderReport::fit_residual)
        .def_readonly("monotone_decreasing", &LadderReport::monotone_decreasing)
        .def("write_report", &LadderReport::write_report);
    m.def("kinetic_to_fractional_check", &kinetic_to_fractional_check, py::arg("ladder"),
          py::arg("problem"), py::arg("fit_c") = true,
          py::call_guard<py::gil_scoped_release>());

    // ---- euler
    py::class_<HydroField>(m, "HydroField")
        .def_static("uniform", &HydroField::uniform, py::arg("n"), py::arg("length"),
                    py::arg("r0"), py::arg("p0"), py::arg("e0"))
        .def_readonly("n_cells", &HydroField::n_cells)
        .def_readonly("length", &HydroField::length)
        .def_readonly("time", &HydroField::time)
        .def_property(
            "r", [](const HydroField& f) { return to_array(f.r); },
            [](HydroField& f, const py::array_t<double>& a) { f.r = from_array(a); })
        .def_property(
            "p", [](const HydroField& f) { return to_array(f.p); },
            [](HydroField& f, const py::array_t<double>& a) { f.p = from_array(a); })
        .def_property(
            "e", [](const HydroField& f) { return to_array(f.e); },
            [](HydroField& f, const py::array_t<double>& a) { f.e = from_array(a); })
        .def("y_center", &HydroField::y_center)
        .def("write_csv", [](const HydroField& f, const std::filesystem::path& p) {
            f.write_csv(p);
        });
    m.def("euler_step", &euler_step, py::arg("field"), py::arg("table"), py::arg("cfl"),
          py::arg("dt_cap") = 1e300);
    m.def(
        "euler_evolve",
        [](HydroField& f, const ThermoTable& table, double cfl, double t_final) {
            py::gil_scoped_release release;
            euler_evolve(f, table, cfl, t_final);
        },
        py::arg("field"), py::arg("table"), py::arg("cfl"), py::arg("t_final"));
    m.def("entropy_diagnostic", [](const HydroField& f, const ThermoTable& table) {
        auto d = entropy_diagnostic(f, table);
        return py::make_tuple(to_array(d.per_cell), d.total);
    });

    // ---- config & runner
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("out_dir", &ExperimentConfig::out_dir)
        .def_readwrite("workers", &ExperimentConfig::workers)
        .def("__eq__", [](const ExperimentConfig& a, const ExperimentConfig& b) { return a == b; });
    m.def("parse_config", &parse_config);
    m.def("emit_config", &emit_config);
    py::class_<RunManifest>(m, "RunManifest")
        .def_readonly("kind", &RunManifest::kind)
        .def_readonly("status", &RunManifest::status)
        .def_readonly("exit_code", &RunManifest::exit_code)
        .def_readonly("error", &RunManifest::error)
        .def_readonly("outputs", &RunManifest::outputs)
        .def_readonly("warnings", &RunManifest::warnings);
    m.def("run_experiment", &run_experiment, py::call_guard<py::gil_scoped_release>());
}
