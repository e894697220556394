#include "chainlab/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>

#include "chainlab/chain.hpp"
#include "chainlab/csv.hpp"
#include "chainlab/errors.hpp"
#include "chainlab/euler.hpp"
#include "chainlab/fracheat.hpp"
#include "chainlab/kinetics.hpp"
#include "chainlab/observables.hpp"
#include "chainlab/sampling.hpp"
#include "chainlab/thermo.hpp"
#include "chainlab/transport.hpp"

namespace chainlab {

namespace {

void fail_on_nan(const std::vector<double>& v, const std::string& what) {
    for (double x : v)
        if (!std::isfinite(x)) throw NumericalError("non-finite value in " + what);
}

struct OutputTracker {
    std::filesystem::path dir;
    RunManifest* manifest;

    void record(const CsvWriter& w) {
        manifest->outputs.emplace_back(w.path().filename().string(), w.checksum());
    }
    void record_file(const std::string& name) {
        std::ifstream in(dir / name, std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)), {});
        manifest->outputs.emplace_back(name, crc32(bytes.data(), bytes.size()));
    }
};

void write_state(OutputTracker& t, const std::string& name, const ChainState& s) {
    CsvWriter w(t.dir / name);
    w.comment("chain snapshot; time=" + format_double(s.time));
    w.header(s.rep == Representation::Stretch ? "x,p,r" : "x,p,q");
    for (int x = 0; x < s.n_sites; ++x)
        w.row({static_cast<double>(x), s.p[x], s.conf[x]});
    w.close();
    t.record(w);
}

KernelSpec kernel_from(const PhononSection& ph) {
    return ph.kernel == "product" ? KernelSpec::product(ph.c_k)
                                  : momentum_exchange_kernel(ph.kernel_n);
}

DispersionSpec dispersion_from(const PhononSection& ph) {
    return ph.dispersion == "acoustic" ? DispersionSpec::acoustic(ph.c)
                                       : DispersionSpec::gapped(ph.c, ph.nu);
}

void run_chain(const ExperimentConfig& cfg, OutputTracker& t) {
    RngStream rng(cfg.seed, 0);
    ChainState state =
        cfg.potential.pinned()
            ? sample_gibbs_mcmc(cfg.potential, cfg.chain.beta, cfg.chain.n_sites,
                                cfg.chain.gibbs_sweeps, rng)
            : sample_equilibrium(cfg.potential, cfg.chain.lambda, cfg.chain.pi, cfg.chain.beta,
                                 cfg.chain.n_sites, rng);
    double bound = stability_bound(cfg.potential, state);
    if (cfg.dynamics.dt > bound)
        throw ConfigError("dynamics.dt exceeds the stability bound " + format_double(bound));

    ChainState initial = state;
    write_state(t, "state_initial.csv", state);

    CsvWriter series(t.dir / "conservation.csv");
    series.comment("conserved-quantity drifts along the run");
    series.header("time,energy_drift,momentum_drift,stretch_drift");
    int stride = cfg.run.snapshot_stride > 0 ? cfg.run.snapshot_stride : 1000000000;
    std::vector<Observer> obs{{stride, [&](const ChainState& s) {
                                   auto rep = conservation_report(s, initial, cfg.potential);
                                   series.row({s.time, rep.energy_drift, rep.momentum_drift,
                                               rep.stretch_drift});
                               }}};
    evolve(state, cfg.potential, {cfg.dynamics.gamma, cfg.dynamics.dt},
           state.time + cfg.run.t_final, rng, obs);
    series.close();
    t.record(series);

    fail_on_nan(state.p, "final momenta");
    fail_on_nan(state.conf, "final configuration");
    write_state(t, "state_final.csv", state);
}

void run_green_kubo(const ExperimentConfig& cfg, OutputTracker& t) {
    AutocorrOptions opts;
    opts.t_max = cfg.correlation.t_max;
    opts.run_length = cfg.correlation.run_length;
    opts.n_trajectories = cfg.correlation.n_trajectories;
    opts.lag_stride = cfg.correlation.lag_stride;
    opts.gibbs_burn_in = cfg.chain.gibbs_sweeps;
    opts.workers = cfg.workers;
    double temperature = 1.0 / cfg.chain.beta;
    CorrelationSeries series = current_autocorrelation(
        cfg.potential, {cfg.dynamics.gamma, cfg.dynamics.dt}, temperature, cfg.chain.n_sites,
        opts, cfg.seed);
    fail_on_nan(series.values, "correlation series");
    series.write_csv(t.dir / "correlation.csv");

    ChiMode chi = ChiMode::temperature_squared();
    if (cfg.correlation.chi_mode == "susceptibility") {
        RngStream rng(cfg.seed, 7);
        chi = ChiMode::custom(energy_susceptibility(cfg.potential, 0.0, cfg.chain.beta,
                                                    cfg.chain.n_sites,
                                                    cfg.correlation.chi_samples, rng));
    }
    GreenKuboEstimate gk = green_kubo(series, cfg.dynamics.gamma, temperature, chi);
    fail_on_nan(gk.integral_partial, "green-kubo integral");
    gk.write_csv(t.dir / "green_kubo.csv");
    if (series.meta.warning) t.manifest->warnings.push_back(series.meta.warning_text);

    t.record_file("correlation.csv");
    t.record_file("green_kubo.csv");
}

void run_phonon_mc(const ExperimentConfig& cfg, OutputTracker& t) {
    DispersionSpec disp = dispersion_from(cfg.phonon);
    KernelSpec kernel = kernel_from(cfg.phonon);
    EnsembleOptions opts;
    opts.n_trajectories = cfg.phonon.n_trajectories;
    opts.workers = cfg.workers;
    opts.master_seed = cfg.seed;
    EnsemblePositions ens =
        sample_ensemble(disp, kernel, cfg.phonon.gamma, cfg.phonon.horizons, opts);

    RngStream boot_rng(cfg.seed, 99991);
    ExponentEstimate est = estimate_scaling_exponent(
        ens,
        cfg.phonon.method == "char_fn" ? ExponentMethod::CharFnFit
                                       : ExponentMethod::QuantileRatio,
        boot_rng);
    if (!std::isfinite(est.alpha)) throw NumericalError("non-finite exponent estimate");
    est.write_report(t.dir / "exponent.txt");

    // small trajectory sample for inspection
    CsvWriter w(t.dir / "trajectories_sample.csv");
    w.comment("first trajectories of the ensemble; per-jump rows");
    w.header("trajectory,t_jump,k,y");
    RngStream rng(cfg.seed, 424242);
    for (int i = 0; i < std::min(20, cfg.phonon.n_trajectories); ++i) {
        double k0 = rng.uniform();
        auto tr = sample_trajectory(disp, kernel, cfg.phonon.gamma, k0,
                                    cfg.phonon.horizons.front(), rng);
        for (std::size_t j = 0; j < tr.jump_times.size(); ++j)
            w.row({static_cast<double>(i), tr.jump_times[j], tr.modes[j], tr.y_at_jump[j]});
    }
    w.close();
    t.record(w);
    t.record_file("exponent.txt");
    t.manifest->warnings.push_back("alpha = " + format_double(est.alpha));
}

void run_transport(const ExperimentConfig& cfg, OutputTracker& t) {
    DispersionSpec disp = dispersion_from(cfg.phonon);
    KernelSpec kernel = kernel_from(cfg.phonon);
    const auto& tc = cfg.transport;
    TransportField f = TransportField::zeros(tc.n_y, tc.n_k, tc.length);
    for (int iy = 0; iy < tc.n_y; ++iy) {
        double d = f.y_center(iy) - tc.bump_center;
        double val = tc.background +
                     tc.bump_height * std::exp(-0.5 * d * d / (tc.bump_width * tc.bump_width));
        for (int ik = 0; ik < tc.n_k; ++ik) f.at(iy, ik) = val;
    }
    TransportOptions opts;
    opts.cfl = tc.cfl;
    TransportField out = solve_transport(f, disp, kernel, cfg.phonon.gamma, tc.t_final, opts);
    fail_on_nan(out.w, "transport field");
    out.write_csv(t.dir / "field_final.csv");
    t.record_file("field_final.csv");
}

void run_frac_heat(const ExperimentConfig& cfg, OutputTracker& t) {
    const auto& fh = cfg.frac_heat;
    FracHeatProblem prob;
    prob.alpha = fh.alpha;
    prob.c = fh.c;
    prob.length = fh.length;
    prob.u0.resize(fh.n);
    for (int i = 0; i < fh.n; ++i) {
        double y = (i + 0.5) * fh.length / fh.n - fh.bump_center;
        prob.u0[i] =
            fh.background + fh.bump_height * std::exp(-0.5 * y * y / (fh.bump_width * fh.bump_width));
    }
    auto out = solve(prob, fh.t_final);
    fail_on_nan(out, "fractional-heat profile");
    CsvWriter w(t.dir / "profile_final.csv");
    w.comment("fractional heat profile; alpha=" + format_double(fh.alpha) +
              " c=" + format_double(fh.c) + " t=" + format_double(fh.t_final));
    w.header("y,value");
    for (int i = 0; i < fh.n; ++i) w.row({(i + 0.5) * fh.length / fh.n, out[i]});
    w.close();
    t.record(w);
}

void run_euler(const ExperimentConfig& cfg, OutputTracker& t) {
    ThermoTableSpec ts;
    ts.r_min = cfg.thermo.r_min;
    ts.r_max = cfg.thermo.r_max;
    ts.u_max = cfg.thermo.u_max;
    ts.u_margin_lo = cfg.thermo.u_margin;
    ts.nr = cfg.thermo.nr;
    ts.nu = cfg.thermo.nu;
    ts.cubic = cfg.thermo.interp == "cubic";
    ThermoTable table(cfg.potential, ts);

    const auto& eu = cfg.euler;
    HydroField f = HydroField::uniform(eu.n_cells, eu.length, eu.base_r, 0.0, eu.base_u);
    for (int i = 0; i < eu.n_cells; ++i) {
        double phase = 2.0 * std::numbers::pi * f.y_center(i) / eu.length;
        f.r[i] = eu.base_r + eu.amp_r * std::sin(phase);
        f.p[i] = eu.amp_p * std::sin(phase);
        f.e[i] = eu.base_u + 0.5 * f.p[i] * f.p[i];
    }

    CsvWriter series(t.dir / "entropy_series.csv");
    series.comment("cell-summed entropy along the run");
    series.header("time,total_entropy");
    auto d0 = entropy_diagnostic(f, table);
    series.row({f.time, d0.total});
    euler_evolve(f, table, eu.cfl, eu.t_final, [&](const HydroField& g) {
        series.row({g.time, entropy_diagnostic(g, table).total});
    });
    series.close();
    t.record(series);

    fail_on_nan(f.r, "euler stretch field");
    fail_on_nan(f.p, "euler momentum field");
    fail_on_nan(f.e, "euler energy field");
    f.write_csv(t.dir / "fields_final.csv", &table);
    t.record_file("fields_final.csv");
}

void run_thermo_table(const ExperimentConfig& cfg, OutputTracker& t) {
    ThermoTableSpec ts;
    ts.r_min = cfg.thermo.r_min;
    ts.r_max = cfg.thermo.r_max;
    ts.u_max = cfg.thermo.u_max;
    ts.u_margin_lo = cfg.thermo.u_margin;
    ts.nr = cfg.thermo.nr;
    ts.nu = cfg.thermo.nu;
    ts.cubic = cfg.thermo.interp == "cubic";
    ThermoTable table(cfg.potential, ts);
    table.write_csv(t.dir / "thermo_table.csv");
    t.record_file("thermo_table.csv");
}

}  // namespace

void RunManifest::write(const std::filesystem::path& path) const {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    out << "kind = " << kind << "\n";
    out << "version = " << version << "\n";
    out << "status = " << status << "\n";
    out << "exit_code = " << exit_code << "\n";
    if (!error.empty()) out << "error = " << error << "\n";
    out << "wall_seconds = " << format_double(wall_seconds) << "\n";
    for (const auto& [name, crc] : outputs) out << "output " << name << " crc32 " << crc << "\n";
    for (const auto& w : warnings) out << "note " << w << "\n";
    out << "config_begin\n" << config_echo << "config_end\n";
}

RunManifest run_experiment(const ExperimentConfig& config) {
    RunManifest manifest;
    manifest.kind = to_string(config.kind);
    manifest.config_echo = emit_config(config);
    auto t0 = std::chrono::steady_clock::now();

    std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    OutputTracker tracker{dir, &manifest};
    try {
        switch (config.kind) {
            case ExperimentKind::ChainRun: run_chain(config, tracker); break;
            case ExperimentKind::GreenKubo: run_green_kubo(config, tracker); break;
            case ExperimentKind::PhononMc: run_phonon_mc(config, tracker); break;
            case ExperimentKind::Transport: run_transport(config, tracker); break;
            case ExperimentKind::FracHeat: run_frac_heat(config, tracker); break;
            case ExperimentKind::Euler: run_euler(config, tracker); break;
            case ExperimentKind::ThermoTable: run_thermo_table(config, tracker); break;
        }
    } catch (const ConfigError& e) {
        manifest.status = "error";
        manifest.exit_code = 2;
        manifest.error = e.what();
    } catch (const std::exception& e) {
        manifest.status = "error";
        manifest.exit_code = 3;
        manifest.error = e.what();
    }
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    manifest.write(dir / "manifest.txt");
    return manifest;
}

}  // namespace chainlab
