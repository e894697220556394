#include "chainlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "chainlab/csv.hpp"
#include "chainlab/errors.hpp"

namespace chainlab {

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::ChainRun: return "chain-run";
        case ExperimentKind::GreenKubo: return "green-kubo";
        case ExperimentKind::PhononMc: return "phonon-mc";
        case ExperimentKind::Transport: return "transport";
        case ExperimentKind::FracHeat: return "frac-heat";
        case ExperimentKind::Euler: return "euler";
        case ExperimentKind::ThermoTable: return "thermo-table";
    }
    return "?";
}

std::vector<double> default_horizons(const std::string& dispersion_kind) {
    double alpha = dispersion_kind == "gapped" ? 2.0 : 1.5;
    std::vector<double> h;
    for (int p = 3; p <= 8; ++p) h.push_back(std::pow(std::exp2(p), alpha));
    return h;
}

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

struct RawConfig {
    // section -> key -> entry
    std::map<std::string, std::map<std::string, Entry>> sections;
    std::vector<std::string> errors;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

RawConfig tokenize(const std::string& text) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line, section;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                raw.errors.push_back("line " + std::to_string(ln) + ": unterminated section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            raw.sections[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            raw.errors.push_back("line " + std::to_string(ln) + ": expected key = value");
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (section.empty()) {
            raw.errors.push_back("line " + std::to_string(ln) + ": key '" + key +
                                 "' before any [section] header");
            continue;
        }
        auto [it, inserted] = raw.sections[section].emplace(key, Entry{val, ln, false});
        if (!inserted)
            raw.errors.push_back("line " + std::to_string(ln) + ": duplicate key '" + section +
                                 "." + key + "' (first on line " + std::to_string(it->second.line) +
                                 ")");
    }
    return raw;
}

class Reader {
public:
    Reader(RawConfig& raw) : raw_(raw) {}

    bool has(const std::string& sec, const std::string& key) {
        auto s = raw_.sections.find(sec);
        return s != raw_.sections.end() && s->second.count(key) > 0;
    }

    template <typename Fn>
    void with(const std::string& sec, const std::string& key, Fn&& fn) {
        auto s = raw_.sections.find(sec);
        if (s == raw_.sections.end()) return;
        auto e = s->second.find(key);
        if (e == s->second.end()) return;
        e->second.used = true;
        fn(e->second.value, e->second.line);
    }

    void get_double(const std::string& sec, const std::string& key, double& out) {
        with(sec, key, [&](const std::string& v, int ln) {
            try {
                std::size_t pos = 0;
                double d = std::stod(v, &pos);
                if (pos != v.size()) throw std::invalid_argument("trailing characters");
                out = d;
            } catch (const std::exception&) {
                error(ln, sec, key, "expected a real number, got '" + v + "'");
            }
        });
    }

    void get_int(const std::string& sec, const std::string& key, int& out) {
        with(sec, key, [&](const std::string& v, int ln) {
            try {
                std::size_t pos = 0;
                long d = std::stol(v, &pos);
                if (pos != v.size()) throw std::invalid_argument("trailing characters");
                out = static_cast<int>(d);
            } catch (const std::exception&) {
                error(ln, sec, key, "expected an integer, got '" + v + "'");
            }
        });
    }

    void get_u64(const std::string& sec, const std::string& key, std::uint64_t& out) {
        with(sec, key, [&](const std::string& v, int ln) {
            try {
                std::size_t pos = 0;
                unsigned long long d = std::stoull(v, &pos);
                if (pos != v.size()) throw std::invalid_argument("trailing characters");
                out = d;
            } catch (const std::exception&) {
                error(ln, sec, key, "expected a nonnegative integer, got '" + v + "'");
            }
        });
    }

    void get_string(const std::string& sec, const std::string& key, std::string& out,
                    const std::vector<std::string>& allowed = {}) {
        with(sec, key, [&](const std::string& v, int ln) {
            if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
                std::string opts;
                for (const auto& a : allowed) opts += (opts.empty() ? "" : " | ") + a;
                error(ln, sec, key, "expected one of {" + opts + "}, got '" + v + "'");
                return;
            }
            out = v;
        });
    }

    void get_double_list(const std::string& sec, const std::string& key,
                         std::vector<double>& out) {
        with(sec, key, [&](const std::string& v, int ln) {
            std::vector<double> vals;
            std::istringstream ss(v);
            std::string tok;
            bool ok = true;
            while (std::getline(ss, tok, ',')) {
                try {
                    vals.push_back(std::stod(trim(tok)));
                } catch (const std::exception&) {
                    ok = false;
                }
            }
            if (!ok || vals.empty())
                error(ln, sec, key, "expected a comma separated list of reals, got '" + v + "'");
            else
                out = std::move(vals);
        });
    }

    void require_positive(const std::string& sec, const std::string& key, double v) {
        if (v <= 0.0) constraint(sec, key, "must be > 0");
    }
    void require_nonnegative(const std::string& sec, const std::string& key, double v) {
        if (v < 0.0) constraint(sec, key, "must be >= 0");
    }

    void constraint(const std::string& sec, const std::string& key, const std::string& msg) {
        int ln = 0;
        auto s = raw_.sections.find(sec);
        if (s != raw_.sections.end()) {
            auto e = s->second.find(key);
            if (e != s->second.end()) ln = e->second.line;
        }
        error(ln, sec, key, msg);
    }

    void error(int ln, const std::string& sec, const std::string& key, const std::string& msg) {
        raw_.errors.push_back("line " + std::to_string(ln) + ": " + sec + "." + key + ": " + msg);
    }

    /// every key left unused in an allowed section, and every disallowed
    /// section, is an error
    void finish(const std::vector<std::string>& allowed_sections) {
        for (auto& [sec, keys] : raw_.sections) {
            bool sec_ok = std::find(allowed_sections.begin(), allowed_sections.end(), sec) !=
                          allowed_sections.end();
            for (auto& [key, entry] : keys) {
                if (!sec_ok)
                    raw_.errors.push_back("line " + std::to_string(entry.line) + ": section [" +
                                          sec + "] is not used by this experiment kind");
                else if (!entry.used)
                    raw_.errors.push_back("line " + std::to_string(entry.line) +
                                          ": unknown key '" + sec + "." + key + "'");
            }
            if (!sec_ok && keys.empty())
                raw_.errors.push_back("section [" + sec +
                                      "] is not used by this experiment kind");
        }
    }

private:
    RawConfig& raw_;
};

void read_potential(Reader& rd, PotentialSpec& p, RawConfig& raw) {
    std::string inter = "harmonic";
    rd.get_string("potential", "interaction", inter, {"harmonic", "fpu", "polynomial"});
    p.interaction = inter == "harmonic"  ? InteractionKind::Harmonic
                    : inter == "fpu"     ? InteractionKind::Fpu
                                         : InteractionKind::Polynomial;
    rd.get_double("potential", "a", p.a);
    rd.get_double("potential", "b", p.b);
    rd.get_double("potential", "c", p.c);
    rd.get_double_list("potential", "poly", p.poly);
    std::string pin = "none";
    rd.get_string("potential", "pinning", pin, {"none", "quadratic", "quartic"});
    p.pinning = pin == "none"        ? PinningKind::None
                : pin == "quadratic" ? PinningKind::Quadratic
                                     : PinningKind::Quartic;
    rd.get_double("potential", "nu2", p.nu2);
    rd.get_double("potential", "w4", p.w4);
    try {
        p.validate();
    } catch (const ConfigError& e) {
        raw.errors.push_back(std::string("[potential]: ") + e.what());
    }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    RawConfig raw = tokenize(text);
    Reader rd(raw);
    ExperimentConfig cfg;

    std::string kind;
    rd.get_string("experiment", "kind", kind,
                  {"chain-run", "green-kubo", "phonon-mc", "transport", "frac-heat", "euler",
                   "thermo-table"});
    if (kind.empty()) {
        raw.errors.insert(raw.errors.begin(), "experiment.kind is required");
        kind = "chain-run";
    }
    cfg.kind = kind == "chain-run"     ? ExperimentKind::ChainRun
               : kind == "green-kubo"  ? ExperimentKind::GreenKubo
               : kind == "phonon-mc"   ? ExperimentKind::PhononMc
               : kind == "transport"   ? ExperimentKind::Transport
               : kind == "frac-heat"   ? ExperimentKind::FracHeat
               : kind == "euler"       ? ExperimentKind::Euler
                                       : ExperimentKind::ThermoTable;
    rd.get_u64("experiment", "seed", cfg.seed);
    rd.get_string("experiment", "out", cfg.out_dir);
    rd.get_int("experiment", "workers", cfg.workers);
    if (cfg.workers < 1) rd.constraint("experiment", "workers", "must be >= 1");
    int verbose = 0;
    rd.get_int("experiment", "verbose", verbose);
    cfg.verbose = verbose != 0;

    std::vector<std::string> allowed{"experiment"};
    auto needs_potential = [&] {
        allowed.push_back("potential");
        read_potential(rd, cfg.potential, raw);
    };

    switch (cfg.kind) {
        case ExperimentKind::ChainRun: {
            needs_potential();
            allowed.insert(allowed.end(), {"chain", "dynamics", "run"});
            rd.get_int("chain", "n_sites", cfg.chain.n_sites);
            if (cfg.chain.n_sites < 3) rd.constraint("chain", "n_sites", "must be >= 3");
            rd.get_double("chain", "beta", cfg.chain.beta);
            rd.require_positive("chain", "beta", cfg.chain.beta);
            rd.get_double("chain", "lambda", cfg.chain.lambda);
            rd.get_double("chain", "pi", cfg.chain.pi);
            rd.get_int("chain", "gibbs_sweeps", cfg.chain.gibbs_sweeps);
            rd.get_double("dynamics", "gamma", cfg.dynamics.gamma);
            rd.require_nonnegative("dynamics", "gamma", cfg.dynamics.gamma);
            rd.get_double("dynamics", "dt", cfg.dynamics.dt);
            rd.require_positive("dynamics", "dt", cfg.dynamics.dt);
            rd.get_double("run", "t_final", cfg.run.t_final);
            rd.require_positive("run", "t_final", cfg.run.t_final);
            rd.get_int("run", "snapshot_stride", cfg.run.snapshot_stride);
            break;
        }
        case ExperimentKind::GreenKubo: {
            needs_potential();
            allowed.insert(allowed.end(), {"chain", "dynamics", "correlation"});
            rd.get_int("chain", "n_sites", cfg.chain.n_sites);
            if (cfg.chain.n_sites < 3) rd.constraint("chain", "n_sites", "must be >= 3");
            rd.get_double("chain", "beta", cfg.chain.beta);
            rd.require_positive("chain", "beta", cfg.chain.beta);
            rd.get_int("chain", "gibbs_sweeps", cfg.chain.gibbs_sweeps);
            rd.get_double("dynamics", "gamma", cfg.dynamics.gamma);
            rd.require_nonnegative("dynamics", "gamma", cfg.dynamics.gamma);
            rd.get_double("dynamics", "dt", cfg.dynamics.dt);
            rd.require_positive("dynamics", "dt", cfg.dynamics.dt);
            rd.get_double("correlation", "t_max", cfg.correlation.t_max);
            rd.require_positive("correlation", "t_max", cfg.correlation.t_max);
            rd.get_double("correlation", "run_length", cfg.correlation.run_length);
            if (cfg.correlation.run_length < 4.0 * cfg.correlation.t_max)
                rd.constraint("correlation", "run_length", "must be >= 4 * t_max");
            rd.get_int("correlation", "n_trajectories", cfg.correlation.n_trajectories);
            if (cfg.correlation.n_trajectories < 2)
                rd.constraint("correlation", "n_trajectories", "must be >= 2");
            rd.get_int("correlation", "lag_stride", cfg.correlation.lag_stride);
            if (cfg.correlation.lag_stride < 1)
                rd.constraint("correlation", "lag_stride", "must be >= 1");
            rd.get_string("correlation", "chi_mode", cfg.correlation.chi_mode,
                          {"t2", "susceptibility"});
            rd.get_int("correlation", "chi_samples", cfg.correlation.chi_samples);
            break;
        }
        case ExperimentKind::PhononMc: {
            allowed.push_back("phonon");
            rd.get_string("phonon", "dispersion", cfg.phonon.dispersion, {"acoustic", "gapped"});
            rd.get_double("phonon", "c", cfg.phonon.c);
            rd.require_positive("phonon", "c", cfg.phonon.c);
            rd.get_double("phonon", "nu", cfg.phonon.nu);
            rd.get_string("phonon", "kernel", cfg.phonon.kernel, {"product", "exchange"});
            rd.get_double("phonon", "c_k", cfg.phonon.c_k);
            rd.require_positive("phonon", "c_k", cfg.phonon.c_k);
            rd.get_int("phonon", "kernel_n", cfg.phonon.kernel_n);
            rd.get_double("phonon", "gamma", cfg.phonon.gamma);
            rd.require_nonnegative("phonon", "gamma", cfg.phonon.gamma);
            rd.get_int("phonon", "n_trajectories", cfg.phonon.n_trajectories);
            if (cfg.phonon.n_trajectories < 100)
                rd.constraint("phonon", "n_trajectories", "must be >= 100");
            rd.get_string("phonon", "method", cfg.phonon.method, {"char_fn", "quantile"});
            rd.get_double_list("phonon", "horizons", cfg.phonon.horizons);
            if (cfg.phonon.horizons.empty())
                cfg.phonon.horizons = default_horizons(cfg.phonon.dispersion);
            break;
        }
        case ExperimentKind::Transport: {
            allowed.insert(allowed.end(), {"phonon", "transport"});
            rd.get_string("phonon", "dispersion", cfg.phonon.dispersion, {"acoustic", "gapped"});
            rd.get_double("phonon", "c", cfg.phonon.c);
            rd.get_double("phonon", "nu", cfg.phonon.nu);
            rd.get_string("phonon", "kernel", cfg.phonon.kernel, {"product", "exchange"});
            rd.get_double("phonon", "c_k", cfg.phonon.c_k);
            rd.get_int("phonon", "kernel_n", cfg.phonon.kernel_n);
            rd.get_double("phonon", "gamma", cfg.phonon.gamma);
            rd.require_nonnegative("phonon", "gamma", cfg.phonon.gamma);
            rd.get_int("transport", "n_y", cfg.transport.n_y);
            rd.get_int("transport", "n_k", cfg.transport.n_k);
            if (cfg.transport.n_y < 8) rd.constraint("transport", "n_y", "must be >= 8");
            if (cfg.transport.n_k < 8) rd.constraint("transport", "n_k", "must be >= 8");
            rd.get_double("transport", "length", cfg.transport.length);
            rd.require_positive("transport", "length", cfg.transport.length);
            rd.get_double("transport", "t_final", cfg.transport.t_final);
            rd.require_nonnegative("transport", "t_final", cfg.transport.t_final);
            rd.get_double("transport", "cfl", cfg.transport.cfl);
            if (cfg.transport.cfl <= 0.0 || cfg.transport.cfl >= 1.0)
                rd.constraint("transport", "cfl", "must lie in (0,1)");
            rd.get_double("transport", "bump_center", cfg.transport.bump_center);
            rd.get_double("transport", "bump_width", cfg.transport.bump_width);
            rd.require_positive("transport", "bump_width", cfg.transport.bump_width);
            rd.get_double("transport", "bump_height", cfg.transport.bump_height);
            rd.get_double("transport", "background", cfg.transport.background);
            break;
        }
        case ExperimentKind::FracHeat: {
            allowed.push_back("fracheat");
            rd.get_double("fracheat", "alpha", cfg.frac_heat.alpha);
            if (!(cfg.frac_heat.alpha > 0.0 && cfg.frac_heat.alpha <= 2.0))
                rd.constraint("fracheat", "alpha", "must lie in (0,2]");
            rd.get_double("fracheat", "c", cfg.frac_heat.c);
            rd.require_positive("fracheat", "c", cfg.frac_heat.c);
            rd.get_double("fracheat", "length", cfg.frac_heat.length);
            rd.require_positive("fracheat", "length", cfg.frac_heat.length);
            rd.get_int("fracheat", "n", cfg.frac_heat.n);
            if (cfg.frac_heat.n < 8 || (cfg.frac_heat.n & (cfg.frac_heat.n - 1)) != 0)
                rd.constraint("fracheat", "n", "must be a power of two >= 8");
            rd.get_double("fracheat", "t_final", cfg.frac_heat.t_final);
            rd.require_nonnegative("fracheat", "t_final", cfg.frac_heat.t_final);
            rd.get_double("fracheat", "bump_center", cfg.frac_heat.bump_center);
            rd.get_double("fracheat", "bump_width", cfg.frac_heat.bump_width);
            rd.require_positive("fracheat", "bump_width", cfg.frac_heat.bump_width);
            rd.get_double("fracheat", "bump_height", cfg.frac_heat.bump_height);
            rd.get_double("fracheat", "background", cfg.frac_heat.background);
            break;
        }
        case ExperimentKind::Euler: {
            needs_potential();
            allowed.insert(allowed.end(), {"thermo", "euler"});
            rd.get_double("thermo", "r_min", cfg.thermo.r_min);
            rd.get_double("thermo", "r_max", cfg.thermo.r_max);
            if (!(cfg.thermo.r_max > cfg.thermo.r_min))
                rd.constraint("thermo", "r_max", "must exceed r_min");
            rd.get_double("thermo", "u_max", cfg.thermo.u_max);
            rd.get_double("thermo", "u_margin", cfg.thermo.u_margin);
            rd.require_positive("thermo", "u_margin", cfg.thermo.u_margin);
            rd.get_int("thermo", "nr", cfg.thermo.nr);
            rd.get_int("thermo", "nu", cfg.thermo.nu);
            rd.get_string("thermo", "interp", cfg.thermo.interp, {"cubic", "linear"});
            rd.get_int("euler", "n_cells", cfg.euler.n_cells);
            if (cfg.euler.n_cells < 8) rd.constraint("euler", "n_cells", "must be >= 8");
            rd.get_double("euler", "length", cfg.euler.length);
            rd.require_positive("euler", "length", cfg.euler.length);
            rd.get_double("euler", "cfl", cfg.euler.cfl);
            if (cfg.euler.cfl <= 0.0 || cfg.euler.cfl > 0.5)
                rd.constraint("euler", "cfl", "must lie in (0, 0.5]");
            rd.get_double("euler", "t_final", cfg.euler.t_final);
            rd.require_nonnegative("euler", "t_final", cfg.euler.t_final);
            rd.get_double("euler", "base_r", cfg.euler.base_r);
            rd.get_double("euler", "base_u", cfg.euler.base_u);
            rd.get_double("euler", "amp_r", cfg.euler.amp_r);
            rd.get_double("euler", "amp_p", cfg.euler.amp_p);
            break;
        }
        case ExperimentKind::ThermoTable: {
            needs_potential();
            allowed.push_back("thermo");
            rd.get_double("thermo", "r_min", cfg.thermo.r_min);
            rd.get_double("thermo", "r_max", cfg.thermo.r_max);
            if (!(cfg.thermo.r_max > cfg.thermo.r_min))
                rd.constraint("thermo", "r_max", "must exceed r_min");
            rd.get_double("thermo", "u_max", cfg.thermo.u_max);
            rd.get_double("thermo", "u_margin", cfg.thermo.u_margin);
            rd.require_positive("thermo", "u_margin", cfg.thermo.u_margin);
            rd.get_int("thermo", "nr", cfg.thermo.nr);
            rd.get_int("thermo", "nu", cfg.thermo.nu);
            rd.get_string("thermo", "interp", cfg.thermo.interp, {"cubic", "linear"});
            break;
        }
    }

    rd.finish(allowed);
    if (!raw.errors.empty()) {
        std::string all = "configuration invalid:";
        for (const auto& e : raw.errors) all += "\n  " + e;
        throw ConfigError(all);
    }
    return cfg;
}

namespace {

void emit_potential(std::ostringstream& os, const PotentialSpec& p) {
    os << "\n[potential]\n";
    os << "interaction = "
       << (p.interaction == InteractionKind::Harmonic  ? "harmonic"
           : p.interaction == InteractionKind::Fpu     ? "fpu"
                                                       : "polynomial")
       << "\n";
    os << "a = " << format_double(p.a) << "\n";
    os << "b = " << format_double(p.b) << "\n";
    os << "c = " << format_double(p.c) << "\n";
    if (!p.poly.empty()) {
        os << "poly = ";
        for (std::size_t i = 0; i < p.poly.size(); ++i)
            os << (i ? "," : "") << format_double(p.poly[i]);
        os << "\n";
    }
    os << "pinning = "
       << (p.pinning == PinningKind::None        ? "none"
           : p.pinning == PinningKind::Quadratic ? "quadratic"
                                                 : "quartic")
       << "\n";
    os << "nu2 = " << format_double(p.nu2) << "\n";
    os << "w4 = " << format_double(p.w4) << "\n";
}

}  // namespace

std::string emit_config(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "[experiment]\n";
    os << "kind = " << to_string(c.kind) << "\n";
    os << "seed = " << c.seed << "\n";
    os << "out = " << c.out_dir << "\n";
    os << "workers = " << c.workers << "\n";
    os << "verbose = " << (c.verbose ? 1 : 0) << "\n";

    auto emit_chain = [&] {
        os << "\n[chain]\n";
        os << "n_sites = " << c.chain.n_sites << "\n";
        os << "beta = " << format_double(c.chain.beta) << "\n";
        os << "lambda = " << format_double(c.chain.lambda) << "\n";
        os << "pi = " << format_double(c.chain.pi) << "\n";
        os << "gibbs_sweeps = " << c.chain.gibbs_sweeps << "\n";
    };
    auto emit_dynamics = [&] {
        os << "\n[dynamics]\n";
        os << "gamma = " << format_double(c.dynamics.gamma) << "\n";
        os << "dt = " << format_double(c.dynamics.dt) << "\n";
    };
    auto emit_thermo = [&] {
        os << "\n[thermo]\n";
        os << "r_min = " << format_double(c.thermo.r_min) << "\n";
        os << "r_max = " << format_double(c.thermo.r_max) << "\n";
        os << "u_max = " << format_double(c.thermo.u_max) << "\n";
        os << "u_margin = " << format_double(c.thermo.u_margin) << "\n";
        os << "nr = " << c.thermo.nr << "\n";
        os << "nu = " << c.thermo.nu << "\n";
        os << "interp = " << c.thermo.interp << "\n";
    };

    switch (c.kind) {
        case ExperimentKind::ChainRun:
            emit_potential(os, c.potential);
            emit_chain();
            emit_dynamics();
            os << "\n[run]\n";
            os << "t_final = " << format_double(c.run.t_final) << "\n";
            os << "snapshot_stride = " << c.run.snapshot_stride << "\n";
            break;
        case ExperimentKind::GreenKubo:
            emit_potential(os, c.potential);
            emit_chain();
            emit_dynamics();
            os << "\n[correlation]\n";
            os << "t_max = " << format_double(c.correlation.t_max) << "\n";
            os << "run_length = " << format_double(c.correlation.run_length) << "\n";
            os << "n_trajectories = " << c.correlation.n_trajectories << "\n";
            os << "lag_stride = " << c.correlation.lag_stride << "\n";
            os << "chi_mode = " << c.correlation.chi_mode << "\n";
            os << "chi_samples = " << c.correlation.chi_samples << "\n";
            break;
        case ExperimentKind::PhononMc:
            os << "\n[phonon]\n";
            os << "dispersion = " << c.phonon.dispersion << "\n";
            os << "c = " << format_double(c.phonon.c) << "\n";
            os << "nu = " << format_double(c.phonon.nu) << "\n";
            os << "kernel = " << c.phonon.kernel << "\n";
            os << "c_k = " << format_double(c.phonon.c_k) << "\n";
            os << "kernel_n = " << c.phonon.kernel_n << "\n";
            os << "gamma = " << format_double(c.phonon.gamma) << "\n";
            os << "n_trajectories = " << c.phonon.n_trajectories << "\n";
            os << "method = " << c.phonon.method << "\n";
            os << "horizons = ";
            for (std::size_t i = 0; i < c.phonon.horizons.size(); ++i)
                os << (i ? "," : "") << format_double(c.phonon.horizons[i]);
            os << "\n";
            break;
        case ExperimentKind::Transport:
            os << "\n[phonon]\n";
            os << "dispersion = " << c.phonon.dispersion << "\n";
            os << "c = " << format_double(c.phonon.c) << "\n";
            os << "nu = " << format_double(c.phonon.nu) << "\n";
            os << "kernel = " << c.phonon.kernel << "\n";
            os << "c_k = " << format_double(c.phonon.c_k) << "\n";
            os << "kernel_n = " << c.phonon.kernel_n << "\n";
            os << "gamma = " << format_double(c.phonon.gamma) << "\n";
            os << "\n[transport]\n";
            os << "n_y = " << c.transport.n_y << "\n";
            os << "n_k = " << c.transport.n_k << "\n";
            os << "length = " << format_double(c.transport.length) << "\n";
            os << "t_final = " << format_double(c.transport.t_final) << "\n";
            os << "cfl = " << format_double(c.transport.cfl) << "\n";
            os << "bump_center = " << format_double(c.transport.bump_center) << "\n";
            os << "bump_width = " << format_double(c.transport.bump_width) << "\n";
            os << "bump_height = " << format_double(c.transport.bump_height) << "\n";
            os << "background = " << format_double(c.transport.background) << "\n";
            break;
        case ExperimentKind::FracHeat:
            os << "\n[fracheat]\n";
            os << "alpha = " << format_double(c.frac_heat.alpha) << "\n";
            os << "c = " << format_double(c.frac_heat.c) << "\n";
            os << "length = " << format_double(c.frac_heat.length) << "\n";
            os << "n = " << c.frac_heat.n << "\n";
            os << "t_final = " << format_double(c.frac_heat.t_final) << "\n";
            os << "bump_center = " << format_double(c.frac_heat.bump_center) << "\n";
            os << "bump_width = " << format_double(c.frac_heat.bump_width) << "\n";
            os << "bump_height = " << format_double(c.frac_heat.bump_height) << "\n";
            os << "background = " << format_double(c.frac_heat.background) << "\n";
            break;
        case ExperimentKind::Euler:
            emit_potential(os, c.potential);
            emit_thermo();
            os << "\n[euler]\n";
            os << "n_cells = " << c.euler.n_cells << "\n";
            os << "length = " << format_double(c.euler.length) << "\n";
            os << "cfl = " << format_double(c.euler.cfl) << "\n";
            os << "t_final = " << format_double(c.euler.t_final) << "\n";
            os << "base_r = " << format_double(c.euler.base_r) << "\n";
            os << "base_u = " << format_double(c.euler.base_u) << "\n";
            os << "amp_r = " << format_double(c.euler.amp_r) << "\n";
            os << "amp_p = " << format_double(c.euler.amp_p) << "\n";
            break;
        case ExperimentKind::ThermoTable:
            emit_potential(os, c.potential);
            emit_thermo();
            break;
    }
    return os.str();
}

}  // namespace chainlab
