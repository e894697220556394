#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "chainlab/config.hpp"
#include "chainlab/errors.hpp"
#include "chainlab/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"chainlab: energy-transport experiments on oscillator chains"};

    std::string config_path;
    std::string out_override;
    std::uint64_t seed_override = 0;
    bool seed_set = false;
    int workers_override = 0;
    bool verbose = false;

    app.add_option("--config", config_path, "experiment configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--seed", seed_override, "override the master seed")
        ->each([&](const std::string&) { seed_set = true; });
    app.add_option("--out", out_override, "override the output directory");
    app.add_option("--workers", workers_override, "override the worker count")
        ->check(CLI::PositiveNumber);
    app.add_flag("--verbose", verbose, "chatty progress output");

    CLI11_PARSE(app, argc, argv);

    std::ifstream in(config_path);
    std::stringstream buf;
    buf << in.rdbuf();

    chainlab::ExperimentConfig cfg;
    try {
        cfg = chainlab::parse_config(buf.str());
    } catch (const chainlab::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    if (seed_set) cfg.seed = seed_override;
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (workers_override > 0) cfg.workers = workers_override;
    if (verbose) cfg.verbose = true;

    if (cfg.verbose)
        std::cerr << "running " << chainlab::to_string(cfg.kind) << " -> " << cfg.out_dir
                  << " (seed " << cfg.seed << ", workers " << cfg.workers << ")\n";

    chainlab::RunManifest manifest = chainlab::run_experiment(cfg);
    if (manifest.status != "ok") {
        std::cerr << "run failed: " << manifest.error << "\n";
        return manifest.exit_code;
    }
    if (cfg.verbose) {
        std::cerr << "done in " << manifest.wall_seconds << " s\n";
        for (const auto& [name, crc] : manifest.outputs)
            std::cerr << "  " << name << " crc32 " << crc << "\n";
    }
    return 0;
}
