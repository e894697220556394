#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "chainlab/config.hpp"
#include "chainlab/errors.hpp"
#include "chainlab/runner.hpp"

using namespace chainlab;

namespace {

std::string minimal_chain_run = R"(
[experiment]
kind = chain-run
seed = 42
out = OUTDIR

[potential]
interaction = harmonic
a = 1.0

[chain]
n_sites = 64
beta = 1.0

[dynamics]
gamma = 1.0
dt = 0.02

[run]
t_final = 0.5
)";

std::filesystem::path temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("chainlab_test_" + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::string with_out(const std::string& text, const std::filesystem::path& dir) {
    std::string s = text;
    auto pos = s.find("OUTDIR");
    s.replace(pos, 6, dir.string());
    return s;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("minimal config parses with defaults filled") {
    ExperimentConfig cfg = parse_config(with_out(minimal_chain_run, "out"));
    CHECK(cfg.kind == ExperimentKind::ChainRun);
    CHECK(cfg.seed == 42);
    CHECK(cfg.chain.n_sites == 64);
    CHECK(cfg.chain.lambda == 0.0);        // default
    CHECK(cfg.run.snapshot_stride == 0);   // default
    CHECK(cfg.workers == 1);
}

TEST_CASE("constraint violations name the key and line") {
    std::string bad = minimal_chain_run;
    auto pos = bad.find("beta = 1.0");
    bad.replace(pos, 10, "beta = -2.0");
    try {
        parse_config(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("chain.beta") != std::string::npos);
        CHECK(msg.find("line") != std::string::npos);
    }
}

TEST_CASE("unknown keys, bad types and duplicates are all reported together") {
    std::string bad = minimal_chain_run;
    bad += "\n[chain]\n";  // reopen section
    bad += "flux_capacitor = 3\n";
    bad += "beta = oops\n";
    try {
        parse_config(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("flux_capacitor") != std::string::npos);
        CHECK(msg.find("duplicate key") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("[experiment]\nkind = warp-drive\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("kind = chain-run\n"), ConfigError);  // key before section
}

TEST_CASE("sections from other experiment kinds are rejected") {
    std::string bad = minimal_chain_run + "\n[euler]\nn_cells = 32\n";
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
}

TEST_CASE("emit(parse(text)) reparses to an equal config") {
    std::vector<std::string> texts;
    texts.push_back(minimal_chain_run);
    texts.push_back(R"(
[experiment]
kind = phonon-mc
seed = 7
out = runs/mc

[phonon]
dispersion = gapped
c = 1.0
nu = 1.0
kernel = product
gamma = 0.8
n_trajectories = 500
method = quantile
)");
    texts.push_back(R"(
[experiment]
kind = frac-heat
out = runs/fh

[fracheat]
alpha = 1.5
c = 0.5
n = 128
length = 30.0
t_final = 0.7
)");
    texts.push_back(R"(
[experiment]
kind = euler
out = runs/euler

[potential]
interaction = harmonic

[thermo]
nr = 32
nu = 32

[euler]
n_cells = 64
t_final = 0.05
)");
    for (const auto& text : texts) {
        ExperimentConfig a = parse_config(with_out(text, "x"));
        std::string canon = emit_config(a);
        ExperimentConfig b = parse_config(canon);
        CHECK(a == b);
        CHECK(emit_config(b) == canon);
    }
}

TEST_CASE("runner determinism: same seed gives identical checksums") {
    auto d1 = temp_dir("det1"), d2 = temp_dir("det2");
    ExperimentConfig c1 = parse_config(with_out(minimal_chain_run, d1));
    ExperimentConfig c2 = parse_config(with_out(minimal_chain_run, d2));
    RunManifest m1 = run_experiment(c1);
    RunManifest m2 = run_experiment(c2);
    REQUIRE(m1.status == "ok");
    REQUIRE(m2.status == "ok");
    REQUIRE(m1.outputs.size() == m2.outputs.size());
    for (std::size_t i = 0; i < m1.outputs.size(); ++i) {
        CHECK(m1.outputs[i].first == m2.outputs[i].first);
        CHECK(m1.outputs[i].second == m2.outputs[i].second);
    }
    CHECK(std::filesystem::exists(d1 / "manifest.txt"));

    // a different seed must change the trajectory outputs
    ExperimentConfig c3 = c1;
    c3.seed = 43;
    c3.out_dir = temp_dir("det3").string();
    RunManifest m3 = run_experiment(c3);
    bool any_diff = false;
    for (std::size_t i = 0; i < m1.outputs.size(); ++i)
        if (m1.outputs[i].second != m3.outputs[i].second) any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("runner writes a manifest and nonzero code on failure") {
    auto dir = temp_dir("fail");
    std::string cfg_text = with_out(minimal_chain_run, dir);
    auto pos = cfg_text.find("dt = 0.02");
    cfg_text.replace(pos, 9, "dt = 0.49");  // beyond the stability bound
    ExperimentConfig cfg = parse_config(cfg_text);
    RunManifest m = run_experiment(cfg);
    CHECK(m.status == "error");
    CHECK(m.exit_code == 2);
    CHECK(std::filesystem::exists(dir / "manifest.txt"));
    std::ifstream in(dir / "manifest.txt");
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str().find("status = error") != std::string::npos);
}

}  // TEST_SUITE
