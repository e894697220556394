#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "chainlab/config.hpp"

namespace chainlab {

inline constexpr const char* version = "0.1.0";

struct RunManifest {
    std::string kind;
    std::string status = "ok";  // ok | error
    int exit_code = 0;          // 0 ok, 2 validation, 3 numerical
    std::string error;
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, std::uint32_t>> outputs;  // name, crc32
    std::vector<std::string> warnings;
    std::string config_echo;

    void write(const std::filesystem::path& path) const;
};

/// Dispatch the experiment, write its outputs and out/manifest.txt (the
/// manifest is written even when the run fails). Single-worker reruns with
/// the same seed produce bitwise-identical outputs.
RunManifest run_experiment(const ExperimentConfig& config);

}  // namespace chainlab
