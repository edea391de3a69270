#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "config.hpp"
#include "json.hpp"
#include "pcm/types.hpp"

namespace pcm::cli {

inline constexpr const char* kToolName = "pcm";
const char* tool_version();

struct RunOptions {
    std::uint64_t seed = 0;
    Parallelism par{};
    std::optional<std::filesystem::path> out;  ///< report and CSV directory
};

/// Each command returns the `results` object of its report and writes any
/// CSV side files into `opt.out`.
nlohmann::json run_axioms(const Config& cfg, const RunOptions& opt);
nlohmann::json run_classify(const Config& cfg, const RunOptions& opt);
nlohmann::json run_solve(const Config& cfg, const RunOptions& opt);
nlohmann::json run_sie(const Config& cfg, const RunOptions& opt);

/// The rotation-half reproduction and the integral-equation benchmarks, each
/// run through the matching command on a built-in config.
nlohmann::json run_demo(const RunOptions& opt);

/// Built-in demo configs, in run order: (experiment name, command, config).
struct DemoExperiment {
    std::string name;
    std::string command;
    nlohmann::json config;
};
std::vector<DemoExperiment> demo_experiments();

/// Runs `command` and wraps the results in the full report:
/// {tool, version, command, seed, config, results, wall_time_s}.
/// Writes `<command>.json` into opt.out when set.
nlohmann::json run_command(const std::string& command, const Config& cfg, const RunOptions& opt);
nlohmann::json run_demo_report(const RunOptions& opt);

/// The report without its wall-time field, for comparisons.
nlohmann::json strip_wall_time(nlohmann::json report);

}  // namespace pcm::cli
