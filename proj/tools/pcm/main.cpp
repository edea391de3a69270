#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "json.hpp"
#include "pcm/error.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kComputationFailure = 1;
constexpr int kConfigError = 2;

struct Args {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::string out;
};

int execute(const std::string& command, const Args& args) {
    using namespace pcm::cli;
    RunOptions opt;
    if (!args.out.empty()) opt.out = std::filesystem::path(args.out);

    nlohmann::json report;
    if (command == "demo") {
        opt.seed = args.seed.value_or(2024);
        opt.par.workers = args.workers.value_or(1);
        report = run_demo_report(opt);
    } else {
        const auto cfg = Config::from_file(args.config);
        opt.seed = args.seed.value_or(cfg.seed());
        opt.par.workers = args.workers.value_or(cfg.workers().value_or(1));
        report = run_command(command, cfg, opt);
    }
    std::cout << report.dump(2) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probabilistic cone metric experiments"};
    app.set_version_flag("--version", pcm::cli::tool_version());
    app.require_subcommand(1);

    Args args;
    auto add_common = [&args](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", args.config, "JSON experiment config");
        if (needs_config) c->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", args.seed, "Root seed (overrides the config)");
        sub->add_option("--workers", args.workers, "Worker threads; results do not depend on it")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", args.out, "Directory for the JSON report and CSV traces");
    };
    add_common(app.add_subcommand("axioms", "Check the probabilistic cone metric axioms"), true);
    add_common(app.add_subcommand("classify", "Run the contraction checkers"), true);
    add_common(app.add_subcommand("solve", "Picard iteration with bounds and uniqueness probe"), true);
    add_common(app.add_subcommand("sie", "Solve a random Volterra integral equation"), true);
    add_common(app.add_subcommand("demo", "Rotation example and integral-equation benchmarks"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return execute(command, args);
    } catch (const pcm::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const pcm::InvalidParameter& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const pcm::DivergenceError& e) {
        std::cerr << "divergence at iteration " << e.iteration() << ": " << e.what() << '\n';
        if (!e.partial_orbit().empty())
            std::cerr << "last finite iterate: " << nlohmann::json(e.partial_orbit().back()).dump() << '\n';
        return kComputationFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kComputationFailure;
    }
}
