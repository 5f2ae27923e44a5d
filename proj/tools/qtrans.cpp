// Command-line front end: trajectory design, domain scans, energy bounds,
// TDSE verification runs, and anharmonicity estimates. All commands read a
// JSON config and write CSV series or JSON reports.

#include <cstdint>
#include <exception>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qtrans/app.hpp"
#include "qtrans/kernels.hpp"
#include "qtrans/propagator.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

}  // namespace

int main(int argc, char** argv)
{
    CLI::App cli{"qtrans - trap trajectory engineering and transport verification"};
    cli.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    int threads = 1;
    std::uint64_t seed = 0;  // reserved; all current algorithms are deterministic
    bool metadata = false;

    cli.add_option("--out", out_dir, "Directory for relative output paths")->capture_default_str();
    cli.add_option("--threads", threads, "Worker threads for sweeps")->capture_default_str();
    cli.add_option("--seed", seed, "Reserved for future stochastic features");
    cli.add_flag("--metadata", metadata, "Add a timestamped comment header to CSV outputs");

    using Runner = void (*)(const nlohmann::json&, const qtrans::app::RunContext&);
    struct Command {
        const char* name;
        const char* help;
        Runner runner;
    };
    const Command commands[] = {
        {"design", "Sample protocol trajectories to CSV", qtrans::app::run_design},
        {"scan", "Map stopping-trajectory domain violations over (a, b)", qtrans::app::run_scan},
        {"bounds", "Transient-excitation lower bounds as JSON", qtrans::app::run_bounds},
        {"energy", "Transport-mode energy series and averages", qtrans::app::run_energy},
        {"simulate", "Propagate the TDSE and report fidelity", qtrans::app::run_simulate},
        {"perturb", "First-order anharmonicity actions", qtrans::app::run_perturb},
        {"sweep", "Parameter sweeps (region maps, energy scalings)", qtrans::app::run_sweep},
    };

    Runner selected = nullptr;
    for (const auto& cmd : commands) {
        CLI::App* sub = cli.add_subcommand(cmd.name, cmd.help);
        sub->fallthrough();  // global flags may follow the subcommand
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->callback([&selected, runner = cmd.runner] { selected = runner; });
    }

    CLI11_PARSE(cli, argc, argv);

    try {
        const nlohmann::json config = qtrans::app::load_config(config_path);
        qtrans::app::RunContext ctx{out_dir, threads, metadata};
        selected(config, ctx);
    } catch (const qtrans::app::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfigError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const qtrans::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
