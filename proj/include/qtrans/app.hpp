#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qtrans/params.hpp"
#include "qtrans/potentials.hpp"
#include "qtrans/trajectories.hpp"

namespace qtrans::app {

/// Invalid or malformed configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a JSON config file; syntax errors are reported with line/column.
nlohmann::json load_config(const std::filesystem::path& path);

PhysicalParams parse_params(const nlohmann::json& config);
TransportSpec parse_spec(const nlohmann::json& config);
NumericsConfig parse_numerics(const nlohmann::json& config);

/// Builds the trajectory described by config["protocol"].
Trajectory parse_trajectory(const nlohmann::json& config, const TransportSpec& spec,
                            const PhysicalParams& params);

/// Builds the potential model (protocol.options.potential, default
/// moving_harmonic) on top of the protocol's trajectory.
PotentialModel parse_potential(const nlohmann::json& config, const Trajectory& traj);

struct RunContext {
    std::filesystem::path out_dir = ".";
    int threads = 1;
    bool metadata = false;  // adds a timestamped comment header to CSV files
};

// One function per CLI subcommand. All of them throw ConfigError for bad
// configs and NumericalError for runtime numerical failures.
void run_design(const nlohmann::json& config, const RunContext& ctx);
void run_scan(const nlohmann::json& config, const RunContext& ctx);
void run_bounds(const nlohmann::json& config, const RunContext& ctx);
void run_energy(const nlohmann::json& config, const RunContext& ctx);
void run_simulate(const nlohmann::json& config, const RunContext& ctx);
void run_perturb(const nlohmann::json& config, const RunContext& ctx);
void run_sweep(const nlohmann::json& config, const RunContext& ctx);

}  // namespace qtrans::app
