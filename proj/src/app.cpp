#include "qtrans/app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "qtrans/modes.hpp"
#include "qtrans/perturbation.hpp"
#include "qtrans/propagator.hpp"
#include "qtrans/quadrature.hpp"
#include "qtrans/wavefunction.hpp"

namespace qtrans::app {

using nlohmann::json;

namespace {

std::string fmt_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ConfigError("config error at " + where + ": " + what);
}

const json& require(const json& node, const std::string& key, const std::string& where)
{
    auto it = node.find(key);
    if (it == node.end()) fail(where, "missing required key '" + key + "'");
    return *it;
}

double require_number(const json& node, const std::string& key, const std::string& where)
{
    const json& v = require(node, key, where);
    if (!v.is_number()) fail(where + "." + key, "expected a number");
    return v.get<double>();
}

double number_or(const json& node, const std::string& key, double fallback,
                 const std::string& where)
{
    auto it = node.find(key);
    if (it == node.end()) return fallback;
    if (!it->is_number()) fail(where + "." + key, "expected a number");
    return it->get<double>();
}

std::int64_t integer_or(const json& node, const std::string& key, std::int64_t fallback,
                        const std::string& where)
{
    auto it = node.find(key);
    if (it == node.end()) return fallback;
    if (!it->is_number_integer()) fail(where + "." + key, "expected an integer");
    return it->get<std::int64_t>();
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body)
{
    const int n_threads = std::max(1, threads);
    if (n_threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
        const std::size_t begin = static_cast<std::size_t>(t) * chunk;
        if (begin >= count) break;
        const std::size_t end = std::min(begin + chunk, count);
        pool.emplace_back([&, begin, end] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

struct OutputTarget {
    std::string observable;
    std::filesystem::path path;
    std::string format;
};

std::vector<OutputTarget> parse_outputs(const json& config, const RunContext& ctx,
                                        const std::string& where)
{
    const json& list = require(config, "outputs", where);
    if (!list.is_array() || list.empty()) fail(where + ".outputs", "expected a non-empty array");
    std::vector<OutputTarget> out;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const json& entry = list[i];
        const std::string at = where + ".outputs[" + std::to_string(i) + "]";
        if (!entry.is_object()) fail(at, "expected an object");
        OutputTarget target;
        target.observable = require(entry, "observable", at).get<std::string>();
        target.path = require(entry, "path", at).get<std::string>();
        target.format = entry.value("format", std::string("csv"));
        if (target.format != "csv" && target.format != "json")
            fail(at + ".format", "expected 'csv' or 'json'");
        if (!seen.insert(target.path.string()).second)
            fail(at + ".path", "output paths must be distinct");
        if (target.path.is_relative()) target.path = ctx.out_dir / target.path;
        out.push_back(std::move(target));
    }
    return out;
}

const OutputTarget* find_output(const std::vector<OutputTarget>& outputs,
                                const std::string& observable)
{
    for (const auto& o : outputs)
        if (o.observable == observable) return &o;
    return nullptr;
}

std::ofstream open_output(const std::filesystem::path& path)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

void write_metadata(std::ofstream& out, const RunContext& ctx, const std::string& command)
{
    if (!ctx.metadata) return;
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    out << "# qtrans " << command << " " << stamp << "\n";
}

void write_json(const std::filesystem::path& path, const json& doc)
{
    auto out = open_output(path);
    out << doc.dump(2) << "\n";
}

json bounds_to_json(const BoundsReport& b)
{
    return json{{"euler_lagrange_ep", b.euler_lagrange_ep},
                {"mvt_velocity", b.mvt_velocity},
                {"mvt_acceleration", b.mvt_acceleration},
                {"instantaneous_ep", b.instantaneous_ep},
                {"aa_avg_spread", b.aa_avg_spread},
                {"variance_avg", b.variance_avg}};
}

json result_to_json(const SimulationResult& r)
{
    json doc{{"final_fidelity", r.final_fidelity},
             {"final_norm_error", r.final_norm_error},
             {"steps", r.steps}};
    if (std::isnan(r.excitation_energy))
        doc["excitation_energy"] = nullptr;
    else
        doc["excitation_energy"] = r.excitation_energy;
    if (!r.populations.empty()) doc["populations"] = r.populations;
    return doc;
}

json perturbation_to_json(const PerturbationReport& r)
{
    return json{{"f_closed", r.f_closed},
                {"f_numeric", r.f_numeric},
                {"first_order_overlap",
                 {{"re", r.first_order_overlap.real()}, {"im", r.first_order_overlap.imag()}}},
                {"relative_discrepancy", r.relative_discrepancy}};
}

}  // namespace

json load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return json::parse(text);
    } catch (const json::parse_error& err) {
        // Recover line/column from the byte offset for a usable message.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < std::min(err.byte, text.size()); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("config parse error in " + path.string() + " at line " +
                          std::to_string(line) + ", column " + std::to_string(col) + ": " +
                          err.what());
    }
}

PhysicalParams parse_params(const json& config)
{
    PhysicalParams p;
    if (auto it = config.find("params"); it != config.end()) {
        const json& node = *it;
        if (!node.is_object()) fail("params", "expected an object");
        p.mass = number_or(node, "mass", 1.0, "params");
        p.omega0 = number_or(node, "omega0", 1.0, "params");
        p.hbar = number_or(node, "hbar", 1.0, "params");
        p.gravity = number_or(node, "gravity", 0.0, "params");
    }
    try {
        p.validate();
    } catch (const std::exception& e) {
        fail("params", e.what());
    }
    return p;
}

TransportSpec parse_spec(const json& config)
{
    const json& node = require(config, "spec", "config");
    if (!node.is_object()) fail("spec", "expected an object");
    TransportSpec spec;
    spec.distance = require_number(node, "distance", "spec");
    spec.duration = require_number(node, "duration", "spec");
    spec.v_initial = number_or(node, "v_initial", 0.0, "spec");
    spec.v_final = number_or(node, "v_final", 0.0, "spec");
    try {
        spec.validate();
    } catch (const std::exception& e) {
        fail("spec", e.what());
    }
    return spec;
}

NumericsConfig parse_numerics(const json& config)
{
    NumericsConfig n;
    if (auto it = config.find("numerics"); it != config.end()) {
        const json& node = *it;
        if (!node.is_object()) fail("numerics", "expected an object");
        n.grid_points = static_cast<std::size_t>(
            integer_or(node, "grid_points", static_cast<std::int64_t>(n.grid_points), "numerics"));
        n.grid_padding = number_or(node, "padding", n.grid_padding, "numerics");
        n.dt_per_period = number_or(node, "dt_per_period", n.dt_per_period, "numerics");
        if (auto tol = node.find("tolerances"); tol != node.end()) {
            n.tolerances.norm = number_or(*tol, "norm", n.tolerances.norm, "numerics.tolerances");
            n.tolerances.fidelity =
                number_or(*tol, "fidelity", n.tolerances.fidelity, "numerics.tolerances");
            n.tolerances.quadrature =
                number_or(*tol, "quadrature", n.tolerances.quadrature, "numerics.tolerances");
        }
    }
    try {
        n.validate();
    } catch (const std::exception& e) {
        fail("numerics", e.what());
    }
    return n;
}

Trajectory parse_trajectory(const json& config, const TransportSpec& spec,
                            const PhysicalParams& params)
{
    const json& node = require(config, "protocol", "config");
    const std::string kind = require(node, "kind", "protocol").get<std::string>();
    const json options = node.value("options", json::object());
    try {
        if (kind == "inverse_polynomial" || kind == "quintic")
            return inverse_polynomial_trajectory(spec, params);
        if (kind == "quasi_optimal") return quasi_optimal_trajectory(spec, params);
        if (kind == "stopping") return stopping_trajectory(spec, params);
        if (kind == "launching") return launching_trajectory(spec, params);
        if (kind == "bang_bang") return bang_bang_trajectory(spec, params);
        if (kind == "direct_polynomial")
            return direct_trap_trajectory(spec, params,
                                          options.value("continuous_acceleration", true));
        if (kind == "custom_polynomial") {
            auto it = options.find("coefficients");
            if (it == options.end() || !it->is_array() || it->empty())
                fail("protocol.options.coefficients", "expected a non-empty array of numbers");
            std::vector<double> coeffs;
            for (const auto& c : *it) coeffs.push_back(c.get<double>());
            return derive_q0(polynomial_trajectory(Polynomial(coeffs), spec, params));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        fail("protocol", e.what());
    }
    fail("protocol.kind", "unknown protocol '" + kind + "'");
}

PotentialModel parse_potential(const json& config, const Trajectory& traj)
{
    const json& protocol = require(config, "protocol", "config");
    const json options = protocol.value("options", json::object());
    const json pot = options.value("potential", json::object());
    const std::string model = pot.value("model", std::string("moving_harmonic"));
    const auto& params = traj.params;

    auto beam_length = [&](const std::string& where) {
        if (pot.contains("x_r")) return require_number(pot, "x_r", where);
        if (pot.contains("x_r_over_sigma0"))
            return require_number(pot, "x_r_over_sigma0", where) * params.sigma0();
        fail(where, "gaussian-beam potentials need x_r or x_r_over_sigma0");
    };

    if (model == "moving_harmonic") return MovingHarmonic{traj};
    if (model == "transitionless_momentum")
        return TransitionlessMomentum{traj, pot.value("include_h0", true)};
    if (model == "gaussian_beam") {
        const double x_r = beam_length("protocol.options.potential");
        GaussianBeamLongitudinal beam = gaussian_beam_from_frequency(traj, x_r);
        beam.v0 = number_or(pot, "v0", beam.v0, "protocol.options.potential");
        return beam;
    }
    if (model == "quartic_expanded") {
        const double x_r = beam_length("protocol.options.potential");
        QuarticExpanded quartic = quartic_from_frequency(traj, x_r);
        quartic.v0 = number_or(pot, "v0", quartic.v0, "protocol.options.potential");
        return quartic;
    }
    if (model == "compensated_trap") {
        const json profile = pot.value("profile", json::object());
        const std::string shape = profile.value("shape", std::string("harmonic"));
        if (shape == "harmonic") return CompensatedTrap{traj, harmonic_profile(params)};
        if (shape == "gaussian_beam") {
            const double x_r = profile.contains("x_r")
                                   ? require_number(profile, "x_r", "potential.profile")
                                   : require_number(profile, "x_r_over_sigma0",
                                                    "potential.profile") *
                                         params.sigma0();
            const double v0 =
                number_or(profile, "v0",
                          0.5 * params.mass * params.omega0 * params.omega0 * x_r * x_r,
                          "potential.profile");
            return CompensatedTrap{traj, gaussian_beam_profile(v0, x_r)};
        }
        if (shape == "asymmetric_double_well") {
            const double w = number_or(profile, "width", 2.0 * params.sigma0(), "potential.profile");
            const double sep =
                number_or(profile, "separation", 4.0 * params.sigma0(), "potential.profile");
            const double d1 = require_number(profile, "depth1", "potential.profile");
            const double d2 = require_number(profile, "depth2", "potential.profile");
            return CompensatedTrap{traj, asymmetric_double_well_profile(d1, d2, sep, w)};
        }
        fail("protocol.options.potential.profile.shape", "unknown profile '" + shape + "'");
    }
    fail("protocol.options.potential.model", "unknown model '" + model + "'");
}

void run_design(const json& config, const RunContext& ctx)
{
    const PhysicalParams params = parse_params(config);
    const auto samples =
        static_cast<std::size_t>(integer_or(config, "samples", 512, "config"));
    if (samples < 2) fail("samples", "need at least 2 samples");

    std::vector<json> cases;
    if (auto it = config.find("cases"); it != config.end()) {
        if (!it->is_array() || it->empty()) fail("cases", "expected a non-empty array");
        for (const auto& c : *it) cases.push_back(c);
    } else {
        cases.push_back(config);
    }

    std::set<std::string> all_paths;
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        const json& c = cases[ci];
        const std::string where = "cases[" + std::to_string(ci) + "]";
        const TransportSpec spec = parse_spec(c);
        if (spec.distance == 0.0) fail(where + ".spec.distance", "design needs distance != 0");
        const Trajectory traj = parse_trajectory(c, spec, params);
        const auto outputs = parse_outputs(c, ctx, where);
        const OutputTarget* target = find_output(outputs, "trajectory");
        if (!target) fail(where + ".outputs", "design needs an output with observable 'trajectory'");
        if (!all_paths.insert(target->path.string()).second)
            fail(where + ".outputs", "output paths must be distinct across cases");

        auto out = open_output(target->path);
        write_metadata(out, ctx, "design");
        out << "s,qc_over_d,q0_over_d\n";
        for (std::size_t i = 0; i < samples; ++i) {
            const double s = static_cast<double>(i) / static_cast<double>(samples - 1);
            const double t = s * spec.duration;
            out << fmt_num(s) << "," << fmt_num(traj.q_c.value(t) / spec.distance) << ","
                << fmt_num(traj.q_0.value(t) / spec.distance) << "\n";
        }
    }
}

void run_scan(const json& config, const RunContext& ctx)
{
    const json& a_node = require(config, "a", "config");
    const json& b_node = require(config, "b_over_2pi", "config");
    const double a_min = require_number(a_node, "min", "a");
    const double a_max = require_number(a_node, "max", "a");
    const auto a_count = static_cast<std::size_t>(integer_or(a_node, "count", 200, "a"));
    const double b_min = require_number(b_node, "min", "b_over_2pi");
    const double b_max = require_number(b_node, "max", "b_over_2pi");
    const auto b_count = static_cast<std::size_t>(integer_or(b_node, "count", 200, "b_over_2pi"));
    if (a_count < 1 || b_count < 1) fail("a.count/b_over_2pi.count", "must be >= 1");
    if (!(b_min > 0.0)) fail("b_over_2pi.min", "must be > 0");

    const double two_pi = 2.0 * std::numbers::pi;
    const auto map =
        stopping_region_map(a_min, a_max, b_min * two_pi, b_max * two_pi, a_count, b_count,
                            ctx.threads);

    const auto outputs = parse_outputs(config, ctx, "config");
    const OutputTarget* target = find_output(outputs, "region_map");
    if (!target) fail("outputs", "scan needs an output with observable 'region_map'");
    auto out = open_output(target->path);
    write_metadata(out, ctx, "scan");
    out << "a,b_over_2pi,below,above\n";
    for (std::size_t i = 0; i < a_count; ++i)
        for (std::size_t j = 0; j < b_count; ++j)
            out << fmt_num(map.a_values[i]) << "," << fmt_num(map.b_values[j] / two_pi) << ","
                << (map.below_at(i, j) ? 1 : 0) << "," << (map.above_at(i, j) ? 1 : 0) << "\n";
}

void run_bounds(const json& config, const RunContext& ctx)
{
    const PhysicalParams params = parse_params(config);
    const TransportSpec spec = parse_spec(config);
    const int n = static_cast<int>(integer_or(config, "n", 0, "config"));
    const BoundsReport report = bounds_report(spec, params, n);

    const auto outputs = parse_outputs(config, ctx, "config");
    const OutputTarget* target = find_output(outputs, "bounds");
    if (!target) fail("outputs", "bounds needs an output with observable 'bounds'");
    write_json(target->path, bounds_to_json(report));
}

void run_energy(const json& config, const RunContext& ctx)
{
    const PhysicalParams params = parse_params(config);
    const TransportSpec spec = parse_spec(config);
    const Trajectory traj = parse_trajectory(config, spec, params);
    const int n = static_cast<int>(integer_or(config, "n", 0, "config"));
    const auto samples = static_cast<std::size_t>(integer_or(config, "samples", 513, "config"));

    const EnergyReport report = energy_report(TransportMode{n, traj}, samples);
    const auto outputs = parse_outputs(config, ctx, "config");

    if (const OutputTarget* target = find_output(outputs, "energy_series")) {
        auto out = open_output(target->path);
        write_metadata(out, ctx, "energy");
        out << "t,EH,EP,Ekin_c,dH\n";
        for (std::size_t i = 0; i < report.times.size(); ++i)
            out << fmt_num(report.times[i]) << "," << fmt_num(report.total[i]) << ","
                << fmt_num(report.potential[i]) << "," << fmt_num(report.kinetic[i]) << ","
                << fmt_num(report.spread[i]) << "\n";
    }
    if (const OutputTarget* target = find_output(outputs, "energy_report")) {
        write_json(target->path, json{{"n", report.n},
                                      {"total_avg", report.total_avg},
                                      {"ep_avg", report.ep_avg},
                                      {"ep_avg_accel_route", report.ep_avg_accel_route},
                                      {"kinetic_avg", report.kinetic_avg},
                                      {"spread_avg", report.spread_avg}});
    }
    if (!find_output(outputs, "energy_series") && !find_output(outputs, "energy_report"))
        fail("outputs", "energy needs 'energy_series' or 'energy_report'");
}

void run_simulate(const json& config, const RunContext& ctx)
{
    const PhysicalParams params = parse_params(config);
    const TransportSpec spec = parse_spec(config);
    const NumericsConfig numerics = parse_numerics(config);
    const Trajectory traj = parse_trajectory(config, spec, params);
    const PotentialModel pot = parse_potential(config, traj);

    const json& protocol = require(config, "protocol", "config");
    const json options = protocol.value("options", json::object());
    PropagateOptions opts;
    opts.target_n = static_cast<int>(integer_or(options, "target_n", 0, "protocol.options"));
    opts.n_max = static_cast<int>(integer_or(options, "n_max", 16, "protocol.options"));
    opts.sample_count = static_cast<std::size_t>(
        integer_or(options, "sample_count", 65, "protocol.options"));

    const SpatialGrid grid = make_grid(traj, numerics);
    WaveFunction psi0;
    if (std::holds_alternative<CompensatedTrap>(pot)) {
        psi0 = ground_state(std::get<CompensatedTrap>(pot).profile.u, grid, params).psi;
    } else {
        psi0 = mode_wavefunction(TransportMode{opts.target_n, traj}, 0.0, grid);
    }

    const SimulationResult result = propagate(psi0, pot, spec.duration, numerics, opts);

    const auto outputs = parse_outputs(config, ctx, "config");
    if (const OutputTarget* target = find_output(outputs, "result"))
        write_json(target->path, result_to_json(result));
    if (const OutputTarget* target = find_output(outputs, "time_series")) {
        auto out = open_output(target->path);
        write_metadata(out, ctx, "simulate");
        out << "t,q_mean,p_mean,E,I_mean,fidelity\n";
        for (std::size_t i = 0; i < result.series.t.size(); ++i)
            out << fmt_num(result.series.t[i]) << "," << fmt_num(result.series.q_mean[i]) << ","
                << fmt_num(result.series.p_mean[i]) << "," << fmt_num(result.series.energy[i])
                << "," << fmt_num(result.series.invariant[i]) << ","
                << fmt_num(result.series.fidelity[i]) << "\n";
    }
    if (!find_output(outputs, "result") && !find_output(outputs, "time_series"))
        fail("outputs", "simulate needs 'result' or 'time_series'");
}

void run_perturb(const json& config, const RunContext& ctx)
{
    const PhysicalParams params = parse_params(config);
    if (params.gravity != 0.0) fail("params.gravity", "perturbation analysis assumes g = 0");
    const double distance = require_number(config, "distance", "config");

    const json& beam_node = require(config, "beam", "config");
    BeamParams beam;
    if (beam_node.contains("x_r"))
        beam = BeamParams::from_frequency(params, require_number(beam_node, "x_r", "beam"));
    else if (beam_node.contains("x_r_over_sigma0"))
        beam = BeamParams::from_frequency(
            params, require_number(beam_node, "x_r_over_sigma0", "beam") * params.sigma0());
    else
        fail("beam", "need x_r or x_r_over_sigma0");
    beam.v0 = number_or(beam_node, "v0", beam.v0, "beam");

    const auto outputs = parse_outputs(config, ctx, "config");

    if (config.contains("sweep")) {
        const json& sweep = config["sweep"];
        std::vector<int> n_values, big_n_values;
        for (const auto& v : require(sweep, "N_values", "sweep")) big_n_values.push_back(v.get<int>());
        for (const auto& v : require(sweep, "n_values", "sweep")) n_values.push_back(v.get<int>());
        const OutputTarget* target = find_output(outputs, "sweep_table");
        if (!target) fail("outputs", "perturb sweep needs observable 'sweep_table'");

        auto out = open_output(target->path);
        write_metadata(out, ctx, "perturb");
        out << "N,n,F_bb,F_inv,F_numeric_bb,F_numeric_inv\n";
        for (int big_n : big_n_values) {
            const double tf = 4.0 * std::numbers::pi * big_n / params.omega0;
            const TransportSpec spec{distance, tf, 0.0, 0.0};
            const Trajectory bb = bang_bang_trajectory(spec, params);
            const Trajectory inv = inverse_polynomial_trajectory(spec, params);
            for (int n : n_values) {
                out << big_n << "," << n << ","
                    << fmt_num(f_bang_bang(big_n, n, params, distance, beam)) << ","
                    << fmt_num(f_inverse_discrete(big_n, n, params, distance, beam)) << ","
                    << fmt_num(f_numeric(bb, n, beam)) << "," << fmt_num(f_numeric(inv, n, beam))
                    << "\n";
            }
        }
        return;
    }

    const int n = static_cast<int>(integer_or(config, "n", 0, "config"));
    std::string kind = "inverse";
    if (auto it = config.find("protocol"); it != config.end()) {
        if (it->is_string())
            kind = it->get<std::string>();
        else if (it->is_object())
            kind = require(*it, "kind", "protocol").get<std::string>();
        else
            fail("protocol", "expected a string or an object with 'kind'");
    }
    double f_closed, f_num;
    if (kind == "bang_bang") {
        const int big_n = static_cast<int>(integer_or(config, "N", 1, "config"));
        const double tf = 4.0 * std::numbers::pi * big_n / params.omega0;
        f_closed = f_bang_bang(big_n, n, params, distance, beam);
        f_num = f_numeric(bang_bang_trajectory({distance, tf, 0.0, 0.0}, params), n, beam);
    } else if (kind == "inverse") {
        double tf;
        if (config.contains("t_f"))
            tf = require_number(config, "t_f", "config");
        else
            tf = 4.0 * std::numbers::pi *
                 static_cast<double>(integer_or(config, "N", 1, "config")) / params.omega0;
        f_closed = f_inverse(tf, n, params, distance, beam);
        f_num = f_numeric(inverse_polynomial_trajectory({distance, tf, 0.0, 0.0}, params), n, beam);
    } else {
        fail("protocol", "expected 'bang_bang' or 'inverse'");
    }

    const OutputTarget* target = find_output(outputs, "report");
    if (!target) fail("outputs", "perturb needs an output with observable 'report'");
    write_json(target->path, perturbation_to_json(make_perturbation_report(f_closed, f_num, params)));
}

void run_sweep(const json& config, const RunContext& ctx)
{
    const std::string kind = require(config, "kind", "config").get<std::string>();
    if (kind == "stopping_region") {
        run_scan(config, ctx);
        return;
    }
    if (kind != "energy_scaling") fail("kind", "expected 'stopping_region' or 'energy_scaling'");

    const PhysicalParams params = parse_params(config);
    const double distance = require_number(config, "distance", "config");
    const int n = static_cast<int>(integer_or(config, "n", 0, "config"));

    const json& tf_node = require(config, "tf_over_T0", "config");
    const double tf_min = require_number(tf_node, "min", "tf_over_T0");
    const double tf_max = require_number(tf_node, "max", "tf_over_T0");
    const auto count = static_cast<std::size_t>(integer_or(tf_node, "count", 25, "tf_over_T0"));
    const bool log_spaced = tf_node.value("log", true);
    if (count < 1) fail("tf_over_T0.count", "must be >= 1");
    if (!(tf_min > 0.0) || !(tf_max < 1e12)) fail("tf_over_T0", "bad range");

    std::vector<double> tf_values(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double frac =
            count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        tf_values[i] = log_spaced ? tf_min * std::pow(tf_max / tf_min, frac)
                                  : tf_min + (tf_max - tf_min) * frac;
        tf_values[i] *= params.period();
    }

    struct Row {
        double tf, ep_avg, ep_bound, dh_avg, aa_bound;
    };
    std::vector<Row> rows(count);
    parallel_for(count, ctx.threads, [&](std::size_t i) {
        const TransportSpec spec{distance, tf_values[i], 0.0, 0.0};
        const Trajectory traj = inverse_polynomial_trajectory(spec, params);
        const EnergyReport energy = energy_report(TransportMode{n, traj}, 257);
        const BoundsReport bounds = bounds_report(spec, params, n);
        rows[i] = {tf_values[i], energy.ep_avg, bounds.euler_lagrange_ep, energy.spread_avg,
                   bounds.aa_avg_spread};
    });

    const auto outputs = parse_outputs(config, ctx, "config");
    const OutputTarget* target = find_output(outputs, "energy_scaling");
    if (!target) fail("outputs", "sweep needs an output with observable 'energy_scaling'");
    auto out = open_output(target->path);
    write_metadata(out, ctx, "sweep");
    out << "tf,EP_avg,EP_bound,dH_avg,AA_bound\n";
    for (const auto& row : rows)
        out << fmt_num(row.tf) << "," << fmt_num(row.ep_avg) << "," << fmt_num(row.ep_bound)
            << "," << fmt_num(row.dh_avg) << "," << fmt_num(row.aa_bound) << "\n";
}

}  // namespace qtrans::app
