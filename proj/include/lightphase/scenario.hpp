#pragma once

// Operational shell shared by the CLI and the tests: flat key-value scenario
// configs with explicit unit suffixes, the batch pipeline (evolve -> phases
// -> anomaly -> appendix -> sweep), and deterministic CSV/JSON emission.

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lightphase/anomaly.hpp"
#include "lightphase/doppler.hpp"
#include "lightphase/evolution.hpp"
#include "lightphase/geometric_phase.hpp"

namespace lightphase {

inline constexpr const char* software_version = "1.0.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutputKind { trajectory, phases, anomaly, appendix, sweep };

struct ScenarioConfig {
    std::string name;
    ScaleFactorKind chi_kind = ScaleFactorKind::linear;
    double chi_rate = 0.0;   // 1/s
    double R = 0.0;          // m (AU accepted in config files)
    double omega = 0.0;      // rad/s
    double T = 0.0;          // s; `T = auto` in a config means 2 R / c
    double theta = 0.0;      // rad
    long steps = 100000;
    double v_probe = 12000.0;  // m/s, appendix probe velocity
    int oracle_samples = 0;    // >0: run the octant Pancharatnam oracle
    int sweep_points = 9;      // theta grid size for the independence sweep
    std::vector<OutputKind> outputs{OutputKind::phases, OutputKind::anomaly};

    RoundTripScenario scenario() const { return {R, omega, T, theta, steps}; }
    ScaleFactorModel model() const { return {chi_kind, chi_rate}; }
    bool wants(OutputKind k) const {
        for (auto o : outputs)
            if (o == k) return true;
        return false;
    }
};

namespace config_detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::string unquote(std::string v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
        v = v.substr(1, v.size() - 2);
    }
    return v;
}

// "<number> [unit]" with an allowed unit set; a bare number means base_unit.
inline double parse_quantity(const std::string& key, const std::string& raw,
                             const std::map<std::string, double>& unit_factors) {
    std::istringstream in(unquote(raw));
    double value = 0.0;
    if (!(in >> value)) {
        throw ConfigError(key + ": expected a number, got '" + raw + "'");
    }
    std::string unit;
    in >> unit;
    if (unit.empty()) return value;
    auto it = unit_factors.find(unit);
    if (it == unit_factors.end()) {
        throw ConfigError(key + ": unknown unit '" + unit + "'");
    }
    return value * it->second;
}

inline double parse_double(const std::string& key, const std::string& raw) {
    std::istringstream in(unquote(raw));
    double value = 0.0;
    std::string rest;
    if (!(in >> value) || (in >> rest)) {
        throw ConfigError(key + ": expected a number, got '" + raw + "'");
    }
    return value;
}

}  // namespace config_detail

inline const char* to_string(OutputKind k) {
    switch (k) {
        case OutputKind::trajectory: return "trajectory";
        case OutputKind::phases: return "phases";
        case OutputKind::anomaly: return "anomaly";
        case OutputKind::appendix: return "appendix";
        case OutputKind::sweep: return "sweep";
    }
    return "?";
}

inline ScenarioConfig parse_config(const std::string& text) {
    using namespace config_detail;
    ScenarioConfig cfg;
    bool auto_T = false;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "name") {
            cfg.name = unquote(value);
        } else if (key == "chi_kind") {
            const std::string v = unquote(value);
            if (v == "linear") cfg.chi_kind = ScaleFactorKind::linear;
            else if (v == "exponential") cfg.chi_kind = ScaleFactorKind::exponential;
            else throw ConfigError("chi_kind: must be 'linear' or 'exponential', got '" + v + "'");
        } else if (key == "chi_rate") {
            cfg.chi_rate = parse_double(key, value);
        } else if (key == "R") {
            cfg.R = parse_quantity(key, value, {{"m", 1.0}, {"AU", astronomical_unit}});
        } else if (key == "omega") {
            cfg.omega = parse_double(key, value);
        } else if (key == "T") {
            if (unquote(value) == "auto") auto_T = true;
            else cfg.T = parse_quantity(key, value, {{"s", 1.0}});
        } else if (key == "theta") {
            cfg.theta = parse_double(key, value);
        } else if (key == "steps") {
            cfg.steps = static_cast<long>(parse_double(key, value));
        } else if (key == "v_probe") {
            cfg.v_probe = parse_quantity(key, value, {{"m/s", 1.0}, {"km/s", 1000.0}});
        } else if (key == "oracle_samples") {
            cfg.oracle_samples = static_cast<int>(parse_double(key, value));
        } else if (key == "sweep_points") {
            cfg.sweep_points = static_cast<int>(parse_double(key, value));
        } else if (key == "outputs") {
            cfg.outputs.clear();
            std::istringstream list(unquote(value));
            std::string item;
            while (std::getline(list, item, ',')) {
                item = trim(item);
                if (item == "trajectory") cfg.outputs.push_back(OutputKind::trajectory);
                else if (item == "phases") cfg.outputs.push_back(OutputKind::phases);
                else if (item == "anomaly") cfg.outputs.push_back(OutputKind::anomaly);
                else if (item == "appendix") cfg.outputs.push_back(OutputKind::appendix);
                else if (item == "sweep") cfg.outputs.push_back(OutputKind::sweep);
                else throw ConfigError("outputs: unknown output kind '" + item + "'");
            }
        } else {
            throw ConfigError("unknown key '" + key + "' (line " + std::to_string(line_no) + ")");
        }
    }
    if (auto_T) cfg.T = 2.0 * cfg.R / speed_of_light;
    return cfg;
}

// Fail-fast, field-level validation before any run starts.
inline void validate(const ScenarioConfig& cfg) {
    if (cfg.name.empty()) throw ConfigError("name: must not be empty");
    if (cfg.R < 0.0) throw ConfigError("R: must be nonnegative");
    if (cfg.omega < 0.0) throw ConfigError("omega: must be nonnegative");
    if (cfg.T < 0.0) throw ConfigError("T: must be nonnegative");
    if (cfg.theta < 0.0 || cfg.theta > std::numbers::pi) {
        throw ConfigError("theta: must be in [0, pi]");
    }
    if (cfg.steps < 2) throw ConfigError("steps: must be >= 2");
    if (cfg.sweep_points < 2) throw ConfigError("sweep_points: must be >= 2");
    if (cfg.oracle_samples < 0) throw ConfigError("oracle_samples: must be >= 0");
    if (cfg.v_probe < 0.0) throw ConfigError("v_probe: must be nonnegative");
    if (cfg.outputs.empty()) throw ConfigError("outputs: at least one output required");
    const double epsilon = std::abs(cfg.chi_rate * cfg.T);
    if (epsilon > default_tolerances.adiabatic_hard) {
        throw RegimeError("adiabaticity parameter epsilon = chi_dot T = " +
                          std::to_string(epsilon) + " exceeds the hard bound " +
                          std::to_string(default_tolerances.adiabatic_hard));
    }
}

// FNV-1a 64-bit over the canonical config echo; platform-independent.
inline std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Round-trips double precision exactly (17 significant digits).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct RunReport {
    ScenarioConfig config;
    nlohmann::ordered_json document;  // everything emitted to the JSON file
    double wall_time_seconds = 0.0;   // console-only, kept out of the file
};

inline nlohmann::ordered_json config_echo(const ScenarioConfig& cfg) {
    nlohmann::ordered_json j;
    j["name"] = cfg.name;
    j["chi_kind"] = cfg.chi_kind == ScaleFactorKind::linear ? "linear" : "exponential";
    j["chi_rate_per_s"] = cfg.chi_rate;
    j["R_m"] = cfg.R;
    j["omega_rad_s"] = cfg.omega;
    j["T_s"] = cfg.T;
    j["theta_rad"] = cfg.theta;
    j["steps"] = cfg.steps;
    j["v_probe_m_s"] = cfg.v_probe;
    j["oracle_samples"] = cfg.oracle_samples;
    j["sweep_points"] = cfg.sweep_points;
    std::string outs;
    for (auto o : cfg.outputs) {
        if (!outs.empty()) outs += ",";
        outs += to_string(o);
    }
    j["outputs"] = outs;
    return j;
}

namespace report_detail {

inline nlohmann::ordered_json bounded(double value, double bound) {
    return {{"value", value}, {"bound", bound}};
}

}  // namespace report_detail

inline RunReport run(const ScenarioConfig& cfg) {
    validate(cfg);
    const auto t_start = std::chrono::steady_clock::now();

    RunReport report;
    report.config = cfg;
    auto& doc = report.document;
    doc["name"] = cfg.name;
    doc["software_version"] = software_version;
    doc["config"] = config_echo(cfg);
    {
        char hash[19];
        std::snprintf(hash, sizeof(hash), "0x%016llx",
                      static_cast<unsigned long long>(fnv1a(doc["config"].dump())));
        doc["config_hash"] = hash;
    }

    const RoundTripScenario s = cfg.scenario();
    const ScaleFactorModel m = cfg.model();
    const double epsilon = m.chi_dot(0.0) * cfg.T;
    doc["epsilon"] = {{"value", epsilon},
                      {"warn_bound", default_tolerances.adiabatic_warn},
                      {"hard_bound", default_tolerances.adiabatic_hard}};

    EvolutionTrajectory traj;
    const bool needs_trajectory = cfg.wants(OutputKind::trajectory) ||
                                  cfg.wants(OutputKind::phases) ||
                                  cfg.wants(OutputKind::anomaly);
    if (needs_trajectory) {
        traj = evolve(s, m);
        report.document["adiabatic_warning"] = traj.adiabatic_warning;
    }

    if (cfg.wants(OutputKind::phases)) {
        using report_detail::bounded;
        const double delta_phi = traj.delta_phi();
        const double gamma_remainder = geometric_remainder(traj);
        const double gamma_integral = berry_phase_integral(section_path(traj));
        const double gamma_analytic = berry_phase_analytic(cfg.theta, delta_phi);
        nlohmann::ordered_json phases;
        phases["delta_phi_rad"] = delta_phi;
        phases["dynamic_phase_rad"] = dynamic_phase(traj);
        phases["gamma_numeric_rad"] =
            bounded(gamma_remainder, 1e-6 * std::max(1e-300, std::abs(0.5 * delta_phi)));
        phases["gamma_connection_integral_rad"] = gamma_integral;
        phases["gamma_analytic_rad"] = gamma_analytic;
        phases["residual_rad"] = std::abs(gamma_remainder - gamma_analytic);
        phases["parallel_transport_residual"] =
            bounded(parallel_transport_residual(traj), default_tolerances.transport_residual);
        phases["unitarity_drift"] = bounded(traj.max_norm_error, default_tolerances.unit_norm);
        const HelicityPhase hp = helicity_phase(+1, s, m);
        const HelicityPhase hm = helicity_phase(-1, s, m);
        phases["helicity_plus"] = {{"gamma_exact_rad", hp.gamma_exact},
                                   {"gamma_first_order_rad", hp.gamma_first_order},
                                   {"gap_rad", hp.gap}};
        phases["helicity_minus"] = {{"gamma_exact_rad", hm.gamma_exact},
                                    {"gamma_first_order_rad", hm.gamma_first_order},
                                    {"gap_rad", hm.gap}};
        if (cfg.oracle_samples > 0) {
            const double half_pi = 0.5 * std::numbers::pi;
            const std::vector<PoincarePoint> octant{
                {half_pi, 0.0, false}, {half_pi, half_pi, false}, {0.0, 0.0, true}};
            const GeometricPhaseResult oracle =
                pancharatnam_oracle(octant, cfg.oracle_samples);
            phases["octant_oracle"] = {
                {"samples_per_edge", cfg.oracle_samples},
                {"pancharatnam_phase_rad", bounded(oracle.gamma_numeric, 1e-8)},
                {"solid_angle_sr", oracle.solid_angle},
                {"expected_rad", oracle.gamma_analytic},
                {"residual_rad", oracle.residual}};
        }
        doc["phases"] = phases;
    }

    if (cfg.wants(OutputKind::anomaly)) {
        const AnomalyPrediction drift = helicity_drift(s, m);
        const AnomalyPrediction ab = solve_ab_system(cfg.theta, m.chi_dot(0.0), cfg.T);
        const PioneerComparison pc = pioneer_comparison(m);
        nlohmann::ordered_json anomaly;
        anomaly["omega_dot_over_omega_per_s"] = {
            {"first_order", drift.first_order},
            {"exact", ab.omega_dot_over_omega},
            {"second_order_bound", ab.second_order_bound}};
        anomaly["theta_degenerate"] = ab.degenerate_theta;
        anomaly["ab_residual"] = report_detail::bounded(
            ab.residual, 1e-25 * std::max(1e-300, std::abs(m.chi_dot(0.0))));
        anomaly["pioneer"] = {
            {"predicted_a_t_per_s", pc.predicted_a_t},
            {"predicted_acceleration_m_s2", pc.predicted_acceleration},
            {"reference_a_t_per_s", {{"value", pc.reference.a_t}, {"sigma", pc.reference.a_t_sigma}}},
            {"reference_a_p_m_s2", {{"value", pc.reference.a_p}, {"sigma", pc.reference.a_p_sigma}}},
            {"z_score_a_t", pc.z_score_a_t},
            {"z_score_a_p", pc.z_score_a_p}};
        doc["anomaly"] = anomaly;
    }

    if (cfg.wants(OutputKind::appendix)) {
        const ProbeState probe{cfg.R, cfg.v_probe, cfg.chi_rate};
        const DopplerShift shift = dynamic_doppler_shift(probe, cfg.omega);
        const double beta = cfg.v_probe / speed_of_light;
        const double geometric_over_t = cfg.chi_rate * probe.light_time();
        nlohmann::ordered_json appendix;
        appendix["r_star_m"] = probe.r_star;
        appendix["v_star_m_s"] = probe.v_star;
        appendix["h_per_s"] = probe.h;
        appendix["light_time_s"] = probe.light_time();
        appendix["radial_metric_vector"] = radial_metric_vector(probe);
        appendix["radial_velocity_correction_m_s"] = radial_velocity_correction(probe);
        appendix["corrected_radial_velocity_m_s"] = corrected_radial_velocity(probe);
        appendix["omega_prime_rad_s"] = shift.omega_prime;
        appendix["anomalous_fraction"] = shift.anomalous_fraction;
        appendix["geometric_fraction_same_t"] = geometric_over_t;
        appendix["dynamic_over_geometric"] =
            geometric_over_t != 0.0 ? std::abs(shift.anomalous_fraction / geometric_over_t)
                                    : 0.0;
        appendix["v_over_c_squared"] = beta * beta;
        doc["appendix"] = appendix;
    }

    if (cfg.wants(OutputKind::sweep)) {
        std::vector<double> thetas;
        for (int k = 0; k < cfg.sweep_points; ++k) {
            thetas.push_back(std::numbers::pi * k / (cfg.sweep_points - 1));
        }
        const ThetaSweepReport sweep = theta_independence_sweep(m.chi_dot(0.0), cfg.T, thetas);
        nlohmann::ordered_json sj;
        sj["theta_grid_rad"] = sweep.thetas;
        sj["max_relative_spread"] = report_detail::bounded(sweep.max_relative_spread, 1e-15);
        sj["max_ab_residual"] = report_detail::bounded(
            sweep.max_residual, 1e-25 * std::max(1e-300, std::abs(m.chi_dot(0.0))));
        std::vector<double> values;
        for (const auto& p : sweep.predictions) values.push_back(p.omega_dot_over_omega);
        sj["omega_dot_over_omega_per_s"] = values;
        doc["sweep"] = sj;
    }

    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

namespace io_detail {

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out) throw IoError("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() + "'");
}

}  // namespace io_detail

inline void emit_trajectory_csv(const EvolutionTrajectory& traj,
                                const std::filesystem::path& path) {
    std::string out;
    out.reserve(traj.times.size() * 160 + 80);
    out += "t,chi,phi,re_psi_plus,im_psi_plus,re_psi_minus,im_psi_minus,norm_err\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const auto& s = traj.states[k];
        out += format_double(traj.times[k]);
        out += ',';
        out += format_double(traj.chis[k]);
        out += ',';
        out += format_double(traj.phis[k]);
        out += ',';
        out += format_double(s.psi_plus.real());
        out += ',';
        out += format_double(s.psi_plus.imag());
        out += ',';
        out += format_double(s.psi_minus.real());
        out += ',';
        out += format_double(s.psi_minus.imag());
        out += ',';
        out += format_double(s.norm_error());
        out += '\n';
    }
    io_detail::atomic_write(path, out);
}

inline void emit_report_json(const RunReport& report, const std::filesystem::path& path) {
    io_detail::atomic_write(path, report.document.dump(2) + "\n");
}

}  // namespace lightphase
