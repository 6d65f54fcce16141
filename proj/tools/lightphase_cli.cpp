// Command-line front end: runs a scenario config (or a named preset) through
// the evolution/phase/anomaly pipeline and writes deterministic CSV/JSON.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lightphase/lightphase.hpp"
#include "lightphase/presets.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_regime = 3;
constexpr int exit_io = 4;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw lightphase::IoError("cannot read config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_summary(const lightphase::RunReport& report, std::ostream& out) {
    const auto& doc = report.document;
    out << "scenario '" << report.config.name << "' (version "
        << lightphase::software_version << ")\n";
    out << "  epsilon = chi_dot T = " << doc["epsilon"]["value"].get<double>() << "\n";
    if (doc.contains("phases")) {
        const auto& p = doc["phases"];
        out << "  delta_phi          = " << p["delta_phi_rad"].get<double>() << " rad\n";
        out << "  gamma (numeric)    = " << p["gamma_numeric_rad"]["value"].get<double>()
            << " rad\n";
        out << "  gamma (analytic)   = " << p["gamma_analytic_rad"].get<double>() << " rad\n";
        out << "  transport residual = "
            << p["parallel_transport_residual"]["value"].get<double>() << "\n";
    }
    if (doc.contains("anomaly")) {
        const auto& a = doc["anomaly"];
        out << "  omega_dot/omega    = "
            << a["omega_dot_over_omega_per_s"]["exact"].get<double>() << " 1/s\n";
        out << "  c * a_t            = "
            << a["pioneer"]["predicted_acceleration_m_s2"].get<double>() << " m/s^2\n";
    }
    if (doc.contains("appendix")) {
        out << "  dynamic Doppler    = "
            << doc["appendix"]["anomalous_fraction"].get<double>() << " (red shift)\n";
    }
    if (doc.contains("sweep")) {
        out << "  theta spread       = "
            << doc["sweep"]["max_relative_spread"]["value"].get<double>() << " (relative)\n";
    }
    out << "  wall time          = " << report.wall_time_seconds << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric-phase scenario runner"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "run a scenario config");
    std::string config_file;
    std::string preset;
    std::string out_dir = ".";
    long steps_override = 0;
    bool quiet = false;
    run_cmd->add_option("config-file", config_file, "scenario config file");
    run_cmd->add_option("--preset", preset, "named preset (pioneer, static, octant-oracle, theta-sweep)");
    run_cmd->add_option("--out", out_dir, "output directory");
    run_cmd->add_option("--steps", steps_override, "override discretization steps");
    run_cmd->add_flag("--quiet", quiet, "suppress console summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (config_file.empty() && preset.empty()) {
            throw lightphase::ConfigError("either a config file or --preset is required");
        }
        std::string text;
        if (!preset.empty()) {
            text = lightphase::presets::text(preset);
        } else {
            text = read_file(config_file);
        }
        lightphase::ScenarioConfig cfg = lightphase::parse_config(text);
        if (steps_override > 0) cfg.steps = steps_override;
        if (const char* env = std::getenv("LIGHTPHASE_OUT")) out_dir = env;

        lightphase::RunReport report = lightphase::run(cfg);

        const std::filesystem::path dir(out_dir);
        lightphase::emit_report_json(report, dir / (cfg.name + "_report.json"));
        if (cfg.wants(lightphase::OutputKind::trajectory)) {
            const auto traj = lightphase::evolve(cfg.scenario(), cfg.model());
            lightphase::emit_trajectory_csv(traj, dir / (cfg.name + "_trajectory.csv"));
        }
        if (!quiet) print_summary(report, std::cout);
        return exit_ok;
    } catch (const lightphase::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::out_of_range& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const lightphase::RegimeError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return exit_regime;
    } catch (const std::domain_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return exit_regime;
    } catch (const lightphase::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
