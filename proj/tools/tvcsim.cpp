// Command-line front end: scenario runs, motor catalog sweeps and linear
// model export.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 validation error,
// 3 simulation abort.

#include "tvc/catalog.hpp"
#include "tvc/config_io.hpp"
#include "tvc/report_io.hpp"
#include "tvc/simulator.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace tvc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitAbort = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string config;
    std::optional<std::string> model;
    std::optional<double> dt;
    bool quiet = false;
};

ScenarioConfig load_with_overrides(const Common& c) {
    if (!std::ifstream(c.config)) throw IoError("cannot open '" + c.config + "'");
    ScenarioConfig cfg = load_config(c.config);
    if (c.model) cfg.model = plant_model_from_string(*c.model);
    if (c.dt) cfg.dt = *c.dt;
    return cfg;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
}

int cmd_run(const Common& c, const fs::path& out_dir) {
    const ValidatedScenario v = validate_scenario(load_with_overrides(c));
    const ClosedLoopSystem sys(v);
    const Trajectory traj = run_scenario(v);
    const MetricsReport m = compute_metrics(traj, sys.linear_model(), v.K);

    ensure_dir(out_dir);
    {
        auto out = open_out(out_dir / "trajectory.csv");
        write_trajectory_csv(out, traj);
    }
    {
        auto out = open_out(out_dir / "metrics.json");
        out << metrics_json(m);
    }
    if (!c.quiet) print_metrics_table(std::cout, m);
    if (traj.aborted) {
        std::cerr << "simulation aborted: " << traj.abort_reason << "\n"
                  << "  samples kept: " << traj.samples.size() << "\n";
        return kExitAbort;
    }
    return kExitOk;
}

int cmd_sweep(const Common& c, const fs::path& out_dir, const std::optional<std::string>& catalog,
              bool serial) {
    const ScenarioConfig base = load_with_overrides(c);
    (void)validate_scenario(base);
    std::vector<CatalogEntry> rows = motor_catalog();
    if (catalog) {
        std::ifstream in(*catalog);
        if (!in) throw IoError("cannot open '" + *catalog + "'");
        rows = read_catalog_csv(in);
    }
    const auto results = sweep_motors(base, rows, !serial);
    ensure_dir(out_dir);
    auto out = open_out(out_dir / "sweep.csv");
    write_sweep_csv(out, results);
    if (!c.quiet) {
        for (const auto& r : results) {
            std::cout << (r.feasible ? "feasible    " : "infeasible  ") << r.name;
            if (r.metrics)
                std::cout << "  (V " << r.v_margin << ", omega " << r.omega_margin << ", tau "
                          << r.tau_margin << ")";
            std::cout << "\n";
        }
    }
    return kExitOk;
}

int cmd_export_linear(const Common& c, const fs::path& out_path) {
    const ValidatedScenario v = validate_scenario(load_with_overrides(c));
    const LinearModel model = build_state_space(v.config.spacecraft, v.motor);
    const StabilityReport r = stability_report(model, v.K);
    if (out_path.has_parent_path()) ensure_dir(out_path.parent_path());
    auto out = open_out(out_path);
    write_linear_model_csv(out, model, r);
    return kExitOk;
}

int cmd_catalog(const fs::path& out_path) {
    if (out_path.has_parent_path()) ensure_dir(out_path.parent_path());
    auto out = open_out(out_path);
    write_catalog_csv(out, motor_catalog());
    return kExitOk;
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config, "Scenario config file")->required();
    sub->add_option("--model", c.model, "Plant model override")
        ->check(CLI::IsMember({"linear", "nonlinear"}));
    sub->add_option("--dt", c.dt, "Integration step override (s)");
    sub->add_flag("--quiet", c.quiet, "Suppress the summary on standard output");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gimbaled-thruster spin-stabilized spacecraft simulator"};
    app.require_subcommand(1);

    Common common;
    std::string out;
    std::optional<std::string> catalog;
    bool serial = false;

    auto* run = app.add_subcommand("run", "Simulate one scenario; writes trajectory.csv and metrics.json");
    add_common(run, common);
    run->add_option("--out", out, "Output directory")->required();

    auto* sweep = app.add_subcommand("sweep-motors", "Run the scenario once per catalog motor; writes sweep.csv");
    add_common(sweep, common);
    sweep->add_option("--out", out, "Output directory")->required();
    sweep->add_option("--catalog", catalog, "Catalog CSV replacing the built-in motor list");
    sweep->add_flag("--serial", serial, "Run motors one after another");

    auto* lin = app.add_subcommand("export-linear", "Write A, B, eigenvalues and derived inertias as CSV");
    add_common(lin, common);
    lin->add_option("--out", out, "Output CSV file")->required();

    auto* cat = app.add_subcommand("catalog", "Write the built-in motor catalog as CSV");
    cat->add_option("--out", out, "Output CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) return cmd_run(common, out);
        if (*sweep) return cmd_sweep(common, out, catalog, serial);
        if (*lin) return cmd_export_linear(common, out);
        if (*cat) return cmd_catalog(out);
    } catch (const ValidationError& e) {
        std::cerr << "invalid configuration:\n";
        for (const auto& i : e.issues()) std::cerr << "  " << i.path << ": " << i.message << "\n";
        return kExitValidation;
    } catch (const ModelDegeneracyError& e) {
        std::cerr << "invalid configuration:\n  " << e.constant() << ": " << e.what() << "\n";
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAbort;
    }
    return kExitUsage;
}
