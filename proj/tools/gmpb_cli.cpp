// gmpb: run experiments, export 2-D grids, validate configuration files.
//
// Exit status: 0 success, 1 validation failure, 2 runtime failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "gmpb/config_io.hpp"
#include "gmpb/experiment.hpp"
#include "gmpb/grid.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kRuntimeFailure = 2;

gmpb::ConfigFile load_or_default(const std::string& path) {
    return path.empty() ? gmpb::parse_config(gmpb::json()) : gmpb::load_config(path);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

int cmd_validate(const std::string& path) {
    try {
        const auto cfg = gmpb::load_config(path);
        std::cout << gmpb::to_json(cfg).dump(2) << '\n';
        return kOk;
    } catch (const gmpb::ConfigError& e) {
        for (const auto& v : e.violations()) std::cerr << "violation: " << v << '\n';
        return kValidationFailure;
    }
}

int cmd_run(const std::string& config, std::optional<int> runs, std::optional<std::uint64_t> seed,
            const std::string& out_dir, const std::string& solver) {
    const auto cfg = load_or_default(config);
    gmpb::ExperimentSpec spec;
    spec.scenario = cfg.scenario;
    spec.solver = gmpb::parse_solver_kind(solver);
    spec.solver_config = cfg.solver;
    if (runs) spec.run_count = *runs;
    spec.master_seed = seed.value_or(cfg.scenario.seed);

    const auto record = gmpb::run_experiment(spec);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    write_file(dir / "result.json", gmpb::to_json(record).dump(2) + "\n");
    std::ostringstream csv;
    gmpb::write_runs_csv(csv, record);
    write_file(dir / "runs.csv", csv.str());

    std::cout << "solver " << gmpb::to_string(spec.solver) << ", " << spec.run_count << " runs\n"
              << "offline error            " << record.offline_error.mean << " +- "
              << record.offline_error.standard_error << '\n'
              << "best-before-change error " << record.best_before_change_error.mean << " +- "
              << record.best_before_change_error.standard_error << '\n';
    return kOk;
}

int cmd_grid(const std::string& config, int env, int resolution, const std::string& out) {
    const auto cfg = load_or_default(config);
    const auto grid = gmpb::export_grid(cfg.scenario, env, resolution);
    std::ostringstream csv;
    gmpb::write_grid_csv(csv, grid);
    write_file(out, csv.str());
    write_file(out + ".meta.json", gmpb::grid_metadata(grid, cfg.scenario).dump(2) + "\n");
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized moving peaks benchmark"};
    app.require_subcommand(1);

    std::string config;
    auto* run = app.add_subcommand("run", "Run a multi-seed experiment");
    std::optional<int> runs;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "results";
    std::string solver = "mqso";
    run->add_option("--config", config, "Scenario configuration (JSON)");
    run->add_option("--runs", runs, "Number of independent runs (default 31)")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "Master seed (default: the config's seed)");
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();
    run->add_option("--solver", solver, "Solver")->check(CLI::IsMember({"mqso", "random"}))->capture_default_str();

    auto* grid = app.add_subcommand("grid", "Export a 2-D landscape on a uniform grid");
    int env = 0;
    int resolution = 201;
    std::string grid_out;
    grid->add_option("--config", config, "Scenario configuration (JSON)");
    grid->add_option("--env", env, "Environment index")->capture_default_str();
    grid->add_option("--resolution", resolution, "Samples per axis")->capture_default_str();
    grid->add_option("--out", grid_out, "CSV output file")->required();

    auto* validate = app.add_subcommand("validate", "Check a configuration file and echo the effective values");
    validate->add_option("--config", config, "Scenario configuration (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidationFailure;
    }

    try {
        if (*validate) return cmd_validate(config);
        if (*run) return cmd_run(config, runs, seed, out_dir, solver);
        if (*grid) return cmd_grid(config, env, resolution, grid_out);
    } catch (const gmpb::ConfigError& e) {
        for (const auto& v : e.violations()) std::cerr << "violation: " << v << '\n';
        return kValidationFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeFailure;
    }
    return kOk;
}
