#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmpb/config.hpp"
#include "gmpb/config_io.hpp"
#include "gmpb/mqso.hpp"
#include "gmpb/protocol.hpp"
#include "gmpb/rng.hpp"
#include "gmpb/version.hpp"

namespace gmpb {

enum class SolverKind { mqso, random };

inline std::string to_string(SolverKind k) { return k == SolverKind::mqso ? "mqso" : "random"; }

inline SolverKind parse_solver_kind(const std::string& s) {
    if (s == "mqso") return SolverKind::mqso;
    if (s == "random") return SolverKind::random;
    throw ConfigError({"unknown solver \"" + s + "\" (expected mqso or random)"});
}

struct ExperimentSpec {
    ScenarioConfig scenario;
    SolverKind solver = SolverKind::mqso;
    SolverConfig solver_config = SolverConfig::for_scenario(ScenarioConfig{});
    int run_count = 31;
    std::uint64_t master_seed = 1;
    /// Keep every (value, optimum) pair of every run in memory.
    bool keep_audit_trail = false;
};

/// Landscape seed of run i: mix_seed(master_seed + i).
inline std::uint64_t run_seed(std::uint64_t master_seed, int run_index) {
    return mix_seed(master_seed + static_cast<std::uint64_t>(run_index));
}

/// Solver seed of a run, kept apart from the landscape stream so that every
/// solver faces the same sequence of environments.
inline std::uint64_t solver_seed(std::uint64_t landscape_seed) {
    return mix_seed(landscape_seed ^ 0xa0761d6478bd642fULL);
}

struct RunResult {
    int run = 0;
    std::uint64_t seed = 0;
    Indicators indicators;
    std::vector<double> environment_best_errors;
    std::vector<EvaluationRecord> audit_trail;
};

struct Aggregate {
    double mean = 0.0;
    double standard_error = 0.0;
};

inline Aggregate aggregate(const std::vector<double>& values) {
    Aggregate a;
    if (values.empty()) return a;
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    a.mean = sum / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - a.mean) * (v - a.mean);
        a.standard_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return a;
}

struct ResultRecord {
    ExperimentSpec spec;
    std::vector<RunResult> runs;
    Aggregate offline_error;
    Aggregate best_before_change_error;
};

/// Raised when one run of an experiment fails.
class RunFailure : public std::runtime_error {
public:
    RunFailure(int run, std::uint64_t seed, const std::string& what)
        : std::runtime_error("run " + std::to_string(run) + " (seed " + std::to_string(seed) + ") failed: " + what),
          run_(run), seed_(seed) {}
    int run() const noexcept { return run_; }
    std::uint64_t seed() const noexcept { return seed_; }

private:
    int run_;
    std::uint64_t seed_;
};

inline RunResult run_once(const ExperimentSpec& spec, int run_index) {
    ScenarioConfig cfg = spec.scenario;
    cfg.seed = run_seed(spec.master_seed, run_index);
    BenchmarkSession session(cfg, spec.keep_audit_trail);
    if (spec.solver == SolverKind::mqso) {
        Mqso<BenchmarkSession> solver(spec.solver_config, solver_seed(cfg.seed));
        solver.run(session);
    } else {
        RandomSearch<BenchmarkSession> solver(solver_seed(cfg.seed));
        solver.run(session);
    }
    RunResult r;
    r.run = run_index;
    r.seed = cfg.seed;
    r.indicators = session.indicators();
    r.environment_best_errors = session.ledger().environment_best_errors();
    r.audit_trail = session.audit_trail();
    return r;
}

/// Executes run_count independent sessions and aggregates their indicators.
inline ResultRecord run_experiment(const ExperimentSpec& spec) {
    std::vector<std::string> errors = violations(spec.scenario);
    if (spec.run_count < 1) errors.emplace_back("run_count must be >= 1");
    if (spec.solver == SolverKind::mqso)
        for (auto& v : violations(spec.solver_config)) errors.push_back(std::move(v));
    if (!errors.empty()) throw ConfigError(std::move(errors));

    ResultRecord record;
    record.spec = spec;
    std::vector<double> eo;
    std::vector<double> ebbc;
    for (int i = 0; i < spec.run_count; ++i) {
        try {
            record.runs.push_back(run_once(spec, i));
        } catch (const std::exception& e) {
            throw RunFailure(i, run_seed(spec.master_seed, i), e.what());
        }
        eo.push_back(record.runs.back().indicators.offline_error);
        ebbc.push_back(record.runs.back().indicators.best_before_change_error);
    }
    record.offline_error = aggregate(eo);
    record.best_before_change_error = aggregate(ebbc);
    return record;
}

inline json to_json(const ResultRecord& r) {
    json runs = json::array();
    for (const auto& run : r.runs) {
        runs.push_back({
            {"run", run.run},
            {"seed", run.seed},
            {"offline_error", run.indicators.offline_error},
            {"best_before_change_error", run.indicators.best_before_change_error},
            {"environment_best_errors", run.environment_best_errors},
        });
    }
    json doc = {
        {"version", kVersion},
        {"solver", to_string(r.spec.solver)},
        {"scenario", to_json(r.spec.scenario)},
        {"master_seed", r.spec.master_seed},
        {"run_count", r.spec.run_count},
        {"runs", runs},
        {"aggregate",
         {
             {"offline_error", {{"mean", r.offline_error.mean}, {"standard_error", r.offline_error.standard_error}}},
             {"best_before_change_error",
              {{"mean", r.best_before_change_error.mean},
               {"standard_error", r.best_before_change_error.standard_error}}},
         }},
    };
    if (r.spec.solver == SolverKind::mqso) doc["solver_config"] = to_json(r.spec.solver_config);
    return doc;
}

/// Shortest decimal form that reads back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// One line per run: run,seed,offline_error,best_before_change_error.
inline void write_runs_csv(std::ostream& out, const ResultRecord& r) {
    out << "run,seed,offline_error,best_before_change_error\n";
    for (const auto& run : r.runs)
        out << run.run << ',' << run.seed << ',' << format_double(run.indicators.offline_error) << ','
            << format_double(run.indicators.best_before_change_error) << '\n';
}

}  // namespace gmpb
