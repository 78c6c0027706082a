#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gmpb/config.hpp"
#include "gmpb/dynamics.hpp"
#include "gmpb/errors.hpp"
#include "gmpb/landscape.hpp"
#include "gmpb/rng.hpp"

namespace gmpb {

/// Error stream of one run.
///
/// Each recorded evaluation contributes the error of the best value found so
/// far in the current environment. The best resets when an environment ends.
class EvaluationLedger {
public:
    EvaluationLedger(long change_frequency, int num_environments)
        : change_frequency_(change_frequency), num_environments_(num_environments) {
        if (change_frequency < 1 || num_environments < 1)
            throw std::invalid_argument("ledger needs change_frequency >= 1 and num_environments >= 1");
        errors_.reserve(static_cast<std::size_t>(expected_size()));
    }

    /// Records one evaluation scored against the optimum of its environment.
    /// Returns true when this evaluation completed its environment.
    bool record(double value, double optimum_value) {
        if (complete()) throw std::logic_error("ledger already holds the full budget");
        best_value_ = std::max(best_value_, value);
        const double error = optimum_value - best_value_;
        errors_.push_back(error);
        sum_ += error;
        if (++in_environment_ < change_frequency_) return false;

        environment_best_values_.push_back(best_value_);
        environment_best_errors_.push_back(error);
        in_environment_ = 0;
        best_value_ = -std::numeric_limits<double>::infinity();
        return true;
    }

    long change_frequency() const noexcept { return change_frequency_; }
    int num_environments() const noexcept { return num_environments_; }
    long expected_size() const noexcept { return change_frequency_ * num_environments_; }
    long size() const noexcept { return static_cast<long>(errors_.size()); }
    bool complete() const noexcept { return size() == expected_size(); }
    long evaluations_in_environment() const noexcept { return in_environment_; }

    const std::vector<double>& errors() const noexcept { return errors_; }
    const std::vector<double>& environment_best_values() const noexcept { return environment_best_values_; }
    const std::vector<double>& environment_best_errors() const noexcept { return environment_best_errors_; }

    /// Mean of the errors recorded so far.
    double partial_offline_error() const noexcept {
        return errors_.empty() ? 0.0 : sum_ / static_cast<double>(errors_.size());
    }

    /// Mean of the last error of every started environment, including the one in progress.
    double partial_best_before_change_error() const noexcept {
        double sum = std::accumulate(environment_best_errors_.begin(), environment_best_errors_.end(), 0.0);
        std::size_t n = environment_best_errors_.size();
        if (in_environment_ > 0) {
            sum += errors_.back();
            ++n;
        }
        return n == 0 ? 0.0 : sum / static_cast<double>(n);
    }

private:
    long change_frequency_;
    int num_environments_;
    std::vector<double> errors_;
    std::vector<double> environment_best_values_;
    std::vector<double> environment_best_errors_;
    double sum_ = 0.0;
    double best_value_ = -std::numeric_limits<double>::infinity();
    long in_environment_ = 0;
};

/// Mean error of the best-so-far solution over all evaluations.
inline double offline_error(const EvaluationLedger& ledger) {
    if (!ledger.complete())
        throw PartialRunError(ledger.partial_offline_error(), static_cast<std::size_t>(ledger.size()),
                              static_cast<std::size_t>(ledger.expected_size()));
    return ledger.partial_offline_error();
}

/// Mean over environments of the best error reached just before each change.
inline double best_before_change_error(const EvaluationLedger& ledger) {
    if (!ledger.complete())
        throw PartialRunError(ledger.partial_best_before_change_error(), static_cast<std::size_t>(ledger.size()),
                              static_cast<std::size_t>(ledger.expected_size()));
    return ledger.partial_best_before_change_error();
}

inline Indicators indicators(const EvaluationLedger& ledger) {
    return {offline_error(ledger), best_before_change_error(ledger)};
}

/// What a solver may see of a problem: evaluation, bounds, dimension and
/// remaining budget. No optimum, no change notification.
template <typename P>
concept BlackBoxProblem = requires(P& p, const P& cp, const Vector& x) {
    { p.evaluate(x) } -> std::convertible_to<double>;
    { cp.dimension() } -> std::convertible_to<int>;
    { cp.bounds() } -> std::convertible_to<Range>;
    { cp.budget_remaining() } -> std::convertible_to<long>;
};

/// One (value, optimum) pair per evaluation, for independent audits.
struct EvaluationRecord {
    double value = 0.0;
    double optimum_value = 0.0;
    int environment_index = 0;
};

/// A single run: landscape, its random stream and the error ledger.
///
/// Environments change after every change_frequency evaluations. The
/// evaluation that completes an environment is scored in that environment.
class BenchmarkSession {
public:
    explicit BenchmarkSession(const ScenarioConfig& cfg, bool keep_audit_trail = false)
        : cfg_((validate(cfg), cfg)),
          rng_(cfg.seed),
          landscape_(init_landscape(cfg_, rng_)),
          ledger_(cfg.change_frequency, cfg.num_environments),
          keep_audit_trail_(keep_audit_trail) {}

    double evaluate(const Vector& x) {
        if (ledger_.complete()) throw ScenarioComplete(gmpb::indicators(ledger_));
        const double value = evaluate_raw(x, landscape_);
        if (keep_audit_trail_) audit_.push_back({value, landscape_.optimum_value, landscape_.environment_index});
        const bool environment_done = ledger_.record(value, landscape_.optimum_value);
        if (environment_done && landscape_.environment_index < cfg_.num_environments - 1) {
            advance_environment(landscape_, cfg_, rng_);
            transitions_.push_back(ledger_.size());
        }
        return value;
    }

    int dimension() const noexcept { return cfg_.dimension; }
    Range bounds() const noexcept { return cfg_.bounds; }
    long budget_remaining() const noexcept { return ledger_.expected_size() - ledger_.size(); }
    long evaluations_used() const noexcept { return ledger_.size(); }
    bool finished() const noexcept { return ledger_.complete(); }

    // Observers below are for the harness and tests, not for solvers.
    const ScenarioConfig& config() const noexcept { return cfg_; }
    const Landscape& landscape() const noexcept { return landscape_; }
    const EvaluationLedger& ledger() const noexcept { return ledger_; }
    const std::vector<long>& transitions() const noexcept { return transitions_; }
    const std::vector<EvaluationRecord>& audit_trail() const noexcept { return audit_; }
    Indicators indicators() const { return gmpb::indicators(ledger_); }

private:
    ScenarioConfig cfg_;
    RngStream rng_;
    Landscape landscape_;
    EvaluationLedger ledger_;
    bool keep_audit_trail_;
    std::vector<long> transitions_;
    std::vector<EvaluationRecord> audit_;
};

static_assert(BlackBoxProblem<BenchmarkSession>);

}  // namespace gmpb
