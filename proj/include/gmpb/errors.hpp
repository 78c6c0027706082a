#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gmpb {

/// Raised when a scenario or solver configuration violates one or more
/// constraints. Carries every violation, not just the first.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(std::vector<std::string> violations)
        : std::invalid_argument(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid configuration";
        for (const auto& s : v) out += "; " + s;
        return out;
    }

    std::vector<std::string> violations_;
};

/// Advancing the landscape past its last environment.
class ScenarioExhausted : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Offline error and best-before-change error of one run.
struct Indicators {
    double offline_error = 0.0;
    double best_before_change_error = 0.0;
};

/// Raised by a session when the evaluation budget is spent.
class ScenarioComplete : public std::runtime_error {
public:
    explicit ScenarioComplete(Indicators final_indicators)
        : std::runtime_error("evaluation budget exhausted"), indicators_(final_indicators) {}

    const Indicators& indicators() const noexcept { return indicators_; }

private:
    Indicators indicators_;
};

/// Indicator requested from a ledger that has not recorded the full budget.
class PartialRunError : public std::runtime_error {
public:
    PartialRunError(double partial_value, std::size_t recorded, std::size_t expected)
        : std::runtime_error("ledger incomplete: " + std::to_string(recorded) + " of " +
                             std::to_string(expected) + " evaluations recorded"),
          partial_value_(partial_value) {}

    /// The indicator computed over the evaluations recorded so far.
    double partial_value() const noexcept { return partial_value_; }

private:
    double partial_value_;
};

}  // namespace gmpb
