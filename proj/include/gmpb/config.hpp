#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "gmpb/errors.hpp"

namespace gmpb {

/// Closed interval [min, max].
struct Range {
    double min = 0.0;
    double max = 0.0;

    bool contains(double v) const noexcept { return v >= min && v <= max; }
    double width() const noexcept { return max - min; }
    bool operator==(const Range&) const = default;
};

/// Scenario parameters. Defaults are the standard GMPB settings
/// (d = 10, m = 10, shift severity 1, change frequency 5000, 100 environments).
struct ScenarioConfig {
    int dimension = 10;
    int num_components = 10;

    double shift_severity = 1.0;
    double height_severity = 7.0;
    double width_severity = 1.0;
    double angle_severity = std::numbers::pi / 9.0;
    double tau_severity = 0.2;
    double eta_severity = 2.0;

    Range bounds{-100.0, 100.0};
    Range height{30.0, 70.0};
    Range width{1.0, 12.0};
    Range angle{-std::numbers::pi, std::numbers::pi};
    Range tau{-1.0, 1.0};
    Range eta{-20.0, 20.0};

    long change_frequency = 5000;
    int num_environments = 100;
    bool rotation_enabled = true;
    std::uint64_t seed = 1;

    long total_evaluations() const noexcept {
        return change_frequency * static_cast<long>(num_environments);
    }

    bool operator==(const ScenarioConfig&) const = default;
};

/// Every violated constraint, named by field. Empty when the config is valid.
inline std::vector<std::string> violations(const ScenarioConfig& c) {
    std::vector<std::string> out;
    if (c.dimension < 1) out.emplace_back("dimension must be >= 1");
    if (c.num_components < 1) out.emplace_back("num_components must be >= 1");
    if (c.change_frequency < 1) out.emplace_back("change_frequency must be >= 1");
    if (c.num_environments < 1) out.emplace_back("num_environments must be >= 1");

    const auto severity = [&](double v, const char* name) {
        if (!(v >= 0.0)) out.push_back(std::string(name) + " must be nonnegative");
    };
    severity(c.shift_severity, "shift_severity");
    severity(c.height_severity, "height_severity");
    severity(c.width_severity, "width_severity");
    severity(c.angle_severity, "angle_severity");
    severity(c.tau_severity, "tau_severity");
    severity(c.eta_severity, "eta_severity");

    if (!(c.bounds.min < c.bounds.max))
        out.emplace_back("lower_bound must be < upper_bound");
    const auto ordered = [&](const Range& r, const char* name) {
        if (!(r.min <= r.max)) out.push_back(std::string(name) + " range minimum exceeds maximum");
    };
    ordered(c.height, "height");
    ordered(c.width, "width");
    ordered(c.angle, "angle");
    ordered(c.tau, "tau");
    ordered(c.eta, "eta");
    if (!(c.width.min > 0.0)) out.emplace_back("width range must be positive");
    return out;
}

inline void validate(const ScenarioConfig& c) {
    if (auto v = violations(c); !v.empty()) throw ConfigError(std::move(v));
}

}  // namespace gmpb
