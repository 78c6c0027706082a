#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmpb/config.hpp"
#include "gmpb/errors.hpp"
#include "gmpb/mqso.hpp"

namespace gmpb {

using json = nlohmann::json;

/// Effective configuration of a config file: scenario plus solver settings.
/// Solver radii not given in the file are derived from the scenario.
struct ConfigFile {
    ScenarioConfig scenario;
    SolverConfig solver = SolverConfig::for_scenario(ScenarioConfig{});

    bool operator==(const ConfigFile&) const = default;
};

namespace detail {

template <typename T>
using FieldMap = std::map<std::string, std::function<void(T&, const json&)>>;

template <typename T, typename V>
std::function<void(T&, const json&)> field(V T::*member) {
    return [member](T& target, const json& j) { target.*member = j.get<V>(); };
}

template <typename T>
std::function<void(T&, const json&)> range_min(Range T::*member) {
    return [member](T& target, const json& j) { (target.*member).min = j.get<double>(); };
}

template <typename T>
std::function<void(T&, const json&)> range_max(Range T::*member) {
    return [member](T& target, const json& j) { (target.*member).max = j.get<double>(); };
}

inline const FieldMap<ScenarioConfig>& scenario_fields() {
    using S = ScenarioConfig;
    static const FieldMap<S> fields = {
        {"dimension", field(&S::dimension)},
        {"num_components", field(&S::num_components)},
        {"shift_severity", field(&S::shift_severity)},
        {"height_severity", field(&S::height_severity)},
        {"width_severity", field(&S::width_severity)},
        {"angle_severity", field(&S::angle_severity)},
        {"tau_severity", field(&S::tau_severity)},
        {"eta_severity", field(&S::eta_severity)},
        {"lower_bound", range_min(&S::bounds)},
        {"upper_bound", range_max(&S::bounds)},
        {"height_min", range_min(&S::height)},
        {"height_max", range_max(&S::height)},
        {"width_min", range_min(&S::width)},
        {"width_max", range_max(&S::width)},
        {"angle_min", range_min(&S::angle)},
        {"angle_max", range_max(&S::angle)},
        {"tau_min", range_min(&S::tau)},
        {"tau_max", range_max(&S::tau)},
        {"eta_min", range_min(&S::eta)},
        {"eta_max", range_max(&S::eta)},
        {"change_frequency", field(&S::change_frequency)},
        {"num_environments", field(&S::num_environments)},
        {"rotation_enabled", field(&S::rotation_enabled)},
        {"seed", field(&S::seed)},
    };
    return fields;
}

inline const FieldMap<SolverConfig>& solver_fields() {
    using S = SolverConfig;
    static const FieldMap<S> fields = {
        {"num_swarms", field(&S::num_swarms)},
        {"neutral_count", field(&S::neutral_count)},
        {"quantum_count", field(&S::quantum_count)},
        {"chi", field(&S::chi)},
        {"c1", field(&S::c1)},
        {"c2", field(&S::c2)},
        {"cloud_radius", field(&S::cloud_radius)},
        {"exclusion_radius", field(&S::exclusion_radius)},
        {"convergence_radius", field(&S::convergence_radius)},
    };
    return fields;
}

template <typename T>
void apply_fields(T& target, const json& object, const FieldMap<T>& fields, const std::string& prefix,
                  std::vector<std::string>& errors) {
    for (const auto& [key, value] : object.items()) {
        const auto it = fields.find(key);
        if (it == fields.end()) {
            errors.push_back("unknown key \"" + prefix + key + "\"");
            continue;
        }
        try {
            it->second(target, value);
        } catch (const json::exception&) {
            errors.push_back("\"" + prefix + key + "\" has the wrong type");
        }
    }
}

}  // namespace detail

inline json to_json(const ScenarioConfig& c) {
    return json{
        {"dimension", c.dimension},
        {"num_components", c.num_components},
        {"shift_severity", c.shift_severity},
        {"height_severity", c.height_severity},
        {"width_severity", c.width_severity},
        {"angle_severity", c.angle_severity},
        {"tau_severity", c.tau_severity},
        {"eta_severity", c.eta_severity},
        {"lower_bound", c.bounds.min},
        {"upper_bound", c.bounds.max},
        {"height_min", c.height.min},
        {"height_max", c.height.max},
        {"width_min", c.width.min},
        {"width_max", c.width.max},
        {"angle_min", c.angle.min},
        {"angle_max", c.angle.max},
        {"tau_min", c.tau.min},
        {"tau_max", c.tau.max},
        {"eta_min", c.eta.min},
        {"eta_max", c.eta.max},
        {"change_frequency", c.change_frequency},
        {"num_environments", c.num_environments},
        {"rotation_enabled", c.rotation_enabled},
        {"seed", c.seed},
    };
}

inline json to_json(const SolverConfig& s) {
    return json{
        {"num_swarms", s.num_swarms},
        {"neutral_count", s.neutral_count},
        {"quantum_count", s.quantum_count},
        {"chi", s.chi},
        {"c1", s.c1},
        {"c2", s.c2},
        {"cloud_radius", s.cloud_radius},
        {"exclusion_radius", s.exclusion_radius},
        {"convergence_radius", s.convergence_radius},
    };
}

inline json to_json(const ConfigFile& c) {
    json j = to_json(c.scenario);
    j["solver"] = to_json(c.solver);
    return j;
}

/// Parses a configuration document. Omitted fields take their defaults.
/// Throws ConfigError listing every problem found.
inline ConfigFile parse_config(const json& doc) {
    std::vector<std::string> errors;
    ConfigFile out;
    if (!doc.is_object() && !doc.is_null()) throw ConfigError({"configuration must be a JSON object"});

    json solver_doc;
    json scenario_doc = json::object();
    if (doc.is_object()) {
        for (const auto& [key, value] : doc.items()) {
            if (key == "solver") solver_doc = value;
            else scenario_doc[key] = value;
        }
    }
    detail::apply_fields(out.scenario, scenario_doc, detail::scenario_fields(), "", errors);
    for (auto& v : violations(out.scenario)) errors.push_back(std::move(v));

    if (errors.empty()) out.solver = SolverConfig::for_scenario(out.scenario);
    if (!solver_doc.is_null()) {
        if (!solver_doc.is_object()) errors.emplace_back("\"solver\" must be an object");
        else detail::apply_fields(out.solver, solver_doc, detail::solver_fields(), "solver.", errors);
    }
    for (auto& v : violations(out.solver)) errors.push_back(std::move(v));

    if (!errors.empty()) throw ConfigError(std::move(errors));
    return out;
}

/// Parses configuration text. An empty document means all defaults.
inline ConfigFile parse_config_text(const std::string& text) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return parse_config(json());
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
    return parse_config(doc);
}

inline ConfigFile load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot read configuration file \"" + path + "\""});
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

}  // namespace gmpb
