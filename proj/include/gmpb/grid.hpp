#pragma once

#include <array>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmpb/config.hpp"
#include "gmpb/dynamics.hpp"
#include "gmpb/experiment.hpp"
#include "gmpb/landscape.hpp"

namespace gmpb {

class UnsupportedDimension : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Samples of a 2-D landscape on a uniform grid, with x2 varying fastest.
struct GridExport {
    Landscape landscape;
    int resolution = 0;
    std::vector<std::array<double, 3>> rows;  // x1, x2, f
};

/// i-th of n evenly spaced points in [lo, hi]; both ends are hit exactly.
inline double grid_coordinate(const Range& r, int i, int n) {
    if (i == n - 1) return r.max;
    return r.min + r.width() * static_cast<double>(i) / static_cast<double>(n - 1);
}

inline GridExport export_grid(const ScenarioConfig& cfg, int environment_index, int resolution) {
    if (cfg.dimension != 2)
        throw UnsupportedDimension("grid export needs dimension 2, got " + std::to_string(cfg.dimension));
    if (resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");

    GridExport g;
    g.landscape = landscape_at(cfg, environment_index);
    g.resolution = resolution;
    g.rows.reserve(static_cast<std::size_t>(resolution) * resolution);
    Vector x(2);
    for (int i = 0; i < resolution; ++i) {
        x[0] = grid_coordinate(cfg.bounds, i, resolution);
        for (int j = 0; j < resolution; ++j) {
            x[1] = grid_coordinate(cfg.bounds, j, resolution);
            g.rows.push_back({x[0], x[1], evaluate_raw(x, g.landscape)});
        }
    }
    return g;
}

inline void write_grid_csv(std::ostream& out, const GridExport& g) {
    out << "x1,x2,f\n";
    for (const auto& [x1, x2, f] : g.rows)
        out << format_double(x1) << ',' << format_double(x2) << ',' << format_double(f) << '\n';
}

/// Per-component parameters: centers, heights, widths, tau, eta and whether
/// the component is rotated.
inline json grid_metadata(const GridExport& g, const ScenarioConfig& cfg) {
    json comps = json::array();
    for (const auto& c : g.landscape.components) {
        const bool rotated = !c.rotation.isIdentity(0.0);
        comps.push_back({
            {"center", std::vector<double>(c.center.begin(), c.center.end())},
            {"height", c.height},
            {"widths", std::vector<double>(c.widths.begin(), c.widths.end())},
            {"angle", c.angle},
            {"tau", c.tau},
            {"eta", c.eta},
            {"rotated", rotated},
        });
    }
    return json{
        {"version", kVersion},
        {"environment", g.landscape.environment_index},
        {"resolution", g.resolution},
        {"scenario", to_json(cfg)},
        {"optimum",
         {{"value", g.landscape.optimum_value},
          {"position", std::vector<double>(g.landscape.optimum_position.begin(),
                                           g.landscape.optimum_position.end())}}},
        {"components", comps},
    };
}

}  // namespace gmpb
