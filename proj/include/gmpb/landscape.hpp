#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmpb {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// One peak of the landscape.
///
/// The width matrix of the quadratic form is diag(widths); it is never
/// materialized.
struct ComponentState {
    Vector center;
    double height = 0.0;
    Vector widths;
    double angle = 0.0;
    double tau = 0.0;
    std::array<double, 4> eta{};
    Matrix rotation;

    Eigen::Index dimension() const noexcept { return center.size(); }

    /// Ratio of the largest to the smallest width.
    double condition_number() const { return widths.maxCoeff() / widths.minCoeff(); }
};

/// The environment currently in force.
struct Landscape {
    int environment_index = 0;
    std::vector<ComponentState> components;
    double optimum_value = 0.0;
    Vector optimum_position;

    Eigen::Index dimension() const noexcept {
        return components.empty() ? 0 : components.front().dimension();
    }
};

/// Sign-preserving irregularity transform applied to each rotated coordinate.
///
/// Positive inputs use eta[0], eta[1]; negative inputs use eta[2], eta[3].
/// Evaluated in exp(log|y| + ...) form; y == 0 maps to exactly 0.
inline double irregularity_transform(double y, double tau, const std::array<double, 4>& eta) noexcept {
    if (y > 0.0) {
        const double l = std::log(y);
        return std::exp(l + tau * (std::sin(eta[0] * l) + std::sin(eta[1] * l)));
    }
    if (y < 0.0) {
        const double l = std::log(-y);
        return -std::exp(l + tau * (std::sin(eta[2] * l) + std::sin(eta[3] * l)));
    }
    return 0.0;
}

namespace detail {

inline void check_dimension(Eigen::Index got, Eigen::Index want) {
    if (got != want)
        throw std::invalid_argument("dimension mismatch: got " + std::to_string(got) + ", expected " +
                                    std::to_string(want));
}

// No dimension check; callers validate once.
inline double component_value_unchecked(const Vector& x, const ComponentState& comp) noexcept {
    const Eigen::Index d = comp.dimension();
    double quad = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        double y = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) y += comp.rotation(i, j) * (x[j] - comp.center[j]);
        const double z = irregularity_transform(y, comp.tau, comp.eta);
        quad += comp.widths[i] * z * z;
    }
    return comp.height - std::sqrt(quad);
}

}  // namespace detail

/// Value of a single component: height - sqrt(sum_j w_j * T(R(x - c))_j^2).
inline double component_value(const Vector& x, const ComponentState& comp) {
    detail::check_dimension(x.size(), comp.dimension());
    return detail::component_value_unchecked(x, comp);
}

/// Index of the component attaining the landscape value at x.
/// Ties go to the lowest index.
inline std::size_t dominant_component(const Vector& x, const Landscape& landscape) {
    detail::check_dimension(x.size(), landscape.dimension());
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < landscape.components.size(); ++k) {
        const double v = detail::component_value_unchecked(x, landscape.components[k]);
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }
    return best;
}

/// Landscape value at x: the maximum over all components.
inline double evaluate_raw(const Vector& x, const Landscape& landscape) {
    detail::check_dimension(x.size(), landscape.dimension());
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& comp : landscape.components)
        best = std::max(best, detail::component_value_unchecked(x, comp));
    return best;
}

struct Optimum {
    double value = 0.0;
    Vector position;
};

/// Global optimum. Every component peaks at its own center with its height,
/// so the maximum is the tallest component's center.
inline Optimum optimum(const Landscape& landscape) {
    if (landscape.components.empty()) throw std::invalid_argument("landscape has no components");
    std::size_t best = 0;
    for (std::size_t k = 1; k < landscape.components.size(); ++k)
        if (landscape.components[k].height > landscape.components[best].height) best = k;
    return {landscape.components[best].height, landscape.components[best].center};
}

/// Refreshes the cached optimum after the components changed.
inline void refresh_optimum(Landscape& landscape) {
    auto opt = optimum(landscape);
    landscape.optimum_value = opt.value;
    landscape.optimum_position = std::move(opt.position);
}

}  // namespace gmpb
