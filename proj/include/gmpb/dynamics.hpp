#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmpb/config.hpp"
#include "gmpb/errors.hpp"
#include "gmpb/landscape.hpp"
#include "gmpb/rng.hpp"

namespace gmpb {

/// A coordinate plane x_p-x_q, zero-based with p < q.
struct PlanePair {
    int p = 0;
    int q = 1;
    bool operator==(const PlanePair&) const = default;
};

/// All d(d-1)/2 planes in lexicographic order.
inline std::vector<PlanePair> all_planes(int d) {
    std::vector<PlanePair> planes;
    planes.reserve(static_cast<std::size_t>(d) * (d > 0 ? d - 1 : 0) / 2);
    for (int p = 0; p < d; ++p)
        for (int q = p + 1; q < d; ++q) planes.push_back({p, q});
    return planes;
}

/// Identity except (p,p) = (q,q) = cos(theta), (p,q) = -sin(theta), (q,p) = sin(theta).
inline Matrix givens_matrix(int d, PlanePair pair, double theta) {
    if (pair.p < 0 || pair.q <= pair.p || pair.q >= d)
        throw std::invalid_argument("invalid plane (" + std::to_string(pair.p) + ", " +
                                    std::to_string(pair.q) + ") for dimension " + std::to_string(d));
    Matrix g = Matrix::Identity(d, d);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    g(pair.p, pair.p) = c;
    g(pair.q, pair.q) = c;
    g(pair.p, pair.q) = -s;
    g(pair.q, pair.p) = s;
    return g;
}

/// Largest absolute entry of R^T R - I.
inline double orthogonality_error(const Matrix& r) {
    return (r.transpose() * r - Matrix::Identity(r.cols(), r.cols())).cwiseAbs().maxCoeff();
}

inline constexpr double kOrthogonalityTolerance = 1e-9;
inline constexpr double kPivotTolerance = 1e-12;

/// Modified Gram-Schmidt over the columns, in index order.
/// Returns false if a column collapses (norm below 1e-12); m is then unspecified.
inline bool gram_schmidt(Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < j; ++i) m.col(j) -= m.col(i).dot(m.col(j)) * m.col(i);
        const double norm = m.col(j).norm();
        if (norm < kPivotTolerance) return false;
        m.col(j) /= norm;
    }
    return true;
}

/// Orthonormalized d x d matrix of standard normal draws (filled column-major).
/// Redraws on degeneracy.
inline Matrix random_orthogonal(int d, RngStream& rng) {
    Matrix m(d, d);
    do {
        for (Eigen::Index j = 0; j < d; ++j)
            for (Eigen::Index i = 0; i < d; ++i) m(i, j) = rng.normal();
    } while (!gram_schmidt(m));
    return m;
}

/// Initial rotation of a component. Identity without drawing when rotation is disabled.
inline Matrix initial_rotation(int d, RngStream& rng, bool rotation_enabled = true) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!rotation_enabled) return Matrix::Identity(d, d);
    return random_orthogonal(d, rng);
}

/// Rotates every coordinate plane by theta, in a fresh random plane order, and
/// applies the product on the left of r.
inline Matrix update_rotation(const Matrix& r, double theta, RngStream& rng) {
    const int d = static_cast<int>(r.rows());
    auto planes = all_planes(d);
    rng.shuffle(std::span<PlanePair>(planes));

    // (G_1 G_2 ... G_n) R, applied right to left as row rotations.
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Matrix out = r;
    for (auto it = planes.rbegin(); it != planes.rend(); ++it) {
        const Eigen::RowVectorXd row_p = out.row(it->p);
        const Eigen::RowVectorXd row_q = out.row(it->q);
        out.row(it->p) = c * row_p - s * row_q;
        out.row(it->q) = s * row_p + c * row_q;
    }

    if (orthogonality_error(out) > kOrthogonalityTolerance) {
        if (!gram_schmidt(out) || orthogonality_error(out) > kOrthogonalityTolerance)
            throw std::logic_error("rotation lost orthogonality");
    }
    return out;
}

/// Adds delta to value and mirrors the result back into [lo, hi].
///
/// A single mirror is the textbook rule; it is repeated until the result is
/// inside, so oversized steps also land in range.
inline double reflect(double value, double delta, double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("reflect: lower bound exceeds upper bound");
    double a = value + delta;
    if (a >= lo && a <= hi) return a;
    if (lo == hi) return lo;

    if (a < lo) {
        a = 2.0 * lo - value - delta;
    } else {
        a = 2.0 * hi - value - delta;
    }
    const double span = hi - lo;
    while (a < lo || a > hi) {
        // Fold far excursions in one step; the reflection has period 2 * span.
        if (a < lo - 2.0 * span || a > hi + 2.0 * span) a = lo + std::fmod(a - lo, 2.0 * span);
        if (a < lo) a = 2.0 * lo - a;
        else if (a > hi) a = 2.0 * hi - a;
    }
    return a;
}

/// One environment change of a single component.
///
/// Draw order: direction (d normals), height, widths (d), angle, eta (4), tau,
/// then the plane permutation when rotation is enabled.
inline ComponentState update_component(const ComponentState& comp, const ScenarioConfig& cfg, RngStream& rng) {
    const Eigen::Index d = comp.dimension();
    ComponentState next = comp;

    Vector r(d);
    double norm = 0.0;
    do {
        for (Eigen::Index j = 0; j < d; ++j) r[j] = rng.normal();
        norm = r.norm();
    } while (norm < kPivotTolerance);
    for (Eigen::Index j = 0; j < d; ++j)
        next.center[j] = reflect(comp.center[j], cfg.shift_severity * r[j] / norm, cfg.bounds.min, cfg.bounds.max);

    next.height = reflect(comp.height, cfg.height_severity * rng.normal(), cfg.height.min, cfg.height.max);
    for (Eigen::Index j = 0; j < d; ++j)
        next.widths[j] = reflect(comp.widths[j], cfg.width_severity * rng.normal(), cfg.width.min, cfg.width.max);
    next.angle = reflect(comp.angle, cfg.angle_severity * rng.normal(), cfg.angle.min, cfg.angle.max);
    for (std::size_t l = 0; l < 4; ++l)
        next.eta[l] = reflect(comp.eta[l], cfg.eta_severity * rng.normal(), cfg.eta.min, cfg.eta.max);
    next.tau = reflect(comp.tau, cfg.tau_severity * rng.normal(), cfg.tau.min, cfg.tau.max);

    if (cfg.rotation_enabled) next.rotation = update_rotation(comp.rotation, next.angle, rng);
    return next;
}

/// Moves the landscape to its next environment. Components change in index order.
inline void advance_environment(Landscape& landscape, const ScenarioConfig& cfg, RngStream& rng) {
    if (landscape.environment_index >= cfg.num_environments - 1)
        throw ScenarioExhausted("cannot advance past environment " +
                                std::to_string(cfg.num_environments - 1));
    for (auto& comp : landscape.components) comp = update_component(comp, cfg, rng);
    ++landscape.environment_index;
    refresh_optimum(landscape);
}

/// Environment 0.
///
/// Draw order per component: center (d), height, widths (d), angle, eta (4),
/// tau, rotation source matrix.
inline Landscape init_landscape(const ScenarioConfig& cfg, RngStream& rng) {
    validate(cfg);
    const int d = cfg.dimension;
    Landscape landscape;
    landscape.components.reserve(static_cast<std::size_t>(cfg.num_components));
    for (int k = 0; k < cfg.num_components; ++k) {
        ComponentState comp;
        comp.center.resize(d);
        for (int j = 0; j < d; ++j) comp.center[j] = rng.uniform(cfg.bounds.min, cfg.bounds.max);
        comp.height = rng.uniform(cfg.height.min, cfg.height.max);
        comp.widths.resize(d);
        for (int j = 0; j < d; ++j) comp.widths[j] = rng.uniform(cfg.width.min, cfg.width.max);
        comp.angle = rng.uniform(cfg.angle.min, cfg.angle.max);
        for (auto& e : comp.eta) e = rng.uniform(cfg.eta.min, cfg.eta.max);
        comp.tau = rng.uniform(cfg.tau.min, cfg.tau.max);
        comp.rotation = initial_rotation(d, rng, cfg.rotation_enabled);
        landscape.components.push_back(std::move(comp));
    }
    refresh_optimum(landscape);
    return landscape;
}

/// Fresh landscape from cfg.seed advanced to the given environment.
inline Landscape landscape_at(const ScenarioConfig& cfg, int environment_index) {
    validate(cfg);
    if (environment_index < 0 || environment_index >= cfg.num_environments)
        throw std::invalid_argument("environment index " + std::to_string(environment_index) +
                                    " outside [0, " + std::to_string(cfg.num_environments - 1) + "]");
    RngStream rng(cfg.seed);
    Landscape landscape = init_landscape(cfg, rng);
    while (landscape.environment_index < environment_index) advance_environment(landscape, cfg, rng);
    return landscape;
}

}  // namespace gmpb
