#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gmpb/config.hpp"
#include "gmpb/landscape.hpp"
#include "gmpb/protocol.hpp"
#include "gmpb/rng.hpp"

namespace gmpb {

/// mQSO parameters.
struct SolverConfig {
    int num_swarms = 10;
    int neutral_count = 5;
    int quantum_count = 5;
    double chi = 0.729843788;
    double c1 = 2.05;
    double c2 = 2.05;
    double cloud_radius = 1.0;
    double exclusion_radius = 1.0;
    double convergence_radius = 1.0;

    /// Radii tied to the scenario: the quantum cloud matches the shift
    /// severity, and exclusion/convergence use 0.5 * (Ub - Lb) / m^(1/d).
    static SolverConfig for_scenario(const ScenarioConfig& cfg) {
        SolverConfig s;
        s.cloud_radius = cfg.shift_severity > 0.0 ? cfg.shift_severity : 1.0;
        s.exclusion_radius = 0.5 * cfg.bounds.width() /
                             std::pow(static_cast<double>(cfg.num_components), 1.0 / cfg.dimension);
        s.convergence_radius = s.exclusion_radius;
        return s;
    }

    bool operator==(const SolverConfig&) const = default;
};

inline std::vector<std::string> violations(const SolverConfig& s) {
    std::vector<std::string> out;
    if (s.num_swarms < 1) out.emplace_back("num_swarms must be >= 1");
    if (s.neutral_count < 0 || s.quantum_count < 0 || s.neutral_count + s.quantum_count < 1)
        out.emplace_back("each swarm needs at least one particle");
    if (!(s.chi > 0.0 && s.chi < 1.0)) out.emplace_back("chi must lie in (0, 1)");
    if (!(s.c1 >= 0.0) || !(s.c2 >= 0.0)) out.emplace_back("acceleration constants must be nonnegative");
    if (!(s.cloud_radius > 0.0)) out.emplace_back("cloud_radius must be positive");
    if (!(s.exclusion_radius > 0.0)) out.emplace_back("exclusion_radius must be positive");
    if (!(s.convergence_radius > 0.0)) out.emplace_back("convergence_radius must be positive");
    return out;
}

enum class ParticleKind { neutral, quantum };

struct Particle {
    Vector position;
    Vector velocity;
    Vector best_position;
    double best_value = -std::numeric_limits<double>::infinity();
    ParticleKind kind = ParticleKind::neutral;

    /// Not yet evaluated since the last (re)initialization.
    bool pending() const noexcept { return best_value == -std::numeric_limits<double>::infinity(); }
};

struct Swarm {
    std::vector<Particle> particles;
    Vector best_position;
    double best_value = -std::numeric_limits<double>::infinity();

    bool has_best() const noexcept { return best_value > -std::numeric_limits<double>::infinity(); }

    void refresh_best() {
        best_value = -std::numeric_limits<double>::infinity();
        for (const auto& p : particles)
            if (p.best_value > best_value) {
                best_value = p.best_value;
                best_position = p.best_position;
            }
    }

    /// Largest pairwise distance between neutral particles.
    double neutral_diameter() const {
        double diameter = 0.0;
        for (std::size_t i = 0; i < particles.size(); ++i) {
            if (particles[i].kind != ParticleKind::neutral) continue;
            for (std::size_t j = i + 1; j < particles.size(); ++j) {
                if (particles[j].kind != ParticleKind::neutral) continue;
                diameter = std::max(diameter, (particles[i].position - particles[j].position).norm());
            }
        }
        return diameter;
    }
};

/// Multi-swarm PSO with quantum particles, exclusion and anti-convergence.
///
/// Talks to the problem only through the black-box interface. Changes are
/// detected by re-evaluating every swarm's best position once per iteration.
template <BlackBoxProblem Problem>
class Mqso {
public:
    Mqso(SolverConfig cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed) {
        if (auto v = violations(cfg_); !v.empty()) throw ConfigError(std::move(v));
    }

    /// Random particles in every swarm. Nothing is evaluated until the next step.
    void initialize(const Problem& problem) {
        dimension_ = problem.dimension();
        bounds_ = problem.bounds();
        swarms_.assign(static_cast<std::size_t>(cfg_.num_swarms), Swarm{});
        for (auto& s : swarms_) reinitialize(s);
    }

    /// One PSO move of every swarm. Swarms holding unevaluated particles spend
    /// this step evaluating them in place.
    void step(Problem& problem) {
        for (auto& swarm : swarms_) {
            if (any_pending(swarm)) {
                for (auto& p : swarm.particles)
                    if (p.pending() && !evaluate_particle(problem, swarm, p)) return;
                continue;
            }
            const Vector attractor = swarm.best_position;
            for (auto& p : swarm.particles) {
                if (p.kind == ParticleKind::neutral) move_neutral(p, attractor);
                else sample_quantum(p, attractor);
                if (!evaluate_particle(problem, swarm, p)) return;
            }
        }
    }

    /// Re-evaluates each swarm's best position. On the first mismatch every
    /// personal best is re-evaluated and swarm bests are rebuilt.
    /// Returns true when a change was detected.
    bool change_reaction(Problem& problem) {
        for (auto& swarm : swarms_) {
            if (!swarm.has_best()) continue;
            if (problem.budget_remaining() <= 0) return false;
            const double now = problem.evaluate(swarm.best_position);
            if (std::abs(now - swarm.best_value) <= kChangeTolerance) continue;

            ++changes_detected_;
            for (auto& s : swarms_) {
                for (auto& p : s.particles) {
                    if (p.pending()) continue;
                    if (problem.budget_remaining() <= 0) {
                        s.refresh_best();
                        return true;
                    }
                    p.best_value = problem.evaluate(p.best_position);
                }
                s.refresh_best();
            }
            return true;
        }
        return false;
    }

    /// Reinitializes the worse swarm of every pair whose bests are closer than
    /// the exclusion radius. Ties reinitialize the higher index.
    /// Returns the reinitialized swarm indices.
    std::vector<std::size_t> exclusion() {
        std::vector<std::size_t> reset;
        for (std::size_t i = 0; i < swarms_.size(); ++i) {
            for (std::size_t j = i + 1; j < swarms_.size(); ++j) {
                if (!swarms_[i].has_best() || !swarms_[j].has_best()) continue;
                if ((swarms_[i].best_position - swarms_[j].best_position).norm() >= cfg_.exclusion_radius) continue;
                const std::size_t worse = swarms_[i].best_value < swarms_[j].best_value ? i : j;
                reinitialize(swarms_[worse]);
                reset.push_back(worse);
            }
        }
        return reset;
    }

    /// When every swarm has converged, reinitializes the one with the worst best.
    std::optional<std::size_t> anti_convergence() {
        for (const auto& s : swarms_)
            if (!(s.neutral_diameter() < cfg_.convergence_radius)) return std::nullopt;
        std::size_t worst = 0;
        for (std::size_t i = 1; i < swarms_.size(); ++i)
            if (swarms_[i].best_value <= swarms_[worst].best_value) worst = i;
        reinitialize(swarms_[worst]);
        return worst;
    }

    void iterate(Problem& problem) {
        change_reaction(problem);
        step(problem);
        exclusion();
        anti_convergence();
    }

    /// Drives the problem until its budget is spent.
    void run(Problem& problem) {
        initialize(problem);
        while (problem.budget_remaining() > 0) iterate(problem);
    }

    const std::vector<Swarm>& swarms() const noexcept { return swarms_; }
    std::vector<Swarm>& swarms() noexcept { return swarms_; }
    const SolverConfig& config() const noexcept { return cfg_; }
    long changes_detected() const noexcept { return changes_detected_; }

    /// Best value held by any swarm.
    double best_value() const noexcept {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& s : swarms_) best = std::max(best, s.best_value);
        return best;
    }

    static constexpr double kChangeTolerance = 1e-9;

private:
    static bool any_pending(const Swarm& s) {
        for (const auto& p : s.particles)
            if (p.pending()) return true;
        return false;
    }

    Vector uniform_point() {
        Vector x(dimension_);
        for (int j = 0; j < dimension_; ++j) x[j] = rng_.uniform(bounds_.min, bounds_.max);
        return x;
    }

    void reinitialize(Swarm& swarm) {
        swarm.particles.clear();
        const int total = cfg_.neutral_count + cfg_.quantum_count;
        for (int i = 0; i < total; ++i) {
            Particle p;
            p.kind = i < cfg_.neutral_count ? ParticleKind::neutral : ParticleKind::quantum;
            p.position = uniform_point();
            p.velocity = Vector::Zero(dimension_);
            p.best_position = p.position;
            swarm.particles.push_back(std::move(p));
        }
        swarm.best_value = -std::numeric_limits<double>::infinity();
        swarm.best_position = Vector();
    }

    void clamp(Particle& p) const {
        for (int j = 0; j < dimension_; ++j) {
            if (p.position[j] < bounds_.min) {
                p.position[j] = bounds_.min;
                p.velocity[j] = 0.0;
            } else if (p.position[j] > bounds_.max) {
                p.position[j] = bounds_.max;
                p.velocity[j] = 0.0;
            }
        }
    }

    void move_neutral(Particle& p, const Vector& attractor) {
        for (int j = 0; j < dimension_; ++j) {
            const double u1 = rng_.uniform01();
            const double u2 = rng_.uniform01();
            p.velocity[j] = cfg_.chi * (p.velocity[j] + cfg_.c1 * u1 * (p.best_position[j] - p.position[j]) +
                                        cfg_.c2 * u2 * (attractor[j] - p.position[j]));
        }
        p.position += p.velocity;
        clamp(p);
    }

    /// Uniform sample in the ball of radius cloud_radius around the attractor.
    void sample_quantum(Particle& p, const Vector& attractor) {
        Vector dir(dimension_);
        double norm = 0.0;
        do {
            for (int j = 0; j < dimension_; ++j) dir[j] = rng_.normal();
            norm = dir.norm();
        } while (norm < 1e-12);
        const double radius = cfg_.cloud_radius * std::pow(rng_.uniform01(), 1.0 / dimension_);
        p.position = attractor + (radius / norm) * dir;
        clamp(p);
    }

    bool evaluate_particle(Problem& problem, Swarm& swarm, Particle& p) {
        if (problem.budget_remaining() <= 0) return false;
        const double v = problem.evaluate(p.position);
        if (v > p.best_value) {
            p.best_value = v;
            p.best_position = p.position;
        }
        if (v > swarm.best_value) {
            swarm.best_value = v;
            swarm.best_position = p.position;
        }
        return true;
    }

    SolverConfig cfg_;
    RngStream rng_;
    int dimension_ = 0;
    Range bounds_;
    std::vector<Swarm> swarms_;
    long changes_detected_ = 0;
};

/// Uniform random sampling of the whole search box until the budget is spent.
template <BlackBoxProblem Problem>
class RandomSearch {
public:
    explicit RandomSearch(std::uint64_t seed) : rng_(seed) {}

    void run(Problem& problem) {
        const int d = problem.dimension();
        const Range b = problem.bounds();
        Vector x(d);
        while (problem.budget_remaining() > 0) {
            for (int j = 0; j < d; ++j) x[j] = rng_.uniform(b.min, b.max);
            problem.evaluate(x);
        }
    }

private:
    RngStream rng_;
};

}  // namespace gmpb
