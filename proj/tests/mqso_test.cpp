#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "gmpb/mqso.hpp"
#include "gmpb/protocol.hpp"

using namespace gmpb;

namespace {

ScenarioConfig scenario(int d, int m, long freq, int envs, std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.dimension = d;
    cfg.num_components = m;
    cfg.change_frequency = freq;
    cfg.num_environments = envs;
    cfg.seed = seed;
    return cfg;
}

// Counts evaluations; the landscape is a fixed sphere.
struct CountingProblem {
    int dim = 3;
    long budget = 100000;
    long calls = 0;
    double evaluate(const Vector& x) {
        ++calls;
        --budget;
        return -x.squaredNorm();
    }
    int dimension() const { return dim; }
    Range bounds() const { return {-10, 10}; }
    long budget_remaining() const { return budget; }
};

static_assert(BlackBoxProblem<CountingProblem>);

bool all_in_bounds(const Mqso<CountingProblem>& solver, Range b) {
    for (const auto& s : solver.swarms())
        for (const auto& p : s.particles)
            for (Eigen::Index j = 0; j < p.position.size(); ++j)
                if (p.position[j] < b.min || p.position[j] > b.max) return false;
    return true;
}

}  // namespace

TEST(SolverConfig, ScenarioRadii) {
    ScenarioConfig cfg;
    const auto s = SolverConfig::for_scenario(cfg);
    EXPECT_DOUBLE_EQ(s.cloud_radius, 1.0);
    EXPECT_DOUBLE_EQ(s.exclusion_radius, 0.5 * 200 / std::pow(10.0, 0.1));
    EXPECT_EQ(s.exclusion_radius, s.convergence_radius);
    EXPECT_TRUE(violations(s).empty());
}

TEST(SolverConfig, RejectsBadConstants) {
    SolverConfig s;
    s.chi = 1.5;
    s.cloud_radius = 0;
    EXPECT_EQ(violations(s).size(), 2u);
    EXPECT_THROW((Mqso<CountingProblem>(s, 1)), ConfigError);
}

TEST(Mqso, DegenerateConstantsFreezeNeutralParticles) {
    SolverConfig s;
    s.chi = 1e-300;  // effectively zero; chi must stay inside (0, 1)
    s.c1 = s.c2 = 0;
    s.cloud_radius = 0.5;
    s.num_swarms = 3;
    CountingProblem problem;
    Mqso<CountingProblem> solver(s, 9);
    solver.initialize(problem);
    solver.step(problem);  // evaluates the initial particles
    std::vector<Vector> before;
    for (const auto& sw : solver.swarms())
        for (const auto& p : sw.particles)
            if (p.kind == ParticleKind::neutral) before.push_back(p.position);
    for (int it = 0; it < 5; ++it) {
        std::vector<Vector> attractors;
        for (const auto& sw : solver.swarms()) attractors.push_back(sw.best_position);
        solver.step(problem);
        std::size_t i = 0;
        for (std::size_t k = 0; k < solver.swarms().size(); ++k)
            for (const auto& p : solver.swarms()[k].particles) {
                if (p.kind == ParticleKind::neutral) EXPECT_EQ(p.position, before[i++]);
                else EXPECT_LE((p.position - attractors[k]).norm(), 0.5 + 1e-12);
            }
    }
}

TEST(Mqso, QuantumSamplesStayInCloud) {
    SolverConfig s;
    s.num_swarms = 2;
    s.cloud_radius = 2.5;
    CountingProblem problem;
    Mqso<CountingProblem> solver(s, 10);
    solver.initialize(problem);
    solver.step(problem);
    long samples = 0;
    while (samples < 10000) {
        std::vector<Vector> attractors;
        for (const auto& sw : solver.swarms()) attractors.push_back(sw.best_position);
        solver.step(problem);
        for (std::size_t k = 0; k < solver.swarms().size(); ++k)
            for (const auto& p : solver.swarms()[k].particles)
                if (p.kind == ParticleKind::quantum) {
                    EXPECT_LE((p.position - attractors[k]).norm(), 2.5 + 1e-12);
                    ++samples;
                }
    }
}

TEST(Mqso, SwarmBestsNonDecreasingInStaticEnvironment) {
    BenchmarkSession session(scenario(5, 5, 1000000, 1, 4));
    Mqso<BenchmarkSession> solver(SolverConfig::for_scenario(session.config()), 8);
    solver.initialize(session);
    solver.step(session);
    for (int it = 0; it < 200; ++it) {
        std::vector<double> before;
        for (const auto& sw : solver.swarms()) before.push_back(sw.best_value);
        solver.step(session);
        for (std::size_t k = 0; k < before.size(); ++k) EXPECT_GE(solver.swarms()[k].best_value, before[k]);
    }
}

TEST(Mqso, PositionsStayInBounds) {
    SolverConfig s;
    s.num_swarms = 4;
    s.c1 = s.c2 = 4.0;  // wild velocities force clamping
    s.chi = 0.99;
    CountingProblem problem;
    Mqso<CountingProblem> solver(s, 12);
    solver.initialize(problem);
    for (int it = 0; it < 200; ++it) {
        solver.step(problem);
        ASSERT_TRUE(all_in_bounds(solver, problem.bounds()));
    }
}

TEST(Mqso, ExclusionReinitializesWorseOfCloseSwarms) {
    SolverConfig s;
    s.num_swarms = 3;
    s.exclusion_radius = 1.0;
    CountingProblem problem;
    Mqso<CountingProblem> solver(s, 13);
    solver.initialize(problem);
    solver.step(problem);
    auto& sw = solver.swarms();
    sw[0].best_position = Vector::Constant(3, 5.0);
    sw[0].best_value = 1.0;
    sw[1].best_position = Vector::Constant(3, 5.0);
    sw[1].best_value = 1.0;
    sw[2].best_position = Vector::Constant(3, -5.0);
    sw[2].best_value = 0.5;
    const auto reset = solver.exclusion();
    ASSERT_EQ(reset, (std::vector<std::size_t>{1}));
    EXPECT_FALSE(sw[1].has_best());
    EXPECT_TRUE(sw[0].has_best());
    EXPECT_TRUE(sw[2].has_best());
    for (const auto& p : sw[1].particles) {
        EXPECT_TRUE(p.pending());
        EXPECT_EQ(p.velocity, Vector::Zero(3));
    }
}

TEST(Mqso, ExclusionLeavesDistantSwarms) {
    SolverConfig s;
    s.num_swarms = 2;
    s.exclusion_radius = 1.0;
    CountingProblem problem;
    Mqso<CountingProblem> solver(s, 14);
    solver.initialize(problem);
    solver.step(problem);
    auto& sw = solver.swarms();
    sw[0].best_position = Vector::Constant(3, 5.0);
    sw[1].best_position = Vector::Constant(3, 4.0);
    EXPECT_TRUE(solver.exclusion().empty());
}

TEST(Mqso, ExclusionLeavesPairsSeparated) {
    BenchmarkSession session(scenario(2, 10, 1000000, 1, 15));
    auto cfg = SolverConfig::for_scenario(session.config());
    Mqso<BenchmarkSession> solver(cfg, 15);
    solver.initialize(session);
    for (int it = 0; it < 100; ++it) {
        solver.step(session);
        solver.exclusion();
        const auto& sw = solver.swarms();
        for (std::size_t i = 0; i < sw.size(); ++i)
            for (std::size_t j = i + 1; j < sw.size(); ++j)
                if (sw[i].has_best() && sw[j].has_best()) {
                    EXPECT_GE((sw[i].best_position - sw[j].best_position).norm(), cfg.exclusion_radius);
                }
    }
}

TEST(Mqso, AntiConvergenceNeedsEverySwarmConverged) {
    SolverConfig s;
    s.num_swarms = 3;
    s.convergence_radius = 0.1;
    CountingProblem problem;
    Mqso<CountingProblem> solver(s, 16);
    solver.initialize(problem);
    solver.step(problem);
    auto& sw = solver.swarms();
    for (auto& swarm : sw)
        for (auto& p : swarm.particles) p.position = Vector::Constant(3, 1.0);
    sw[2].particles[0].position = Vector::Constant(3, 8.0);
    EXPECT_FALSE(solver.anti_convergence().has_value());

    sw[2].particles[0].position = Vector::Constant(3, 1.0);
    sw[0].best_value = -1;
    sw[1].best_value = -3;
    sw[2].best_value = -2;
    const auto reset = solver.anti_convergence();
    ASSERT_TRUE(reset.has_value());
    EXPECT_EQ(*reset, 1u);
    EXPECT_FALSE(sw[1].has_best());
    EXPECT_TRUE(sw[0].has_best());
    for (const auto& p : sw[1].particles)
        for (Eigen::Index j = 0; j < 3; ++j) {
            EXPECT_GE(p.position[j], -10);
            EXPECT_LE(p.position[j], 10);
        }
}

TEST(Mqso, NoChangeMeansNoReaction) {
    BenchmarkSession session(scenario(3, 4, 100000, 1, 17));
    Mqso<BenchmarkSession> solver(SolverConfig::for_scenario(session.config()), 17);
    solver.initialize(session);
    solver.step(session);
    for (int it = 0; it < 10; ++it) {
        EXPECT_FALSE(solver.change_reaction(session));
        solver.step(session);
    }
    EXPECT_EQ(solver.changes_detected(), 0);
}

TEST(Mqso, DetectsAlmostEveryChange) {
    ScenarioConfig cfg = scenario(5, 10, 500, 101, 18);
    BenchmarkSession session(cfg);
    Mqso<BenchmarkSession> solver(SolverConfig::for_scenario(cfg), 18);
    solver.run(session);
    // 100 changes; each is noticed at the first iteration after it happens.
    EXPECT_GE(solver.changes_detected(), 99);
    EXPECT_LE(solver.changes_detected(), 100);
}

TEST(Mqso, ReactionRebuildsSwarmBestsFromPersonalBests) {
    ScenarioConfig cfg = scenario(2, 5, 150, 3, 19);
    BenchmarkSession session(cfg);
    Mqso<BenchmarkSession> solver(SolverConfig::for_scenario(cfg), 19);
    solver.initialize(session);
    while (session.landscape().environment_index == 0) solver.step(session);
    ASSERT_TRUE(solver.change_reaction(session));
    for (const auto& sw : solver.swarms()) {
        double best = -INFINITY;
        for (const auto& p : sw.particles) best = std::max(best, p.best_value);
        EXPECT_EQ(sw.best_value, best);
    }
}

TEST(Mqso, UsesExactlyTheBudget) {
    ScenarioConfig cfg = scenario(3, 3, 333, 4, 20);
    BenchmarkSession session(cfg);
    Mqso<BenchmarkSession> solver(SolverConfig::for_scenario(cfg), 20);
    solver.run(session);
    EXPECT_EQ(session.evaluations_used(), 333 * 4);
    EXPECT_TRUE(session.finished());
}

TEST(RandomSearch, UsesExactlyTheBudget) {
    ScenarioConfig cfg = scenario(3, 3, 100, 2, 21);
    BenchmarkSession session(cfg);
    RandomSearch<BenchmarkSession> solver(21);
    solver.run(session);
    EXPECT_EQ(session.evaluations_used(), 200);
}

TEST(Mqso, BeatsRandomSearchOnSinglePeak) {
    std::vector<double> mqso, random;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ScenarioConfig cfg = scenario(2, 1, 5000, 10, 100 + seed);
        BenchmarkSession a(cfg);
        Mqso<BenchmarkSession>(SolverConfig::for_scenario(cfg), seed).run(a);
        mqso.push_back(a.indicators().best_before_change_error);
        BenchmarkSession b(cfg);
        RandomSearch<BenchmarkSession>(seed).run(b);
        random.push_back(b.indicators().best_before_change_error);
    }
    std::nth_element(mqso.begin(), mqso.begin() + 5, mqso.end());
    std::nth_element(random.begin(), random.begin() + 5, random.end());
    EXPECT_LT(mqso[5], random[5]);
}
