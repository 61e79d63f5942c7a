#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "ppr/oracles.hpp"
#include "reference.hpp"

using namespace ppr;

namespace {

DirectedGraph two_cycle() {
    const std::vector<Edge> edges{{0, 1}, {1, 0}};
    return from_edge_list(edges);
}

}  // namespace

TEST(TransitionMatrix, RowStochastic) {
    const DirectedGraph g = generate_power_law_in_degree(100, 3, 2.3, 4);
    const TransitionMatrix<double> p = transition_matrix(g);
    const Eigen::VectorXd rows = p * Eigen::VectorXd::Ones(p.cols());
    EXPECT_LT((rows.array() - 1.0).abs().maxCoeff(), 1e-12);
    EXPECT_EQ(p.coeff(g.sink(), g.sink()), 1.0);
}

TEST(PowerIteration, SweepCount) {
    EXPECT_EQ(power_iteration_count(0.5, 0.25), 2u);
    EXPECT_EQ(power_iteration_count(0.1, 1e-4),
              static_cast<std::size_t>(std::ceil(std::log(1e-4) / std::log(0.9))));
}

TEST(PowerIteration, SelfLoopConvergesToOne) {
    const DenseScoreVector x = power_iteration_to_target(make_self_loop(), 0, 0.1, 1e-10);
    EXPECT_NEAR(x[0], 1.0, 1e-10);
}

TEST(PowerIteration, TwoCycleClosedForm) {
    const double alpha = 0.2;
    const DenseScoreVector x = power_iteration_to_target(two_cycle(), 1, alpha, 1e-10);
    EXPECT_NEAR(x[1], 1.0 / (2.0 - alpha), 1e-10);
    EXPECT_NEAR(x[0], (1.0 - alpha) / (2.0 - alpha), 1e-10);
    EXPECT_EQ(x.size(), 2u);
}

TEST(PowerIteration, DeadEndStaysAtAlpha) {
    const DirectedGraph g = from_edge_list({}, 1);
    const TransitionMatrix<double> p = transition_matrix(g);
    for (std::size_t it = 1; it <= 5; ++it) {
        EXPECT_EQ(iterate_to_target<double>(p, 0, 0.2, it)(0), 0.2);
    }
}

TEST(DenseOracle, TwoCycleMatrix) {
    const Eigen::MatrixXd pi = dense_solve_all_pairs(two_cycle(), 0.2);
    EXPECT_NEAR(pi(0, 0), 5.0 / 9.0, 1e-12);
    EXPECT_NEAR(pi(0, 1), 4.0 / 9.0, 1e-12);
    EXPECT_NEAR(pi(1, 0), 4.0 / 9.0, 1e-12);
    EXPECT_NEAR(pi(1, 1), 5.0 / 9.0, 1e-12);
}

TEST(DenseOracle, MatchesReferenceSolveAndPowerIteration) {
    for (std::uint64_t seed : {1u, 2u}) {
        const DirectedGraph g = generate_power_law_in_degree(60, 3, 2.2, seed);
        const double alpha = 0.15;
        const Eigen::MatrixXd pi = dense_solve_all_pairs(g, alpha);
        const Eigen::MatrixXd ref = ppr::testing::reference_ppr(g, alpha);
        const auto n = static_cast<Eigen::Index>(g.num_nodes());
        EXPECT_LT((pi.topLeftCorner(n, n) - ref.topLeftCorner(n, n)).cwiseAbs().maxCoeff(), 1e-10);
        const Eigen::VectorXd rows = pi.rowwise().sum();
        EXPECT_LT((rows.array() - 1.0).abs().maxCoeff(), 1e-9);
        for (NodeId v : {0u, 13u, 59u}) {
            const DenseScoreVector power = power_iteration_to_target(g, v, alpha, 1e-12);
            const DenseScoreVector column = dense_column(pi, v, alpha);
            EXPECT_LT((power.values - column.values).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

TEST(DenseOracle, RespectsNodeCap) {
    EXPECT_THROW(dense_solve_all_pairs(make_cycle(501), 0.2), std::invalid_argument);
    EXPECT_NO_THROW(dense_solve_all_pairs(make_cycle(10), 0.2, 10));
}

TEST(MonteCarlo, DeadEndEstimateIsExactlyAlpha) {
    const DirectedGraph g = from_edge_list({}, 1);
    const MonteCarloResult r = monte_carlo_from_source(g, 0, 0.3, {1000, 5, 0});
    EXPECT_EQ(r[0], 0.3);
    EXPECT_EQ(r.find(0)->std_error, 0.0);
}

TEST(MonteCarlo, SelfLoopNearOne) {
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const MonteCarloResult r = monte_carlo_from_source(make_self_loop(), 0, 0.2, {20000, seed, 0});
        const WalkEstimate* e = r.find(0);
        ASSERT_NE(e, nullptr);
        EXPECT_NEAR(e->estimate, 1.0, 5.0 * e->std_error);
        total += e->estimate;
    }
    EXPECT_NEAR(total / 10.0, 1.0, 0.02);
}

TEST(MonteCarlo, TwoCycleWithinThreeSigma) {
    const MonteCarloResult r = monte_carlo_from_source(two_cycle(), 0, 0.2, {1000000, 11, 0});
    const WalkEstimate* e = r.find(1);
    ASSERT_NE(e, nullptr);
    EXPECT_GT(e->std_error, 0.0);
    EXPECT_NEAR(e->estimate, 4.0 / 9.0, 3.0 * e->std_error);
}

TEST(MonteCarlo, UnbiasedAcrossSeeds) {
    // The mean over 30 seeds should sit within 4 pooled standard errors.
    const DirectedGraph g = generate_uniform_random(30, 3, 8);
    const double alpha = 0.2;
    const Eigen::MatrixXd pi = ppr::testing::reference_ppr(g, alpha);
    const NodeId source = 4;
    const int seeds = 30;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(g.num_nodes());
    Eigen::VectorXd var = Eigen::VectorXd::Zero(g.num_nodes());
    for (int s = 0; s < seeds; ++s) {
        const MonteCarloResult r =
            monte_carlo_from_source(g, source, alpha, {5000, static_cast<std::uint64_t>(s), 0});
        for (const WalkEstimate& e : r.entries) {
            if (e.node < g.num_nodes()) {
                mean(e.node) += e.estimate / seeds;
                var(e.node) += e.std_error * e.std_error / (seeds * seeds);
            }
        }
    }
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        if (pi(source, u) > 0.01) {
            EXPECT_NEAR(mean(u), pi(source, u), 4.0 * std::sqrt(var(u))) << "node " << u;
        }
    }
}

TEST(MonteCarlo, Deterministic) {
    const DirectedGraph g = generate_uniform_random(50, 4, 1);
    const MonteCarloResult a = monte_carlo_from_source(g, 3, 0.2, {2000, 9, 0});
    const MonteCarloResult b = monte_carlo_from_source(g, 3, 0.2, {2000, 9, 0});
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        EXPECT_EQ(a.entries[i].node, b.entries[i].node);
        EXPECT_EQ(a.entries[i].estimate, b.entries[i].estimate);
    }
}

TEST(MonteCarlo, WeightedSampling) {
    // 0 -> 1 with weight 3, 0 -> 2 with weight 1.
    const std::vector<Edge> edges{{0, 1, 3.0}, {0, 2, 1.0}};
    const DirectedGraph g = from_edge_list(edges);
    const double alpha = 0.5;
    const MonteCarloResult r = monte_carlo_from_source(g, 0, alpha, {400000, 2, 0});
    const double expected = alpha * (1.0 - alpha) * 0.75;
    EXPECT_NEAR(r[1], expected, 4.0 * r.find(1)->std_error);
}

TEST(WalkCount, Formula) {
    EXPECT_EQ(walk_count_for(0.1, 0.1), 899u);
    const std::uint64_t base = walk_count_for(0.02, 0.05);
    const std::uint64_t halved = walk_count_for(0.01, 0.05);
    EXPECT_LE(std::abs(static_cast<double>(halved) - 4.0 * static_cast<double>(base)), 4.0);
    EXPECT_THROW(walk_count_for(0.1, 1.0), std::invalid_argument);
    EXPECT_THROW(walk_count_for(0.0, 0.1), std::invalid_argument);
}

TEST(GlobalPageRank, CycleIsUniform) {
    const DenseScoreVector g = global_pagerank(make_cycle(7), 0.15, 1e-12);
    for (NodeId u = 0; u < 7; ++u) {
        EXPECT_NEAR(g[u], 1.0 / 7.0, 1e-10);
    }
}

TEST(GlobalPageRank, MeanOfPersonalizedColumns) {
    const DirectedGraph graph = generate_power_law_in_degree(50, 3, 2.4, 6);
    const double alpha = 0.2;
    const double tol = 1e-11;
    const DenseScoreVector global = global_pagerank(graph, alpha, tol);
    const Eigen::MatrixXd pi = dense_solve_all_pairs(graph, alpha);
    const auto n = static_cast<Eigen::Index>(graph.num_nodes());
    for (NodeId v = 0; v < graph.num_nodes(); ++v) {
        const double mean = pi.col(v).head(n).mean();
        EXPECT_NEAR(global[v], mean, 10.0 * tol);
    }
}

TEST(GlobalPageRank, StarHubDominates) {
    const DenseScoreVector g = global_pagerank(make_star(10), 0.15, 1e-12);
    for (NodeId u = 1; u <= 10; ++u) {
        EXPECT_GT(g[0], g[u]);
    }
}
