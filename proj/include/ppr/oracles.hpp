#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "ppr/graph.hpp"

namespace ppr {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using TransitionMatrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

/// Row-stochastic random-walk matrix over all stored nodes (sink included):
/// P(u, w) = weight(u, w) / weighted_out_degree(u), parallel edges summed.
template <typename Scalar = double>
TransitionMatrix<Scalar> transition_matrix(const DirectedGraph& graph) {
    const auto size = static_cast<Eigen::Index>(graph.storage_size());
    std::vector<Eigen::Triplet<Scalar>> triplets;
    for (NodeId u = 0; u < graph.storage_size(); ++u) {
        const Scalar degree = static_cast<Scalar>(graph.weighted_out_degree(u));
        for (const Arc& arc : graph.out(u)) {
            triplets.emplace_back(u, arc.node, static_cast<Scalar>(arc.weight) / degree);
        }
    }
    TransitionMatrix<Scalar> p(size, size);
    p.setFromTriplets(triplets.begin(), triplets.end());
    return p;
}

/// One application of x <- alpha e_target + (1 - alpha) P x.
template <typename Scalar>
void target_sweep(const TransitionMatrix<Scalar>& p, Eigen::Index target, Scalar alpha,
                  const Vector<Scalar>& x, Vector<Scalar>& next) {
    next.noalias() = (Scalar(1) - alpha) * (p * x);
    next(target) += alpha;
}

/// `iterations` sweeps from the zero vector; iterates are non-decreasing.
template <typename Scalar>
Vector<Scalar> iterate_to_target(const TransitionMatrix<Scalar>& p, Eigen::Index target,
                                 Scalar alpha, std::size_t iterations) {
    Vector<Scalar> x = Vector<Scalar>::Zero(p.rows());
    Vector<Scalar> next(p.rows());
    for (std::size_t i = 0; i < iterations; ++i) {
        target_sweep(p, target, alpha, x, next);
        x.swap(next);
    }
    return x;
}

/// pi(., target) for every stored node. Index n (the sink) is stored but is
/// not a reportable entry.
struct DenseScoreVector {
    NodeId target = 0;
    double alpha = 0.0;
    Eigen::VectorXd values;

    double operator[](NodeId u) const { return values(static_cast<Eigen::Index>(u)); }
    /// Real nodes only.
    std::size_t size() const noexcept {
        return values.size() > 0 ? static_cast<std::size_t>(values.size()) - 1 : 0;
    }
};

/// ceil(log(epsilon) / log(1 - alpha)): sweeps that bound the error by epsilon.
std::size_t power_iteration_count(double alpha, double epsilon);

DenseScoreVector power_iteration_to_target(const DirectedGraph& graph, NodeId target, double alpha,
                                           double epsilon);
DenseScoreVector power_iteration_to_target(const TransitionMatrix<double>& p,
                                           const DirectedGraph& graph, NodeId target,
                                           double alpha, double epsilon);

inline constexpr std::size_t kDenseNodeCap = 500;

/// Matrix of pi(u, v), rows = source, columns = target, over all stored nodes
/// (sink included). Iterates Pi <- alpha I + (1 - alpha) P Pi from zero until
/// the largest change implies an error below 1e-12.
Eigen::MatrixXd dense_solve_all_pairs(const DirectedGraph& graph, double alpha,
                                      std::size_t node_cap = kDenseNodeCap);

/// Column `target` of an all-pairs matrix.
DenseScoreVector dense_column(const Eigen::MatrixXd& all_pairs, NodeId target, double alpha);

struct WalkConfig {
    std::uint64_t num_walks = 1;
    std::uint64_t seed = 0;
    /// 0 selects ceil(50 / alpha).
    std::uint64_t max_steps_per_walk = 0;
};

struct WalkEstimate {
    NodeId node;
    double estimate;
    /// Standard error of the estimate from the per-walk visit variance.
    double std_error;
};

struct MonteCarloResult {
    NodeId source = 0;
    NodeId sink = 0;
    double alpha = 0.0;
    std::uint64_t num_walks = 0;
    std::uint64_t truncated = 0;
    /// Ordered by node; includes the sink when walks reach it.
    std::vector<WalkEstimate> entries;

    double operator[](NodeId u) const noexcept;
    const WalkEstimate* find(NodeId u) const noexcept;
};

/// estimate(v) = alpha * (visits to v over all walks) / num_walks.
MonteCarloResult monte_carlo_from_source(const DirectedGraph& graph, NodeId source, double alpha,
                                         const WalkConfig& config);

inline constexpr double kChernoffConstant = 3.0;

/// ceil(c / epsilon^2 * ln(2 / delta)).
std::uint64_t walk_count_for(double epsilon, double delta, double c = kChernoffConstant);

/// Global PageRank with uniform teleport over the real nodes, iterated until
/// successive iterates differ by less than `tolerance`. `target` is set to the
/// sink id; values sum to 1 over real nodes plus the sink.
DenseScoreVector global_pagerank(const DirectedGraph& graph, double alpha, double tolerance);

}  // namespace ppr
