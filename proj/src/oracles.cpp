#include "ppr/oracles.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "ppr/reverse_push.hpp"

namespace ppr {

std::size_t power_iteration_count(double alpha, double epsilon) {
    check_alpha(alpha);
    check_epsilon(epsilon);
    return static_cast<std::size_t>(std::ceil(std::log(epsilon) / std::log(1.0 - alpha)));
}

DenseScoreVector power_iteration_to_target(const DirectedGraph& graph, NodeId target, double alpha,
                                           double epsilon) {
    check_target(graph, target);
    return power_iteration_to_target(transition_matrix(graph), graph, target, alpha, epsilon);
}

DenseScoreVector power_iteration_to_target(const TransitionMatrix<double>& p,
                                           const DirectedGraph& graph, NodeId target,
                                           double alpha, double epsilon) {
    check_target(graph, target);
    const std::size_t iterations = power_iteration_count(alpha, epsilon);
    return {target, alpha, iterate_to_target<double>(p, target, alpha, iterations)};
}

Eigen::MatrixXd dense_solve_all_pairs(const DirectedGraph& graph, double alpha,
                                      std::size_t node_cap) {
    check_alpha(alpha);
    if (graph.num_nodes() > node_cap) {
        throw std::invalid_argument("dense oracle limited to " + std::to_string(node_cap) +
                                    " nodes, graph has " + std::to_string(graph.num_nodes()));
    }
    const TransitionMatrix<double> p = transition_matrix(graph);
    const Eigen::Index size = p.rows();
    const Eigen::MatrixXd seed = alpha * Eigen::MatrixXd::Identity(size, size);
    Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(size, size);
    Eigen::MatrixXd next(size, size);
    // A change of c bounds the remaining error by c (1 - alpha) / alpha.
    constexpr double kResidual = 1e-12;
    const double error_per_change = (1.0 - alpha) / alpha;
    constexpr int kMaxSweeps = 1'000'000;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        next.noalias() = (1.0 - alpha) * (p * pi);
        next += seed;
        const double change = (next - pi).cwiseAbs().maxCoeff();
        pi.swap(next);
        if (change * error_per_change < kResidual) {
            return pi;
        }
    }
    throw std::runtime_error("dense oracle did not converge");
}

DenseScoreVector dense_column(const Eigen::MatrixXd& all_pairs, NodeId target, double alpha) {
    return {target, alpha, all_pairs.col(static_cast<Eigen::Index>(target))};
}

const WalkEstimate* MonteCarloResult::find(NodeId u) const noexcept {
    auto it = std::lower_bound(entries.begin(), entries.end(), u,
                               [](const WalkEstimate& e, NodeId key) { return e.node < key; });
    return it != entries.end() && it->node == u ? &*it : nullptr;
}

double MonteCarloResult::operator[](NodeId u) const noexcept {
    const WalkEstimate* e = find(u);
    return e != nullptr ? e->estimate : 0.0;
}

namespace {

// Weight-proportional out-neighbour choice via per-node prefix sums.
class NeighbourSampler {
public:
    explicit NeighbourSampler(const DirectedGraph& graph) : graph_(graph) {
        if (!graph.weighted()) {
            return;
        }
        offsets_.reserve(graph.storage_size() + 1);
        offsets_.push_back(0);
        for (NodeId u = 0; u < graph.storage_size(); ++u) {
            double running = 0.0;
            for (const Arc& arc : graph.out(u)) {
                running += arc.weight;
                prefix_.push_back(running);
            }
            offsets_.push_back(prefix_.size());
        }
    }

    template <typename Rng>
    NodeId operator()(NodeId u, Rng& rng) const {
        const auto out = graph_.out(u);
        if (out.size() == 1) {
            return out.front().node;
        }
        if (offsets_.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
            return out[pick(rng)].node;
        }
        const double* first = prefix_.data() + offsets_[u];
        const double* last = prefix_.data() + offsets_[u + 1];
        std::uniform_real_distribution<double> unit(0.0, *(last - 1));
        const double r = unit(rng);
        const auto idx = static_cast<std::size_t>(std::upper_bound(first, last, r) - first);
        return out[std::min(idx, out.size() - 1)].node;
    }

private:
    const DirectedGraph& graph_;
    std::vector<std::size_t> offsets_;
    std::vector<double> prefix_;
};

}  // namespace

MonteCarloResult monte_carlo_from_source(const DirectedGraph& graph, NodeId source, double alpha,
                                         const WalkConfig& config) {
    check_alpha(alpha);
    if (!graph.is_real(source)) {
        throw std::invalid_argument("source " + std::to_string(source) + " is not a real node");
    }
    if (config.num_walks == 0) {
        throw std::invalid_argument("num_walks must be >= 1");
    }
    const std::uint64_t cap = config.max_steps_per_walk > 0
                                  ? config.max_steps_per_walk
                                  : static_cast<std::uint64_t>(std::ceil(50.0 / alpha));

    NeighbourSampler sample(graph);
    std::mt19937_64 rng(config.seed);
    std::bernoulli_distribution halt(alpha);

    struct Moments {
        double sum = 0.0;
        double sum_sq = 0.0;
    };
    std::unordered_map<NodeId, Moments> moments;
    std::vector<std::pair<NodeId, std::uint64_t>> visits;

    MonteCarloResult result;
    result.source = source;
    result.sink = graph.sink();
    result.alpha = alpha;
    result.num_walks = config.num_walks;
    for (std::uint64_t walk = 0; walk < config.num_walks; ++walk) {
        visits.clear();
        NodeId at = source;
        bool halted = false;
        for (std::uint64_t step = 0; step < cap; ++step) {
            auto it = std::find_if(visits.begin(), visits.end(),
                                   [at](const auto& v) { return v.first == at; });
            if (it == visits.end()) {
                visits.emplace_back(at, 1);
            } else {
                ++it->second;
            }
            if (halt(rng)) {
                halted = true;
                break;
            }
            at = sample(at, rng);
        }
        if (!halted) {
            ++result.truncated;
        }
        for (const auto& [node, count] : visits) {
            Moments& m = moments[node];
            const auto c = static_cast<double>(count);
            m.sum += c;
            m.sum_sq += c * c;
        }
    }

    const auto n = static_cast<double>(config.num_walks);
    result.entries.reserve(moments.size());
    for (const auto& [node, m] : moments) {
        const double mean = m.sum / n;
        const double variance = std::max(0.0, m.sum_sq / n - mean * mean);
        result.entries.push_back({node, alpha * mean, alpha * std::sqrt(variance / n)});
    }
    std::sort(result.entries.begin(), result.entries.end(),
              [](const WalkEstimate& a, const WalkEstimate& b) { return a.node < b.node; });
    return result;
}

std::uint64_t walk_count_for(double epsilon, double delta, double c) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    if (!(c > 0.0)) {
        throw std::invalid_argument("Chernoff constant must be positive");
    }
    return static_cast<std::uint64_t>(std::ceil(c / (epsilon * epsilon) * std::log(2.0 / delta)));
}

DenseScoreVector global_pagerank(const DirectedGraph& graph, double alpha, double tolerance) {
    check_alpha(alpha);
    if (!(tolerance > 0.0 && tolerance < 1.0)) {
        throw std::invalid_argument("tolerance must lie in (0, 1)");
    }
    const TransitionMatrix<double> p = transition_matrix(graph);
    const Eigen::Index size = p.rows();
    const auto n = static_cast<Eigen::Index>(graph.num_nodes());
    Eigen::VectorXd teleport = Eigen::VectorXd::Zero(size);
    teleport.head(n).setConstant(1.0 / static_cast<double>(n));

    Eigen::VectorXd x = teleport;
    Eigen::VectorXd next(size);
    for (;;) {
        next.noalias() = (1.0 - alpha) * (p.transpose() * x);
        next += alpha * teleport;
        const double change = (next - x).cwiseAbs().maxCoeff();
        x.swap(next);
        if (change < tolerance) {
            break;
        }
    }
    return {graph.sink(), alpha, std::move(x)};
}

}  // namespace ppr
