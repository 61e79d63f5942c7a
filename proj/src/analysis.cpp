#include "ppr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace ppr {

DifficultyParams compute_d_v(const DirectedGraph& graph, const DenseScoreVector& exact, double x) {
    if (!(x > 0.0)) {
        throw std::invalid_argument("D_v threshold must be positive");
    }
    if (exact.size() != graph.num_nodes()) {
        throw std::invalid_argument("score vector does not match graph size");
    }
    const double log_n = std::log2(static_cast<double>(graph.num_nodes()));
    DifficultyParams params;
    params.threshold = x;
    for (NodeId u = 0; u < graph.num_nodes(); ++u) {
        if (exact[u] > x) {
            params.d_v += static_cast<double>(graph.in_degree(u)) + log_n;
            ++params.contributors;
        }
    }
    return params;
}

double max_additive_error(const ScoreVector& estimate, const DenseScoreVector& exact) {
    if (estimate.target() != exact.target) {
        throw std::invalid_argument("estimate and reference have different targets");
    }
    if (estimate.alpha() != exact.alpha) {
        throw std::invalid_argument("estimate and reference have different alpha");
    }
    double worst = 0.0;
    const auto n = static_cast<NodeId>(exact.size());
    auto entries = estimate.entries();
    auto it = entries.begin();
    for (NodeId u = 0; u < n; ++u) {
        double s = 0.0;
        if (it != entries.end() && it->node == u) {
            s = it->score;
            ++it;
        }
        worst = std::max(worst, std::abs(s - exact[u]));
    }
    return worst;
}

std::string_view sampling_mode_name(SamplingMode mode) noexcept {
    return mode == SamplingMode::uniform ? "uniform" : "pagerank";
}

std::optional<SamplingMode> parse_sampling_mode(std::string_view name) noexcept {
    if (name == "uniform") {
        return SamplingMode::uniform;
    }
    if (name == "pagerank") {
        return SamplingMode::pagerank;
    }
    return std::nullopt;
}

std::vector<NodeId> sample_targets(const DirectedGraph& graph, std::size_t k, SamplingMode mode,
                                   double alpha, std::uint64_t seed) {
    if (k == 0) {
        throw std::invalid_argument("need at least one target");
    }
    std::mt19937_64 rng(seed);
    std::vector<NodeId> targets;
    targets.reserve(k);
    if (mode == SamplingMode::uniform) {
        std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(graph.num_nodes() - 1));
        for (std::size_t i = 0; i < k; ++i) {
            targets.push_back(pick(rng));
        }
        return targets;
    }
    const DenseScoreVector global = global_pagerank(graph, alpha, kSamplingPageRankTolerance);
    const auto n = static_cast<Eigen::Index>(graph.num_nodes());
    const Eigen::VectorXd weights = global.values.head(n);
    std::discrete_distribution<NodeId> pick(weights.data(), weights.data() + weights.size());
    for (std::size_t i = 0; i < k; ++i) {
        targets.push_back(pick(rng));
    }
    return targets;
}

Theorem2Allowance theorem2_allowance(std::size_t n, std::size_t m, double alpha, double epsilon) {
    check_alpha(alpha);
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    }
    if (n == 0) {
        throw std::invalid_argument("graph has no nodes");
    }
    const double scale = 1.0 / (alpha * epsilon);
    const double avg_degree = static_cast<double>(m) / static_cast<double>(n);
    return {scale * (avg_degree + std::log2(static_cast<double>(n))), scale * avg_degree};
}

Theorem2Allowance theorem2_allowance(const DirectedGraph& graph, double alpha, double epsilon) {
    return theorem2_allowance(graph.num_nodes(), graph.num_edges(), alpha, epsilon);
}

double theorem3_allowance(double d_v, double alpha, double epsilon) {
    check_alpha(alpha);
    check_epsilon(epsilon);
    if (!(d_v >= 0.0)) {
        throw std::invalid_argument("D_v must be non-negative");
    }
    return (2.0 / alpha) * std::log2(1.0 / (alpha * epsilon)) * d_v;
}

double power_law_constant(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw std::invalid_argument("beta must lie in (0, 1)");
    }
    return std::pow(1.0 - beta, 1.0 / beta - 1.0);
}

double power_law_bound(double n, double m, double beta, double alpha, double epsilon) {
    const double c = power_law_constant(beta);
    check_alpha(alpha);
    check_epsilon(epsilon);
    if (!(n > 0.0) || !(m >= 0.0)) {
        throw std::invalid_argument("need n > 0 and m >= 0");
    }
    const double inv = 1.0 / beta;
    return c * (m / std::pow(n, inv)) * std::pow(1.0 / (alpha * epsilon), inv);
}

double fit_power_law_exponent(std::span<const double> values) {
    std::vector<double> positive;
    for (double v : values) {
        if (v > 0.0) {
            positive.push_back(v);
        }
    }
    if (positive.size() < 10) {
        throw std::invalid_argument("power-law fit needs at least 10 positive values, got " +
                                    std::to_string(positive.size()));
    }
    std::sort(positive.begin(), positive.end(), std::greater<>());
    const auto k = static_cast<std::size_t>(
        std::count_if(positive.begin(), positive.end(), [](double v) { return v > 1e-12; }));
    if (k < 3) {
        throw std::invalid_argument("power-law fit needs values above 1e-12");
    }
    // Ranks are 1-based; rank 1 is excluded from the fit.
    const auto count = static_cast<Eigen::Index>(k - 1);
    Eigen::VectorXd x(count);
    Eigen::VectorXd y(count);
    for (Eigen::Index i = 0; i < count; ++i) {
        x(i) = std::log(static_cast<double>(i + 2));
        y(i) = std::log(positive[static_cast<std::size_t>(i) + 1]);
    }
    const double x_mean = x.mean();
    const double y_mean = y.mean();
    const Eigen::VectorXd dx = x.array() - x_mean;
    const double slope = dx.dot(y.array().matrix() - Eigen::VectorXd::Constant(count, y_mean)) /
                         dx.squaredNorm();
    return -slope;
}

double fit_power_law_exponent(const DenseScoreVector& scores) {
    const auto n = static_cast<Eigen::Index>(scores.size());
    return fit_power_law_exponent(std::span<const double>(scores.values.data(), n));
}

}  // namespace ppr
