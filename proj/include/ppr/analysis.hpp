#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ppr/graph.hpp"
#include "ppr/oracles.hpp"
#include "ppr/reverse_push.hpp"

namespace ppr {

/// D_v(x) = sum over real u with pi(u, v) > x of (|in(u)| + log2 n).
struct DifficultyParams {
    double threshold = 0.0;
    double d_v = 0.0;
    std::size_t contributors = 0;
    int log_base = 2;
};

/// `exact` must be accurate well below x (oracle epsilon <= x / 10).
DifficultyParams compute_d_v(const DirectedGraph& graph, const DenseScoreVector& exact, double x);

/// max over real u of |s(u) - pi(u, v)|, absent entries counting as 0.
double max_additive_error(const ScoreVector& estimate, const DenseScoreVector& exact);

enum class SamplingMode { uniform, pagerank };

std::string_view sampling_mode_name(SamplingMode mode) noexcept;
std::optional<SamplingMode> parse_sampling_mode(std::string_view name) noexcept;

/// k targets with replacement, uniformly or proportionally to global PageRank.
std::vector<NodeId> sample_targets(const DirectedGraph& graph, std::size_t k, SamplingMode mode,
                                   double alpha, std::uint64_t seed);

/// Tolerance used for the global PageRank behind pagerank-mode sampling.
inline constexpr double kSamplingPageRankTolerance = 1e-10;

struct Theorem2Allowance {
    /// (1 / (alpha epsilon)) (m / n + log2 n): priority-queue form.
    double with_queue;
    /// (1 / (alpha epsilon)) (m / n): work-set form.
    double without_queue;
};

Theorem2Allowance theorem2_allowance(std::size_t n, std::size_t m, double alpha, double epsilon);
Theorem2Allowance theorem2_allowance(const DirectedGraph& graph, double alpha, double epsilon);

/// (2 / alpha) log2(1 / (alpha epsilon)) d_v.
double theorem3_allowance(double d_v, double alpha, double epsilon);

/// Published O-form ratio between steps and D_v at alpha = 0.1, epsilon = 1e-5, kept for
/// comparison with the explicit-constant form above.
inline constexpr double kQuotedProvenRatio = 200.0;

/// Power-law average-time bound c (m / n^(1/beta)) (1 / (alpha epsilon))^(1/beta)
/// with c = (1 - beta)^(1/beta - 1). beta must lie in (0, 1).
double power_law_bound(double n, double m, double beta, double alpha, double epsilon);
double power_law_constant(double beta);

/// Negated least-squares slope of log(value) on log(rank) over ranks 2..k of
/// the descending positive values, k = number of values above 1e-12.
double fit_power_law_exponent(std::span<const double> values);
double fit_power_law_exponent(const DenseScoreVector& scores);

/// Instrumented queue work sum over pops of (|in(u)| + log2 n).
inline double instrumented_work(const PushStats& stats, std::size_t n) {
    return static_cast<double>(stats.steps) +
           static_cast<double>(stats.pops) * std::log2(static_cast<double>(n));
}

}  // namespace ppr
