#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ppr/analysis.hpp"
#include "ppr/graph.hpp"
#include "ppr/reverse_push.hpp"

namespace ppr {

struct BenchmarkConfig {
    std::vector<double> alphas{0.1, 0.2};
    std::vector<double> epsilons{1e-4};
    std::size_t targets_per_setting = 100;
    SamplingMode sampling_mode = SamplingMode::uniform;
    PushVariant variant = PushVariant::priority_queue;
    std::uint64_t seed = 1;
    /// Free-form description of where the graph came from (file path or generator spec).
    std::string graph_source;
    /// Worker threads for per-target runs.
    unsigned jobs = 1;
    /// Explicit targets; when set, sampling is skipped.
    std::optional<std::vector<NodeId>> targets;
};

/// Throws std::invalid_argument on out-of-range values.
void validate(const BenchmarkConfig& config);

struct TargetRecord {
    NodeId target = 0;
    PushStats stats;
    double work = 0.0;
    double max_error = 0.0;
    double error_over_epsilon = 0.0;
    DifficultyParams difficulty;
    double steps_over_d_v = 0.0;
    double work_over_d_v = 0.0;
    double theorem3 = 0.0;
};

inline constexpr std::size_t kErrorBuckets = 20;
inline constexpr std::size_t kStepBuckets = 48;

struct SettingReport {
    double alpha = 0.0;
    double epsilon = 0.0;
    double oracle_epsilon = 0.0;
    Theorem2Allowance theorem2{};
    std::vector<TargetRecord> records;

    double mean_steps = 0.0;
    double mean_pops = 0.0;
    double mean_work = 0.0;
    double mean_wall_seconds = 0.0;
    double mean_steps_over_d_v = 0.0;
    double max_error_over_epsilon = 0.0;

    /// error / epsilon in 20 linear buckets over [0, 1]; the last bucket takes
    /// everything >= 0.95.
    std::vector<std::uint64_t> error_histogram;
    /// Bucket 0 holds steps == 0, bucket b >= 1 holds 2^(b-1) <= steps < 2^b.
    std::vector<std::uint64_t> steps_histogram;

    std::size_t baseline_iterations = 0;
    double baseline_sweep_seconds = 0.0;
    double baseline_seconds = 0.0;
};

struct BenchmarkReport {
    BenchmarkConfig config;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::vector<SettingReport> settings;
    bool passed = true;
    /// "alpha=.. epsilon=.. target=.." for every record with error >= epsilon.
    std::vector<std::string> failures;
};

BenchmarkReport run_benchmark(const DirectedGraph& graph, const BenchmarkConfig& config);

std::size_t error_bucket(double error_over_epsilon) noexcept;
std::size_t steps_bucket(std::uint64_t steps) noexcept;

/// Mean wall time of one power-iteration sweep over the graph.
double time_power_sweep(const DirectedGraph& graph, double alpha, int repeats = 3);

/// "report-version: 1" text document. Fields carrying wall-clock measurements
/// are the ones whose key starts with "wall-".
void write_report(std::ostream& out, const BenchmarkReport& report);

/// Drops every "wall-" field from a serialized report.
std::string strip_wall_fields(const std::string& report_text);

}  // namespace ppr
