#include "ppr/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ppr/format.hpp"
#include "ppr/oracles.hpp"

namespace ppr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double mean_of(const std::vector<TargetRecord>& records, auto field) {
    if (records.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const TargetRecord& r : records) {
        sum += field(r);
    }
    return sum / static_cast<double>(records.size());
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                fn(i);
            }
        });
    }
}

double time_sweeps(const TransitionMatrix<double>& p, double alpha, int repeats) {
    Eigen::VectorXd x = Eigen::VectorXd::Constant(p.rows(), 1.0 / static_cast<double>(p.rows()));
    Eigen::VectorXd next(p.rows());
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) {
        target_sweep<double>(p, 0, alpha, x, next);
        x.swap(next);
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // Keeps the sweeps observable.
    if (!std::isfinite(x.sum())) {
        throw std::runtime_error("power sweep diverged");
    }
    return elapsed / repeats;
}

}  // namespace

void validate(const BenchmarkConfig& config) {
    if (config.alphas.empty() || config.epsilons.empty()) {
        throw std::invalid_argument("benchmark needs at least one alpha and one epsilon");
    }
    for (double a : config.alphas) {
        check_alpha(a);
    }
    for (double e : config.epsilons) {
        check_epsilon(e);
    }
    if (config.targets_per_setting == 0 && !config.targets) {
        throw std::invalid_argument("targets_per_setting must be >= 1");
    }
    if (config.targets && config.targets->empty()) {
        throw std::invalid_argument("explicit target list is empty");
    }
}

std::size_t error_bucket(double error_over_epsilon) noexcept {
    if (!(error_over_epsilon > 0.0)) {
        return 0;
    }
    const auto b = static_cast<std::size_t>(error_over_epsilon * kErrorBuckets);
    return std::min(b, kErrorBuckets - 1);
}

std::size_t steps_bucket(std::uint64_t steps) noexcept {
    if (steps == 0) {
        return 0;
    }
    const auto b = static_cast<std::size_t>(std::bit_width(steps));
    return std::min(b, kStepBuckets - 1);
}

double time_power_sweep(const DirectedGraph& graph, double alpha, int repeats) {
    check_alpha(alpha);
    return time_sweeps(transition_matrix(graph), alpha, std::max(1, repeats));
}

BenchmarkReport run_benchmark(const DirectedGraph& graph, const BenchmarkConfig& config) {
    validate(config);
    if (config.targets) {
        for (NodeId t : *config.targets) {
            check_target(graph, t);
        }
    }
    BenchmarkReport report;
    report.config = config;
    report.nodes = graph.num_nodes();
    report.edges = graph.num_edges();

    const TransitionMatrix<double> p = transition_matrix(graph);
    for (std::size_t ai = 0; ai < config.alphas.size(); ++ai) {
        const double alpha = config.alphas[ai];
        const std::vector<NodeId> targets =
            config.targets ? *config.targets
                           : sample_targets(graph, config.targets_per_setting,
                                            config.sampling_mode, alpha,
                                            splitmix64(config.seed + ai));
        for (double epsilon : config.epsilons) {
            SettingReport setting;
            setting.alpha = alpha;
            setting.epsilon = epsilon;
            setting.oracle_epsilon = alpha * epsilon / 10.0;
            setting.theorem2 = theorem2_allowance(graph, alpha, epsilon);
            setting.records.resize(targets.size());

            parallel_for(targets.size(), config.jobs, [&](std::size_t i) {
                TargetRecord& rec = setting.records[i];
                rec.target = targets[i];
                PushOptions options;
                options.variant = config.variant;
                const PushResult push = ppr_to_target(graph, rec.target, alpha, epsilon, options);
                const DenseScoreVector exact = power_iteration_to_target(
                    p, graph, rec.target, alpha, setting.oracle_epsilon);
                rec.stats = push.stats;
                rec.work = instrumented_work(push.stats, graph.num_nodes());
                rec.max_error = max_additive_error(push.scores, exact);
                rec.error_over_epsilon = rec.max_error / epsilon;
                rec.difficulty = compute_d_v(graph, exact, alpha * epsilon);
                if (rec.difficulty.d_v > 0.0) {
                    rec.steps_over_d_v = static_cast<double>(rec.stats.steps) / rec.difficulty.d_v;
                    rec.work_over_d_v = rec.work / rec.difficulty.d_v;
                }
                rec.theorem3 = theorem3_allowance(rec.difficulty.d_v, alpha, epsilon);
            });

            const auto& recs = setting.records;
            setting.mean_steps = mean_of(recs, [](const TargetRecord& r) {
                return static_cast<double>(r.stats.steps);
            });
            setting.mean_pops = mean_of(recs, [](const TargetRecord& r) {
                return static_cast<double>(r.stats.pops);
            });
            setting.mean_work = mean_of(recs, [](const TargetRecord& r) { return r.work; });
            setting.mean_wall_seconds =
                mean_of(recs, [](const TargetRecord& r) { return r.stats.wall_seconds; });
            setting.mean_steps_over_d_v =
                mean_of(recs, [](const TargetRecord& r) { return r.steps_over_d_v; });
            setting.error_histogram.assign(kErrorBuckets, 0);
            setting.steps_histogram.assign(kStepBuckets, 0);
            for (const TargetRecord& r : recs) {
                setting.max_error_over_epsilon =
                    std::max(setting.max_error_over_epsilon, r.error_over_epsilon);
                ++setting.error_histogram[error_bucket(r.error_over_epsilon)];
                ++setting.steps_histogram[steps_bucket(r.stats.steps)];
                if (!(r.max_error < epsilon)) {
                    report.passed = false;
                    report.failures.push_back("alpha=" + format_double(alpha) +
                                              " epsilon=" + format_double(epsilon) +
                                              " target=" + std::to_string(r.target));
                }
            }

            setting.baseline_iterations = power_iteration_count(alpha, epsilon);
            setting.baseline_sweep_seconds = time_sweeps(p, alpha, 3);
            setting.baseline_seconds =
                setting.baseline_sweep_seconds * static_cast<double>(setting.baseline_iterations);
            report.settings.push_back(std::move(setting));
        }
    }
    return report;
}

namespace {

std::string join_counts(const std::vector<std::uint64_t>& counts) {
    std::string out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i > 0) {
            out += ' ';
        }
        out += std::to_string(counts[i]);
    }
    return out;
}

}  // namespace

void write_report(std::ostream& out, const BenchmarkReport& report) {
    const BenchmarkConfig& c = report.config;
    const auto f = format_double;
    out << "report-version: 1\n";
    out << "graph: " << c.graph_source << '\n';
    out << "nodes: " << report.nodes << '\n';
    out << "edges: " << report.edges << '\n';
    out << "variant: " << variant_name(c.variant) << '\n';
    out << "sampling-mode: " << sampling_mode_name(c.sampling_mode) << '\n';
    out << "seed: " << c.seed << '\n';
    out << "targets-per-setting: "
        << (c.targets ? c.targets->size() : c.targets_per_setting) << '\n';
    out << "log-base: 2\n";
    out << "theorem2-form: (1/(alpha*epsilon))*(m/n + log2 n); no-log form (1/(alpha*epsilon))*(m/n)\n";
    out << "theorem3-form: (2/alpha)*log2(1/(alpha*epsilon))*D_v(alpha*epsilon)\n";
    out << "quoted-proven-ratio: alpha=0.1 epsilon=1e-05 ratio=" << f(kQuotedProvenRatio)
        << " explicit-form-ratio=" << f(theorem3_allowance(1.0, 0.1, 1e-5)) << '\n';
    out << "status: " << (report.passed ? "pass" : "fail") << '\n';
    for (const std::string& failure : report.failures) {
        out << "failure: " << failure << '\n';
    }
    for (const SettingReport& s : report.settings) {
        out << "setting alpha=" << f(s.alpha) << " epsilon=" << f(s.epsilon) << '\n';
        out << "  oracle-epsilon: " << f(s.oracle_epsilon) << '\n';
        out << "  theorem2-allowance: " << f(s.theorem2.with_queue) << '\n';
        out << "  theorem2-allowance-no-log: " << f(s.theorem2.without_queue) << '\n';
        out << "  baseline-iterations: " << s.baseline_iterations << '\n';
        out << "  wall-baseline-sweep-seconds: " << f(s.baseline_sweep_seconds) << '\n';
        out << "  wall-baseline-seconds: " << f(s.baseline_seconds) << '\n';
        for (const TargetRecord& r : s.records) {
            out << "  record target=" << r.target << " pops=" << r.stats.pops
                << " steps=" << r.stats.steps << " touched=" << r.stats.distinct_touched
                << " work=" << f(r.work) << " max-error=" << f(r.max_error)
                << " error-over-epsilon=" << f(r.error_over_epsilon)
                << " d-v=" << f(r.difficulty.d_v) << " d-v-nodes=" << r.difficulty.contributors
                << " steps-over-d-v=" << f(r.steps_over_d_v)
                << " work-over-d-v=" << f(r.work_over_d_v) << " theorem3-allowance=" << f(r.theorem3)
                << " wall-seconds=" << f(r.stats.wall_seconds) << '\n';
        }
        out << "  mean-steps: " << f(s.mean_steps) << '\n';
        out << "  mean-pops: " << f(s.mean_pops) << '\n';
        out << "  mean-work: " << f(s.mean_work) << '\n';
        out << "  mean-steps-over-theorem2: " << f(s.mean_steps / s.theorem2.with_queue) << '\n';
        out << "  mean-steps-over-theorem2-no-log: "
            << f(s.theorem2.without_queue > 0.0 ? s.mean_steps / s.theorem2.without_queue : 0.0)
            << '\n';
        out << "  mean-steps-over-d-v: " << f(s.mean_steps_over_d_v) << '\n';
        out << "  max-error-over-epsilon: " << f(s.max_error_over_epsilon) << '\n';
        out << "  histogram-error-over-epsilon: " << join_counts(s.error_histogram) << '\n';
        out << "  histogram-log2-steps: " << join_counts(s.steps_histogram) << '\n';
        out << "  wall-mean-seconds: " << f(s.mean_wall_seconds) << '\n';
    }
    out << "end\n";
}

std::string strip_wall_fields(const std::string& report_text) {
    std::istringstream in(report_text);
    std::string result;
    for (std::string line; std::getline(in, line);) {
        const auto first = line.find_first_not_of(' ');
        if (first != std::string::npos && line.compare(first, 5, "wall-") == 0) {
            continue;
        }
        std::istringstream tokens(line);
        std::string kept(line.substr(0, first == std::string::npos ? line.size() : first));
        bool any = false;
        for (std::string tok; tokens >> tok;) {
            if (tok.rfind("wall-", 0) == 0) {
                continue;
            }
            if (any) {
                kept += ' ';
            }
            kept += tok;
            any = true;
        }
        result += kept;
        result += '\n';
    }
    return result;
}

}  // namespace ppr
