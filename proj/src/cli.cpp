#include "ppr/cli.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "ppr/analysis.hpp"
#include "ppr/benchmark.hpp"
#include "ppr/format.hpp"
#include "ppr/oracles.hpp"
#include "ppr/reverse_push.hpp"
#include "ppr/verify.hpp"

namespace ppr::cli {

namespace {

/// A failure that maps to a specific exit code.
struct Failure : std::runtime_error {
    Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

[[noreturn]] void usage_error(const std::string& what) { throw Failure(kUsage, what); }

std::map<std::string, std::string> parse_params(const std::string& text, const std::string& spec) {
    std::map<std::string, std::string> params;
    std::istringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        if (item.empty()) {
            continue;
        }
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("generator spec '" + spec + "': expected key=value, got '" +
                                        item + "'");
        }
        params[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return params;
}

template <typename T>
T take(std::map<std::string, std::string>& params, const std::string& key, const std::string& spec,
       std::optional<T> fallback = std::nullopt) {
    auto it = params.find(key);
    if (it == params.end()) {
        if (fallback) {
            return *fallback;
        }
        throw std::invalid_argument("generator spec '" + spec + "' needs " + key + "=");
    }
    T value{};
    const std::string& text = it->second;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("generator spec '" + spec + "': bad value for " + key);
    }
    params.erase(it);
    return value;
}

struct GraphSource {
    std::string path;
    std::string spec;
    std::uint64_t seed = 1;

    void add_to(CLI::App& app) {
        app.add_option("--graph", path, "Edge-list file ('u v' or 'u v w' per line)");
        app.add_option("--gen", spec,
                       "Generator spec, e.g. uniform:n=1000,d=10 or powerlaw:n=1000,d=10,exponent=2.5");
        app.add_option("--seed", seed, "Seed for every random choice")->capture_default_str();
    }

    std::string describe() const { return path.empty() ? "gen:" + spec : "file:" + path; }

    void check() const {
        if (path.empty() == spec.empty()) {
            usage_error("exactly one of --graph or --gen is required");
        }
    }

    DirectedGraph load() const {
        check();
        if (!spec.empty()) {
            try {
                return generate_from_spec(spec, seed);
            } catch (const std::invalid_argument& e) {
                usage_error(std::string("--gen: ") + e.what());
            } catch (const GraphError& e) {
                usage_error(std::string("--gen: ") + e.what());
            }
        }
        try {
            return load_edge_list_file(path);
        } catch (const GraphError& e) {
            throw Failure(kIoError, "cannot load graph '" + path + "': " + e.what());
        }
    }
};

void check_flag(const std::string& flag, double value) {
    if (!(value > 0.0 && value < 1.0)) {
        usage_error(flag + " must lie in (0, 1), got " + format_double(value));
    }
}

void check_node(const std::string& flag, const DirectedGraph& graph, std::int64_t node) {
    if (node < 0 || static_cast<std::uint64_t>(node) >= graph.num_nodes()) {
        usage_error(flag + " " + std::to_string(node) + " is out of range [0, " +
                    std::to_string(graph.num_nodes()) + ")");
    }
}

PushVariant variant_from(const std::string& name) {
    auto v = parse_variant(name);
    if (!v) {
        usage_error("--variant must be pq or set, got '" + name + "'");
    }
    return *v;
}

/// Writes through `body` to the --out file when given, else to `out`.
template <typename Body>
void emit(const std::string& path, std::ostream& out, Body&& body) {
    if (path.empty()) {
        body(out);
        return;
    }
    std::ofstream file(path);
    if (!file) {
        throw Failure(kIoError, "cannot open output file '" + path + "'");
    }
    body(file);
    if (!file) {
        throw Failure(kIoError, "failed writing '" + path + "'");
    }
}

}  // namespace

DirectedGraph generate_from_spec(const std::string& spec, std::uint64_t seed) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    auto params = parse_params(colon == std::string::npos ? "" : spec.substr(colon + 1), spec);
    DirectedGraph graph = [&] {
        if (kind == "uniform") {
            const auto n = take<std::size_t>(params, "n", spec);
            const auto d = take<double>(params, "d", spec);
            return generate_uniform_random(n, d, seed);
        }
        if (kind == "powerlaw") {
            const auto n = take<std::size_t>(params, "n", spec);
            const auto d = take<double>(params, "d", spec);
            const auto exponent = take<double>(params, "exponent", spec, 2.5);
            return generate_power_law_in_degree(n, d, exponent, seed);
        }
        if (kind == "cycle") {
            return make_cycle(take<std::size_t>(params, "n", spec));
        }
        if (kind == "star") {
            return make_star(take<std::size_t>(params, "k", spec));
        }
        if (kind == "selfloop") {
            return make_self_loop();
        }
        if (kind == "twocycle") {
            return make_cycle(2);
        }
        throw std::invalid_argument("unknown generator '" + kind +
                                    "' (uniform, powerlaw, cycle, star, selfloop, twocycle)");
    }();
    if (!params.empty()) {
        throw std::invalid_argument("generator spec '" + spec + "': unknown key " +
                                    params.begin()->first);
    }
    return graph;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Personalized PageRank to a target node by reverse push"};
    app.name("ppr");
    app.require_subcommand(1);

    // query
    GraphSource query_graph;
    std::int64_t query_target = -1;
    double query_alpha = 0.1;
    double query_epsilon = 1e-4;
    std::string query_variant = "pq";
    std::string query_out;
    CLI::App* query = app.add_subcommand("query", "Estimate pi(u, target) for every u");
    query_graph.add_to(*query);
    query->add_option("--target", query_target, "Target node")->required();
    query->add_option("--alpha", query_alpha, "Teleport probability")->capture_default_str();
    query->add_option("--epsilon", query_epsilon, "Additive error")->capture_default_str();
    query->add_option("--variant", query_variant, "pq or set")->capture_default_str();
    query->add_option("--out", query_out, "Output TSV path (default stdout)");

    // baseline
    GraphSource base_graph;
    std::string base_oracle;
    std::int64_t base_target = -1;
    std::int64_t base_source = -1;
    double base_alpha = 0.1;
    double base_epsilon = 1e-4;
    std::uint64_t base_walks = 0;
    double base_delta = 0.1;
    std::uint64_t base_max_steps = 0;
    double base_tolerance = 1e-10;
    std::string base_out;
    CLI::App* baseline = app.add_subcommand("baseline", "Reference computations");
    base_graph.add_to(*baseline);
    baseline->add_option("--oracle", base_oracle, "power, monte-carlo or global")->required();
    baseline->add_option("--target", base_target, "Target node (power)");
    baseline->add_option("--source", base_source, "Source node (monte-carlo)");
    baseline->add_option("--alpha", base_alpha, "Teleport probability")->capture_default_str();
    baseline->add_option("--epsilon", base_epsilon,
                         "Additive error (power; monte-carlo walk count when --walks is absent)")
        ->capture_default_str();
    baseline->add_option("--walks", base_walks, "Monte Carlo walk count");
    baseline->add_option("--delta", base_delta, "Monte Carlo failure probability")
        ->capture_default_str();
    baseline->add_option("--max-steps", base_max_steps, "Per-walk step cap (default ceil(50/alpha))");
    baseline->add_option("--tolerance", base_tolerance, "Global PageRank stopping tolerance")
        ->capture_default_str();
    baseline->add_option("--out", base_out, "Output TSV path (default stdout)");

    // bench
    GraphSource bench_graph;
    std::vector<double> bench_alphas{0.1, 0.2};
    std::vector<double> bench_epsilons{1e-4};
    std::size_t bench_targets = 100;
    std::string bench_sampling = "uniform";
    std::string bench_variant = "pq";
    unsigned bench_jobs = 1;
    std::string bench_out;
    CLI::App* bench = app.add_subcommand("bench", "Benchmark against the power-iteration oracle");
    bench_graph.add_to(*bench);
    bench->add_option("--alpha,--alphas", bench_alphas, "Comma-separated alphas")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--epsilon,--epsilons", bench_epsilons, "Comma-separated epsilons")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--targets", bench_targets, "Targets per setting")->capture_default_str();
    bench->add_option("--sampling", bench_sampling, "uniform or pagerank")->capture_default_str();
    bench->add_option("--variant", bench_variant, "pq or set")->capture_default_str();
    bench->add_option("--jobs", bench_jobs, "Worker threads")->capture_default_str();
    bench->add_option("--out", bench_out, "Report path (default stdout)");

    // gen
    std::string gen_spec;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("gen", "Write a generated graph as an edge list");
    gen->add_option("--gen", gen_spec, "Generator spec")->required();
    gen->add_option("--seed", gen_seed, "Seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Edge-list path (default stdout)");

    // verify
    GraphSource verify_graph_src;
    double verify_alpha = 0.1;
    double verify_epsilon = 1e-4;
    bool verify_stop_at_epsilon = false;
    CLI::App* verify = app.add_subcommand("verify", "Check every invariant on a small graph");
    verify_graph_src.add_to(*verify);
    verify->add_option("--alpha", verify_alpha, "Teleport probability")->capture_default_str();
    verify->add_option("--epsilon", verify_epsilon, "Additive error")->capture_default_str();
    verify->add_flag("--debug-stop-at-epsilon", verify_stop_at_epsilon,
                     "Stop pushing at epsilon instead of alpha*epsilon")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*query) {
            query_graph.check();
            check_flag("--alpha", query_alpha);
            check_flag("--epsilon", query_epsilon);
            const PushVariant variant = variant_from(query_variant);
            const DirectedGraph graph = query_graph.load();
            check_node("--target", graph, query_target);
            PushOptions options;
            options.variant = variant;
            const PushResult result = ppr_to_target(graph, static_cast<NodeId>(query_target),
                                                    query_alpha, query_epsilon, options);
            emit(query_out, out, [&](std::ostream& os) {
                write_score_tsv(os, result.scores, query_epsilon, variant);
            });
            err << "pops=" << result.stats.pops << " steps=" << result.stats.steps
                << " touched=" << result.stats.distinct_touched
                << " result-size=" << result.scores.size()
                << " wall-seconds=" << format_double(result.stats.wall_seconds) << '\n';
            return kOk;
        }

        if (*baseline) {
            base_graph.check();
            check_flag("--alpha", base_alpha);
            if (base_oracle == "power") {
                check_flag("--epsilon", base_epsilon);
                const DirectedGraph graph = base_graph.load();
                check_node("--target", graph, base_target);
                const DenseScoreVector scores = power_iteration_to_target(
                    graph, static_cast<NodeId>(base_target), base_alpha, base_epsilon);
                emit(base_out, out, [&](std::ostream& os) {
                    write_dense_tsv(os, scores, "power",
                                    "target=" + std::to_string(base_target) +
                                        " alpha=" + format_double(base_alpha) +
                                        " epsilon=" + format_double(base_epsilon));
                });
                err << "iterations=" << power_iteration_count(base_alpha, base_epsilon) << '\n';
                return kOk;
            }
            if (base_oracle == "monte-carlo") {
                if (base_walks == 0) {
                    check_flag("--epsilon", base_epsilon);
                    check_flag("--delta", base_delta);
                }
                const DirectedGraph graph = base_graph.load();
                check_node("--source", graph, base_source);
                WalkConfig config;
                config.num_walks =
                    base_walks > 0 ? base_walks : walk_count_for(base_epsilon, base_delta);
                config.seed = base_graph.seed;
                config.max_steps_per_walk = base_max_steps;
                const MonteCarloResult result = monte_carlo_from_source(
                    graph, static_cast<NodeId>(base_source), base_alpha, config);
                emit(base_out, out, [&](std::ostream& os) {
                    write_monte_carlo_tsv(os, result, config.seed);
                });
                err << "walks=" << result.num_walks << " truncated=" << result.truncated << '\n';
                return kOk;
            }
            if (base_oracle == "global") {
                check_flag("--tolerance", base_tolerance);
                const DirectedGraph graph = base_graph.load();
                const DenseScoreVector scores = global_pagerank(graph, base_alpha, base_tolerance);
                emit(base_out, out, [&](std::ostream& os) {
                    write_dense_tsv(os, scores, "global",
                                    "alpha=" + format_double(base_alpha) +
                                        " tolerance=" + format_double(base_tolerance));
                });
                return kOk;
            }
            usage_error("--oracle must be power, monte-carlo or global, got '" + base_oracle + "'");
        }

        if (*bench) {
            bench_graph.check();
            BenchmarkConfig config;
            config.alphas = bench_alphas;
            config.epsilons = bench_epsilons;
            if (config.alphas.empty() || config.epsilons.empty()) {
                usage_error("--alphas and --epsilons need at least one value");
            }
            for (double a : config.alphas) {
                check_flag("--alphas", a);
            }
            for (double e : config.epsilons) {
                check_flag("--epsilons", e);
            }
            if (bench_targets == 0) {
                usage_error("--targets must be >= 1");
            }
            config.targets_per_setting = bench_targets;
            auto mode = parse_sampling_mode(bench_sampling);
            if (!mode) {
                usage_error("--sampling must be uniform or pagerank, got '" + bench_sampling + "'");
            }
            config.sampling_mode = *mode;
            config.variant = variant_from(bench_variant);
            config.seed = bench_graph.seed;
            config.graph_source = bench_graph.describe();
            config.jobs = bench_jobs;
            const DirectedGraph graph = bench_graph.load();
            const BenchmarkReport report = run_benchmark(graph, config);
            emit(bench_out, out, [&](std::ostream& os) { write_report(os, report); });
            if (!report.passed) {
                err << "error bound violated for " << report.failures.size() << " record(s)\n";
                return kVerificationFailed;
            }
            return kOk;
        }

        if (*gen) {
            DirectedGraph graph = [&] {
                try {
                    return generate_from_spec(gen_spec, gen_seed);
                } catch (const std::invalid_argument& e) {
                    usage_error(std::string("--gen: ") + e.what());
                } catch (const GraphError& e) {
                    usage_error(std::string("--gen: ") + e.what());
                }
            }();
            emit(gen_out, out, [&](std::ostream& os) { write_edge_list(os, graph); });
            return kOk;
        }

        if (*verify) {
            verify_graph_src.check();
            check_flag("--alpha", verify_alpha);
            check_flag("--epsilon", verify_epsilon);
            const DirectedGraph graph = verify_graph_src.load();
            if (graph.num_nodes() > kDenseNodeCap) {
                usage_error("verify is limited to graphs with at most " +
                            std::to_string(kDenseNodeCap) + " nodes, got " +
                            std::to_string(graph.num_nodes()));
            }
            VerifyOptions options;
            if (verify_stop_at_epsilon) {
                options.stop_threshold = verify_epsilon;
            }
            const VerifyReport report =
                verify_graph(graph, verify_alpha, verify_epsilon, options);
            write_verify_table(out, report);
            return report.passed() ? kOk : kVerificationFailed;
        }
    } catch (const Failure& f) {
        err << "ppr: " << f.what() << '\n';
        if (f.code == kUsage) {
            err << "run 'ppr --help' for usage\n";
        }
        return f.code;
    } catch (const std::invalid_argument& e) {
        err << "ppr: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "ppr: " << e.what() << '\n';
        return kIoError;
    }
    return kUsage;
}

}  // namespace ppr::cli
