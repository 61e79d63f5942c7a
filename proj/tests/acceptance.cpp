// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ppr/analysis.hpp"
#include "ppr/benchmark.hpp"
#include "ppr/cli.hpp"
#include "ppr/format.hpp"
#include "ppr/oracles.hpp"
#include "ppr/reverse_push.hpp"
#include "reference.hpp"

using namespace ppr;

namespace {

struct Fixture {
    std::string name;
    DirectedGraph graph;
};

std::vector<Fixture> corpus() {
    std::vector<Fixture> out;
    const std::vector<Edge> two{{0, 1}, {1, 0}};
    out.push_back({"two-cycle", from_edge_list(two)});
    out.push_back({"self-loop", make_self_loop()});
    out.push_back({"star-10", make_star(10)});
    out.push_back({"cycle-50", make_cycle(50)});
    out.push_back({"uniform-200-d8", generate_uniform_random(200, 8, 1)});
    out.push_back({"powerlaw-200-d8", generate_power_law_in_degree(200, 8, 2.5, 1)});
    return out;
}

const double kAlphas[] = {0.1, 0.2};
const double kEpsilons[] = {1e-2, 1e-4, 1e-6};

/// Dense all-pairs matrices per fixture and alpha, computed once.
struct Exact {
    const Fixture* fixture;
    double alpha;
    Eigen::MatrixXd pi;
};

std::vector<Exact> solve_corpus(const std::vector<Fixture>& fixtures) {
    std::vector<Exact> out;
    for (const Fixture& f : fixtures) {
        for (double alpha : kAlphas) {
            out.push_back({&f, alpha, dense_solve_all_pairs(f.graph, alpha)});
        }
    }
    return out;
}

PushOptions options_for(PushVariant variant) {
    PushOptions o;
    o.variant = variant;
    return o;
}

double max_error(const ScoreVector& s, const Eigen::MatrixXd& pi, NodeId v, std::size_t n) {
    double worst = 0.0;
    for (NodeId u = 0; u < n; ++u) {
        worst = std::max(worst, std::abs(pi(u, v) - s[u]));
    }
    return worst;
}

int failures = 0;

void report(int id, const std::string& name, bool passed, const std::string& detail) {
    std::cout << (passed ? "PASS" : "FAIL") << "  [" << id << "] " << name << ": " << detail
              << std::endl;
    if (!passed) {
        ++failures;
    }
}

std::string f(double x) { return format_double(x); }

/// Largest error/((1 - alpha) eps) ratio across the corpus for one variant.
struct BoundSweep {
    double worst_ratio = 0.0;
    std::string worst_where;
    std::size_t runs = 0;
    std::size_t over_half_epsilon = 0;
};

BoundSweep sweep_error_bound(const std::vector<Exact>& exact, PushVariant variant) {
    BoundSweep out;
    for (const Exact& e : exact) {
        const DirectedGraph& g = e.fixture->graph;
        for (double eps : kEpsilons) {
            for (NodeId v = 0; v < g.num_nodes(); ++v) {
                const PushResult r = ppr_to_target(g, v, e.alpha, eps, options_for(variant));
                const double err = max_error(r.scores, e.pi, v, g.num_nodes());
                const double ratio = err / ((1.0 - e.alpha) * eps);
                if (ratio > out.worst_ratio) {
                    out.worst_ratio = ratio;
                    out.worst_where = e.fixture->name + " alpha=" + f(e.alpha) + " eps=" + f(eps) +
                                      " target=" + std::to_string(v);
                }
                out.over_half_epsilon += err > 0.5 * eps ? 1 : 0;
                ++out.runs;
            }
        }
    }
    return out;
}

std::string describe(const BoundSweep& s) {
    return std::to_string(s.runs) + " runs, max error/((1-alpha)eps)=" + f(s.worst_ratio) + " at " +
           s.worst_where + "; runs with error > 0.5 eps: " + std::to_string(s.over_half_epsilon);
}

void criterion_tightness(const std::vector<Exact>& exact) {
    std::size_t hits = 0;
    std::size_t runs = 0;
    double worst = 0.0;
    std::string where;
    for (const Exact& e : exact) {
        const DirectedGraph& g = e.fixture->graph;
        for (double eps : kEpsilons) {
            for (NodeId v = 0; v < g.num_nodes(); ++v) {
                PushOptions o;
                o.stop_threshold = eps;
                const PushResult r = ppr_to_target(g, v, e.alpha, eps, o);
                const double over = max_error(r.scores, e.pi, v, g.num_nodes()) / eps;
                ++runs;
                if (over >= 1.0) {
                    ++hits;
                }
                if (over > worst) {
                    worst = over;
                    where = e.fixture->name + " alpha=" + f(e.alpha) + " eps=" + f(eps) +
                            " target=" + std::to_string(v);
                }
            }
        }
    }
    report(2, "raised-threshold-sentinel", hits > 0,
           std::to_string(hits) + "/" + std::to_string(runs) +
               " runs with error >= eps under stop threshold eps; max error/eps=" + f(worst) +
               " at " + where);
}

void criterion_theorem2() {
    const DirectedGraph g = generate_uniform_random(300, 10, 1);
    const double alpha = 0.1;
    const double eps = 1e-3;
    double pq_steps = 0.0;
    double ws_steps = 0.0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        pq_steps += static_cast<double>(
            ppr_to_target(g, v, alpha, eps, options_for(PushVariant::priority_queue)).stats.steps);
        ws_steps += static_cast<double>(
            ppr_to_target(g, v, alpha, eps, options_for(PushVariant::work_set)).stats.steps);
    }
    const double n = static_cast<double>(g.num_nodes());
    const double m = static_cast<double>(g.num_edges());
    // Allowances recomputed here from the closed form.
    const double with_queue = (1.0 / (alpha * eps)) * (m / n + std::log2(n));
    const double without_queue = (1.0 / (alpha * eps)) * (m / n);
    const double mean_pq = pq_steps / n;
    const double mean_ws = ws_steps / n;
    report(3, "mean-steps-allowance", mean_pq <= with_queue && mean_ws <= without_queue,
           "n=300 m=" + std::to_string(g.num_edges()) + " priority_queue mean=" + f(mean_pq) +
               " allowance=" + f(with_queue) + " (" + f(100.0 * mean_pq / with_queue) +
               "%); work_set mean=" + f(mean_ws) + " allowance=" + f(without_queue) + " (" +
               f(100.0 * mean_ws / without_queue) + "%)");
}

void criterion_theorem3(const std::vector<Exact>& exact) {
    double worst = 0.0;
    std::string where;
    double ratio_sum = 0.0;
    std::size_t ratio_count = 0;
    std::size_t runs = 0;
    for (const Exact& e : exact) {
        const DirectedGraph& g = e.fixture->graph;
        const std::size_t n = g.num_nodes();
        for (double eps : kEpsilons) {
            const double x = e.alpha * eps;
            for (NodeId v = 0; v < n; ++v) {
                const PushResult r =
                    ppr_to_target(g, v, e.alpha, eps, options_for(PushVariant::priority_queue));
                // D_v recomputed here from the dense column.
                double d_v = 0.0;
                for (NodeId u = 0; u < n; ++u) {
                    if (e.pi(u, v) > x) {
                        d_v += static_cast<double>(g.in_degree(u)) + std::log2(static_cast<double>(n));
                    }
                }
                const double work = static_cast<double>(r.stats.steps) +
                                    static_cast<double>(r.stats.pops) * std::log2(static_cast<double>(n));
                const double allowance = (2.0 / e.alpha) * std::log2(1.0 / x) * d_v;
                const double ratio = allowance > 0.0 ? work / allowance : (work > 0.0 ? INFINITY : 0.0);
                if (ratio > worst) {
                    worst = ratio;
                    where = e.fixture->name + " alpha=" + f(e.alpha) + " eps=" + f(eps) +
                            " target=" + std::to_string(v);
                }
                if (d_v > 0.0) {
                    ratio_sum += static_cast<double>(r.stats.steps) / d_v;
                    ++ratio_count;
                }
                ++runs;
            }
        }
    }
    report(4, "per-target-work-allowance", worst <= 1.0,
           std::to_string(runs) + " runs, max work/allowance=" + f(worst) + " at " + where +
               "; mean steps/D_v=" + f(ratio_sum / static_cast<double>(ratio_count)));
}

void criterion_oracle_triangle() {
    const std::vector<Edge> two{{0, 1}, {1, 0}};
    const std::vector<Fixture> fixtures{{"two-cycle", from_edge_list(two)},
                                        {"star-10", make_star(10)}};
    const double eps = 1e-10;
    bool ok = true;
    double worst_power = 0.0;
    double worst_sigmas = 0.0;
    std::size_t compared = 0;
    for (const Fixture& fx : fixtures) {
        const DirectedGraph& g = fx.graph;
        for (double alpha : kAlphas) {
            const Eigen::MatrixXd pi = dense_solve_all_pairs(g, alpha);
            for (NodeId v = 0; v < g.num_nodes(); ++v) {
                const DenseScoreVector power = power_iteration_to_target(g, v, alpha, eps);
                const double diff = (power.values - pi.col(v)).cwiseAbs().maxCoeff();
                worst_power = std::max(worst_power, diff);
                ok = ok && diff <= 2.0 * eps;
            }
            for (NodeId source = 0; source < g.num_nodes(); ++source) {
                for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                    const MonteCarloResult mc =
                        monte_carlo_from_source(g, source, alpha, {1000000, seed, 0});
                    for (NodeId v = 0; v < g.num_nodes(); ++v) {
                        if (!(pi(source, v) > 0.01)) {
                            continue;
                        }
                        const WalkEstimate* e = mc.find(v);
                        const double estimate = e ? e->estimate : 0.0;
                        const double se = e ? e->std_error : 0.0;
                        const double diff = std::abs(estimate - pi(source, v));
                        // Zero-variance entries (every walk visits v the same
                        // number of times) are compared up to rounding.
                        ok = ok && diff <= 4.0 * se + 1e-12;
                        if (se > 0.0) {
                            worst_sigmas = std::max(worst_sigmas, diff / se);
                        }
                        ++compared;
                    }
                }
            }
        }
    }
    report(5, "oracle-triangle", ok,
           "max |power - dense|=" + f(worst_power) + " (limit " + f(2.0 * eps) + "); " +
               std::to_string(compared) + " Monte Carlo entries, max deviation " +
               f(worst_sigmas) + " standard errors (limit 4)");
}

void criterion_normalization(const std::vector<Exact>& exact) {
    double worst = 0.0;
    double worst_reference = 0.0;
    for (const Exact& e : exact) {
        const Eigen::VectorXd rows = e.pi.rowwise().sum();
        worst = std::max(worst, (rows.array() - 1.0).abs().maxCoeff());
        // Cross-check against the independent LU solve.
        const Eigen::MatrixXd ref = ppr::testing::reference_ppr(e.fixture->graph, e.alpha);
        worst_reference = std::max(worst_reference, (ref - e.pi).cwiseAbs().maxCoeff());
    }
    report(6, "dense-row-sums", worst <= 1e-9,
           "max |row sum - 1|=" + f(worst) + " over " + std::to_string(exact.size()) +
               " fixture/alpha pairs; max |dense - LU reference|=" + f(worst_reference));
}

void criterion_weighted(const std::vector<Fixture>& fixtures) {
    double worst = 0.0;
    bool same_support = true;
    std::size_t runs = 0;
    for (const Fixture& fx : fixtures) {
        std::vector<Edge> doubled = fx.graph.real_edges();
        for (Edge& e : doubled) {
            e.weight = 2.0;
        }
        const DirectedGraph w = from_edge_list(doubled, fx.graph.num_nodes());
        for (double alpha : kAlphas) {
            for (double eps : kEpsilons) {
                for (NodeId v = 0; v < fx.graph.num_nodes(); ++v) {
                    for (PushVariant variant : {PushVariant::priority_queue, PushVariant::work_set}) {
                        const ScoreVector a =
                            ppr_to_target(fx.graph, v, alpha, eps, options_for(variant)).scores;
                        const ScoreVector b = ppr_to_target(w, v, alpha, eps, options_for(variant)).scores;
                        same_support = same_support && a.size() == b.size();
                        for (NodeId u = 0; u < fx.graph.num_nodes(); ++u) {
                            worst = std::max(worst, std::abs(a[u] - b[u]));
                        }
                        ++runs;
                    }
                }
            }
        }
    }
    report(7, "weighted-consistency", same_support && worst <= 1e-12,
           std::to_string(runs) + " runs, max |unweighted - doubled weights|=" + f(worst));
}

void criterion_locality() {
    const auto start = std::chrono::steady_clock::now();
    const DirectedGraph g = generate_uniform_random(100000, 20, 1);
    BenchmarkConfig config;
    config.alphas = {0.1};
    config.epsilons = {1e-4};
    config.targets_per_setting = 20;
    config.seed = 1;
    config.graph_source = "uniform:n=100000,d=20";
    const BenchmarkReport r = run_benchmark(g, config);
    const SettingReport& s = r.settings.front();
    const double ratio = s.baseline_seconds / s.mean_wall_seconds;
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(9, "locality-speedup", r.passed && ratio >= 10.0,
           "mean push " + f(s.mean_wall_seconds) + " s vs power baseline " + f(s.baseline_seconds) +
               " s (" + std::to_string(s.baseline_iterations) + " sweeps x " +
               f(s.baseline_sweep_seconds) + " s), ratio=" + f(ratio) + ", mean pops=" +
               f(s.mean_pops) + ", run " + f(elapsed) + " s");
}

void criterion_appendix() {
    struct Hand {
        double beta;
        double c;
        double bound;  // n = 1e4, m = 1e5, alpha = 0.1, eps = 1e-4
    };
    const Hand hand[] = {{0.5, 0.5, 5000000.0},
                         {0.75, 0.62996052494743658, 1357208.8082974533},
                         {0.9, 0.77426368268112706, 1000000.0}};
    double worst_c = 0.0;
    double worst_bound = 0.0;
    for (const Hand& h : hand) {
        worst_c = std::max(worst_c, std::abs(power_law_constant(h.beta) - h.c));
        worst_bound = std::max(worst_bound,
                               std::abs(power_law_bound(1e4, 1e5, h.beta, 0.1, 1e-4) - h.bound) / h.bound);
    }
    double worst_fit = 0.0;
    for (double beta : {0.5, 0.75, 0.9}) {
        std::vector<double> values;
        for (int i = 1; i <= 1000; ++i) {
            values.push_back(2.5 * std::pow(static_cast<double>(i), -beta));
        }
        worst_fit = std::max(worst_fit, std::abs(fit_power_law_exponent(values) - beta));
    }
    report(10, "power-law-bound-and-fit", worst_c <= 1e-12 && worst_bound <= 1e-12 && worst_fit <= 1e-6,
           "max |c - hand|=" + f(worst_c) + ", max relative bound error=" + f(worst_bound) +
               ", max |fitted beta - beta|=" + f(worst_fit));
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
    std::vector<const char*> argv{"ppr"};
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return out.str();
}

void criterion_determinism() {
    const std::vector<std::string> query{"query",    "--gen",    "powerlaw:n=2000,d=8", "--seed",
                                         "3",        "--target", "17",
                                         "--epsilon", "1e-5"};
    const std::vector<std::string> bench{"bench",   "--gen",      "uniform:n=3000,d=10", "--seed",
                                         "11",      "--alphas",   "0.1,0.2",            "--epsilons",
                                         "1e-3,1e-4", "--targets", "15",                 "--jobs",
                                         "4"};
    int c1 = 0;
    int c2 = 0;
    int c3 = 0;
    int c4 = 0;
    const std::string q1 = run_cli(query, c1);
    const std::string q2 = run_cli(query, c2);
    const std::string b1 = strip_wall_fields(run_cli(bench, c3));
    const std::string b2 = strip_wall_fields(run_cli(bench, c4));
    const bool ok = c1 == 0 && c2 == 0 && c3 == 0 && c4 == 0 && !q1.empty() && q1 == q2 &&
                    b1.find("record target=") != std::string::npos && b1 == b2;
    report(11, "determinism", ok,
           "query " + std::to_string(q1.size()) + " bytes " + (q1 == q2 ? "identical" : "DIFFER") +
               "; bench " + std::to_string(b1.size()) + " bytes (wall fields stripped) " +
               (b1 == b2 ? "identical" : "DIFFER"));
}

}  // namespace

int main() {
    const std::vector<Fixture> fixtures = corpus();
    const std::vector<Exact> exact = solve_corpus(fixtures);

    const BoundSweep pq = sweep_error_bound(exact, PushVariant::priority_queue);
    report(1, "error-bound", pq.worst_ratio <= 1.0, describe(pq));
    criterion_tightness(exact);
    criterion_theorem2();
    criterion_theorem3(exact);
    criterion_oracle_triangle();
    criterion_normalization(exact);
    criterion_weighted(fixtures);
    const BoundSweep ws = sweep_error_bound(exact, PushVariant::work_set);
    report(8, "both-variants-error-bound", pq.worst_ratio <= 1.0 && ws.worst_ratio <= 1.0,
           "priority_queue max ratio=" + f(pq.worst_ratio) + "; work_set " + describe(ws));
    criterion_locality();
    criterion_appendix();
    criterion_determinism();

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
