#include "ppr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ppr/analysis.hpp"
#include "ppr/format.hpp"
#include "ppr/oracles.hpp"
#include "ppr/reverse_push.hpp"

namespace ppr {

bool VerifyReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

class Tally {
public:
    explicit Tally(std::string name) : name_(std::move(name)) {}

    /// Tracks the observation closest to, or furthest past, its limit.
    void observe(double value, double limit, NodeId target) {
        const double margin = value - limit;
        if (first_ || margin > worst_margin_) {
            worst_margin_ = margin;
            worst_margin_value_ = value;
            worst_margin_limit_ = limit;
            worst_target_ = target;
            first_ = false;
        }
        if (value > limit) {
            ++failures_;
        }
    }
    void fail(NodeId target) {
        ++failures_;
        worst_target_ = target;
        first_ = false;
    }

    CheckResult result() const {
        std::ostringstream os;
        if (!first_) {
            os << "worst target=" << worst_target_;
            if (worst_margin_limit_ != 0.0 || worst_margin_value_ != 0.0) {
                os << " value=" << format_double(worst_margin_value_)
                   << " limit=" << format_double(worst_margin_limit_);
            }
        }
        if (failures_ > 0) {
            os << " failures=" << failures_;
        }
        return {name_, failures_ == 0, os.str()};
    }

private:
    std::string name_;
    bool first_ = true;
    double worst_margin_ = 0.0;
    double worst_margin_value_ = 0.0;
    double worst_margin_limit_ = 0.0;
    NodeId worst_target_ = 0;
    std::size_t failures_ = 0;
};

}  // namespace

VerifyReport verify_graph(const DirectedGraph& graph, double alpha, double epsilon,
                          const VerifyOptions& options) {
    check_alpha(alpha);
    check_epsilon(epsilon);
    const Eigen::MatrixXd pi = dense_solve_all_pairs(graph, alpha);
    const TransitionMatrix<double> p = transition_matrix(graph);
    const std::size_t n = graph.num_nodes();
    VerifyReport report;

    {
        const Eigen::VectorXd rows = pi.rowwise().sum();
        const double worst = (rows.array() - 1.0).abs().maxCoeff();
        report.checks.push_back({"dense-row-sums", worst <= 1e-9,
                                 "max |row sum - 1| = " + format_double(worst)});
        const Eigen::Index size = pi.rows();
        Eigen::MatrixXd recurrence = (1.0 - alpha) * (p * pi);
        recurrence += alpha * Eigen::MatrixXd::Identity(size, size);
        const double residual = (recurrence - pi).cwiseAbs().maxCoeff();
        report.checks.push_back({"dense-recurrence-residual", residual < 1e-9,
                                 "max residual = " + format_double(residual)});
    }

    Tally thm1_pq("error-bound-priority-queue");
    Tally thm1_ws("error-bound-work-set");
    Tally lower_bound("scores-below-exact");
    Tally audit("push-invariants-audited");
    Tally thm3("theorem3-work-bound");
    Tally agreement("power-vs-dense");
    double total_steps_pq = 0.0;
    double total_steps_ws = 0.0;

    const double bound = (1.0 - alpha) * epsilon;
    for (NodeId v = 0; v < n; ++v) {
        const DenseScoreVector exact = dense_column(pi, v, alpha);

        PushOptions pq_options{PushVariant::priority_queue, true, options.stop_threshold};
        const PushResult pq = ppr_to_target(graph, v, alpha, epsilon, pq_options);
        thm1_pq.observe(max_additive_error(pq.scores, exact), bound, v);
        double above = 0.0;
        for (const ScoreEntry& e : pq.scores.entries()) {
            above = std::max(above, e.score - exact[e.node]);
        }
        lower_bound.observe(above, 1e-9, v);
        if (!pq.audit->clean()) {
            audit.fail(v);
        }
        const DifficultyParams dv = compute_d_v(graph, exact, alpha * epsilon);
        thm3.observe(instrumented_work(pq.stats, n), theorem3_allowance(dv.d_v, alpha, epsilon), v);
        total_steps_pq += static_cast<double>(pq.stats.steps);

        PushOptions ws_options{PushVariant::work_set, false, options.stop_threshold};
        const PushResult ws = ppr_to_target(graph, v, alpha, epsilon, ws_options);
        thm1_ws.observe(max_additive_error(ws.scores, exact), bound, v);
        total_steps_ws += static_cast<double>(ws.stats.steps);

        const DenseScoreVector power = power_iteration_to_target(p, graph, v, alpha, epsilon);
        agreement.observe((power.values - exact.values).cwiseAbs().maxCoeff(), 2.0 * epsilon, v);
    }
    report.checks.push_back(thm1_pq.result());
    report.checks.push_back(thm1_ws.result());
    report.checks.push_back(lower_bound.result());
    report.checks.push_back(audit.result());
    report.checks.push_back(thm3.result());
    report.checks.push_back(agreement.result());

    const Theorem2Allowance thm2 = theorem2_allowance(graph, alpha, epsilon);
    const double mean_pq = total_steps_pq / static_cast<double>(n);
    const double mean_ws = total_steps_ws / static_cast<double>(n);
    report.checks.push_back({"theorem2-mean-steps-priority-queue", mean_pq <= thm2.with_queue,
                             "mean=" + format_double(mean_pq) +
                                 " allowance=" + format_double(thm2.with_queue)});
    report.checks.push_back({"theorem2-mean-steps-work-set", mean_ws <= thm2.without_queue,
                             "mean=" + format_double(mean_ws) +
                                 " allowance=" + format_double(thm2.without_queue)});
    return report;
}

void write_verify_table(std::ostream& out, const VerifyReport& report) {
    std::size_t width = 0;
    for (const CheckResult& c : report.checks) {
        width = std::max(width, c.name.size());
    }
    for (const CheckResult& c : report.checks) {
        out << std::left << std::setw(static_cast<int>(width) + 2) << c.name
            << (c.passed ? "PASS  " : "FAIL  ") << c.detail << '\n';
    }
    out << (report.passed() ? "all checks passed" : "verification FAILED") << '\n';
}

}  // namespace ppr
