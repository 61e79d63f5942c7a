#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ppr/graph.hpp"

namespace ppr {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct VerifyOptions {
    /// Replaces the alpha * epsilon stop threshold in every push run. Test hook.
    std::optional<double> stop_threshold;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool passed() const noexcept;
};

/// Runs every node of a small graph (n <= 500) as a target through both push
/// variants and the oracles, checking error bounds, push invariants, the step
/// bounds and oracle agreement.
VerifyReport verify_graph(const DirectedGraph& graph, double alpha, double epsilon,
                          const VerifyOptions& options = {});

void write_verify_table(std::ostream& out, const VerifyReport& report);

}  // namespace ppr
