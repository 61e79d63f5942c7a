#include "ppr/format.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <vector>

namespace ppr {

std::string format_double(double value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return {buf, res.ptr};
}

namespace {

void write_body(std::ostream& out, std::vector<ScoreEntry> rows) {
    std::sort(rows.begin(), rows.end(), [](const ScoreEntry& a, const ScoreEntry& b) {
        return a.score > b.score || (a.score == b.score && a.node < b.node);
    });
    for (const ScoreEntry& row : rows) {
        out << row.node << '\t' << format_double(row.score) << '\n';
    }
}

}  // namespace

void write_score_tsv(std::ostream& out, const ScoreVector& scores, double epsilon,
                     PushVariant variant) {
    out << "# target=" << scores.target() << " alpha=" << format_double(scores.alpha())
        << " epsilon=" << format_double(epsilon) << " variant=" << variant_name(variant) << '\n';
    write_body(out, {scores.entries().begin(), scores.entries().end()});
}

void write_dense_tsv(std::ostream& out, const DenseScoreVector& scores, std::string_view oracle,
                     std::string_view fields) {
    out << "# oracle=" << oracle << '\n';
    out << "# " << fields << '\n';
    std::vector<ScoreEntry> rows;
    for (NodeId u = 0; u < scores.size(); ++u) {
        if (scores[u] > 0.0) {
            rows.push_back({u, scores[u]});
        }
    }
    write_body(out, std::move(rows));
}

void write_monte_carlo_tsv(std::ostream& out, const MonteCarloResult& result, std::uint64_t seed) {
    out << "# oracle=monte-carlo\n";
    out << "# source=" << result.source << " alpha=" << format_double(result.alpha)
        << " walks=" << result.num_walks << " seed=" << seed << " truncated=" << result.truncated
        << '\n';
    std::vector<ScoreEntry> rows;
    for (const WalkEstimate& e : result.entries) {
        if (e.node == result.sink) {
            continue;
        }
        rows.push_back({e.node, e.estimate});
    }
    write_body(out, std::move(rows));
}

}  // namespace ppr
