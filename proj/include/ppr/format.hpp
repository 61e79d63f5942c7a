#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ppr/oracles.hpp"
#include "ppr/reverse_push.hpp"

namespace ppr {

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

/// Score TSV: a "# target=.. alpha=.. epsilon=.. variant=.." header, then
/// "node<TAB>score" lines by descending score, ties by ascending node.
void write_score_tsv(std::ostream& out, const ScoreVector& scores, double epsilon,
                     PushVariant variant);

/// Same body layout for oracle output: "# oracle=<name>", then "# <fields>",
/// then real nodes with a positive value.
void write_dense_tsv(std::ostream& out, const DenseScoreVector& scores, std::string_view oracle,
                     std::string_view fields);

void write_monte_carlo_tsv(std::ostream& out, const MonteCarloResult& result,
                           std::uint64_t seed);

}  // namespace ppr
