#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ppr/graph.hpp"

namespace ppr::cli {

enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kUsage = 2,
    kVerificationFailed = 3,
};

/// Builds a graph from an inline generator spec such as "uniform:n=1000,d=10",
/// "powerlaw:n=1000,d=10,exponent=2.5", "cycle:n=50", "star:k=10",
/// "selfloop" or "twocycle". Throws std::invalid_argument on a bad spec.
DirectedGraph generate_from_spec(const std::string& spec, std::uint64_t seed);

/// Entry point behind the `ppr` executable. Results go to `out` (unless an
/// --out file is given), diagnostics and run summaries to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ppr::cli
