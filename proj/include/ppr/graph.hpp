#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppr {

using NodeId = std::uint32_t;

struct Edge {
    NodeId source;
    NodeId target;
    double weight = 1.0;
};

struct Arc {
    NodeId node;
    double weight;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the edge-list reader; carries the 1-based offending line (0 when
/// the problem is not tied to a line, e.g. an empty edge set).
class GraphFormatError : public GraphError {
public:
    GraphFormatError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/**
 * Immutable directed graph with both out- and in-adjacency in CSR layout.
 *
 * Real nodes are 0..n-1. Index n is a synthetic sink with a weight-1
 * self-loop; every real node without out-edges gets one weight-1 edge to it.
 * The sink and its edges are stored in the adjacency arrays but are excluded
 * from num_nodes() and num_edges().
 */
class DirectedGraph {
public:
    static DirectedGraph from_edges(std::span<const Edge> edges,
                                    std::optional<std::size_t> n_hint = std::nullopt);

    std::size_t num_nodes() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return m_; }
    NodeId sink() const noexcept { return static_cast<NodeId>(n_); }
    /// Nodes stored in the adjacency arrays (real nodes plus the sink).
    std::size_t storage_size() const noexcept { return n_ + 1; }

    bool is_real(NodeId u) const noexcept { return u < n_; }
    bool is_dead_end(NodeId u) const noexcept { return dead_end_[u] != 0; }

    std::span<const Arc> out(NodeId u) const noexcept {
        return {out_arcs_.data() + out_offsets_[u], out_offsets_[u + 1] - out_offsets_[u]};
    }
    std::span<const Arc> in(NodeId u) const noexcept {
        return {in_arcs_.data() + in_offsets_[u], in_offsets_[u + 1] - in_offsets_[u]};
    }

    std::size_t out_degree(NodeId u) const noexcept { return out_offsets_[u + 1] - out_offsets_[u]; }
    std::size_t in_degree(NodeId u) const noexcept { return in_offsets_[u + 1] - in_offsets_[u]; }
    double weighted_out_degree(NodeId u) const noexcept { return weighted_out_degree_[u]; }

    /// Original edges (no sink edges), grouped by source in input order.
    std::vector<Edge> real_edges() const;

    bool weighted() const noexcept { return weighted_; }

private:
    DirectedGraph() = default;

    std::size_t n_ = 0;
    std::size_t m_ = 0;
    bool weighted_ = false;
    std::vector<std::size_t> out_offsets_;
    std::vector<Arc> out_arcs_;
    std::vector<std::size_t> in_offsets_;
    std::vector<Arc> in_arcs_;
    std::vector<double> weighted_out_degree_;
    std::vector<unsigned char> dead_end_;
};

DirectedGraph from_edge_list(std::span<const Edge> edges,
                             std::optional<std::size_t> n_hint = std::nullopt);

/// Reads "u v" or "u v w" lines; '#' comments and blank lines are skipped.
DirectedGraph load_edge_list(std::istream& in);
DirectedGraph load_edge_list_file(const std::string& path);

/// Writes the real edges in the same text format load_edge_list accepts.
void write_edge_list(std::ostream& out, const DirectedGraph& graph);

// Generators. All are deterministic for a fixed seed.

/// Each node draws Binomial(n, d/n) distinct out-neighbours uniformly.
DirectedGraph generate_uniform_random(std::size_t n, double avg_degree, std::uint64_t seed);

/// Per-node in-degree weights from a discrete power law P(k) ~ k^-exponent;
/// round(n*d) edges pick their target proportionally to the weight and their
/// source uniformly.
DirectedGraph generate_power_law_in_degree(std::size_t n, double avg_degree, double exponent,
                                           std::uint64_t seed);

DirectedGraph make_cycle(std::size_t n);
/// Leaves 1..k point at hub 0; the hub is a dead end.
DirectedGraph make_star(std::size_t leaves);
DirectedGraph make_self_loop();

}  // namespace ppr
