#include "ppr/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ppr {

GraphFormatError::GraphFormatError(std::size_t line, const std::string& what)
    : GraphError(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

std::string describe(const Edge& e) {
    std::ostringstream os;
    os << "(" << e.source << ", " << e.target << ", " << e.weight << ")";
    return os.str();
}

}  // namespace

DirectedGraph DirectedGraph::from_edges(std::span<const Edge> edges,
                                        std::optional<std::size_t> n_hint) {
    std::size_t n = n_hint.value_or(0);
    bool weighted = false;
    for (const Edge& e : edges) {
        if (!std::isfinite(e.weight)) {
            throw GraphError("non-finite weight on edge " + describe(e));
        }
        if (e.weight < 0.0) {
            throw GraphError("negative weight on edge " + describe(e));
        }
        n = std::max<std::size_t>(n, std::size_t{std::max(e.source, e.target)} + 1);
        weighted = weighted || e.weight != 1.0;
    }
    if (n == 0) {
        throw GraphError("graph has no nodes");
    }
    if (n >= std::size_t{UINT32_MAX}) {
        throw GraphError("graph has too many nodes for 32-bit ids");
    }

    DirectedGraph g;
    g.n_ = n;
    g.m_ = edges.size();
    g.weighted_ = weighted;
    const std::size_t total = n + 1;
    const NodeId sink = static_cast<NodeId>(n);

    std::vector<std::size_t> out_count(total, 0);
    for (const Edge& e : edges) {
        ++out_count[e.source];
    }
    g.dead_end_.assign(total, 0);
    std::size_t sink_edges = 1;  // self-loop
    for (std::size_t u = 0; u < n; ++u) {
        if (out_count[u] == 0) {
            g.dead_end_[u] = 1;
            out_count[u] = 1;
            ++sink_edges;
        }
    }
    out_count[n] = 1;

    g.out_offsets_.assign(total + 1, 0);
    for (std::size_t u = 0; u < total; ++u) {
        g.out_offsets_[u + 1] = g.out_offsets_[u] + out_count[u];
    }
    g.out_arcs_.resize(edges.size() + sink_edges);
    std::vector<std::size_t> cursor(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
    for (const Edge& e : edges) {
        g.out_arcs_[cursor[e.source]++] = {e.target, e.weight};
    }
    for (std::size_t u = 0; u < n; ++u) {
        if (g.dead_end_[u]) {
            g.out_arcs_[cursor[u]++] = {sink, 1.0};
        }
    }
    g.out_arcs_[cursor[n]++] = {sink, 1.0};

    g.weighted_out_degree_.assign(total, 0.0);
    std::vector<std::size_t> in_count(total, 0);
    for (std::size_t u = 0; u < total; ++u) {
        for (const Arc& a : g.out(static_cast<NodeId>(u))) {
            g.weighted_out_degree_[u] += a.weight;
            ++in_count[a.node];
        }
    }
    // A node whose out-edges all carry weight 0 has no usable transition.
    for (std::size_t u = 0; u < n; ++u) {
        if (!(g.weighted_out_degree_[u] > 0.0)) {
            throw GraphError("node " + std::to_string(u) + " has zero total out-weight");
        }
    }

    g.in_offsets_.assign(total + 1, 0);
    for (std::size_t u = 0; u < total; ++u) {
        g.in_offsets_[u + 1] = g.in_offsets_[u] + in_count[u];
    }
    g.in_arcs_.resize(g.out_arcs_.size());
    cursor.assign(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    for (std::size_t u = 0; u < total; ++u) {
        for (const Arc& a : g.out(static_cast<NodeId>(u))) {
            g.in_arcs_[cursor[a.node]++] = {static_cast<NodeId>(u), a.weight};
        }
    }
    return g;
}

std::vector<Edge> DirectedGraph::real_edges() const {
    std::vector<Edge> edges;
    edges.reserve(m_);
    for (NodeId u = 0; u < n_; ++u) {
        if (dead_end_[u]) {
            continue;
        }
        for (const Arc& a : out(u)) {
            edges.push_back({u, a.node, a.weight});
        }
    }
    return edges;
}

DirectedGraph from_edge_list(std::span<const Edge> edges, std::optional<std::size_t> n_hint) {
    return DirectedGraph::from_edges(edges, n_hint);
}

namespace {

template <typename T>
bool parse_token(std::string_view token, T& value) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc{} && ptr == last;
}

}  // namespace

DirectedGraph load_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::vector<std::string> fields;
        for (std::string tok; tokens >> tok;) {
            fields.push_back(std::move(tok));
        }
        if (fields.empty() || fields.front().front() == '#') {
            continue;
        }
        if (fields.size() != 2 && fields.size() != 3) {
            throw GraphFormatError(line_no, "expected 'u v' or 'u v w', got " +
                                                std::to_string(fields.size()) + " fields");
        }
        Edge e;
        if (!parse_token(fields[0], e.source) || !parse_token(fields[1], e.target)) {
            throw GraphFormatError(line_no, "node ids must be non-negative integers");
        }
        if (fields.size() == 3) {
            if (!parse_token(fields[2], e.weight)) {
                throw GraphFormatError(line_no, "malformed weight '" + fields[2] + "'");
            }
            if (!std::isfinite(e.weight) || e.weight < 0.0) {
                throw GraphFormatError(line_no, "weight must be finite and >= 0");
            }
        }
        edges.push_back(e);
    }
    if (edges.empty()) {
        throw GraphFormatError(0, "edge list is empty");
    }
    return DirectedGraph::from_edges(edges);
}

DirectedGraph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw GraphError("cannot open graph file '" + path + "'");
    }
    return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const DirectedGraph& graph) {
    out << "# n=" << graph.num_nodes() << " m=" << graph.num_edges() << "\n";
    const bool weighted = graph.weighted();
    char buf[32];
    for (const Edge& e : graph.real_edges()) {
        out << e.source << ' ' << e.target;
        if (weighted) {
            auto res = std::to_chars(buf, buf + sizeof buf, e.weight);
            out << ' ' << std::string_view(buf, res.ptr - buf);
        }
        out << '\n';
    }
}

}  // namespace ppr
