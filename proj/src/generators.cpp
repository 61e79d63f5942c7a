#include "ppr/graph.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

namespace ppr {

DirectedGraph generate_uniform_random(std::size_t n, double avg_degree, std::uint64_t seed) {
    if (n == 0) {
        throw GraphError("uniform generator needs n >= 1");
    }
    if (!(avg_degree >= 0.0) || avg_degree > static_cast<double>(n)) {
        throw GraphError("uniform generator needs 0 <= d <= n");
    }
    std::mt19937_64 rng(seed);
    std::binomial_distribution<std::size_t> degree(n, avg_degree / static_cast<double>(n));

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(avg_degree * static_cast<double>(n) * 1.05) + 16);
    std::unordered_set<NodeId> chosen;
    std::vector<NodeId> neighbours;
    for (std::size_t u = 0; u < n; ++u) {
        const std::size_t k = degree(rng);
        // Floyd's sampling: k distinct values from [0, n) in O(k).
        chosen.clear();
        for (std::size_t j = n - k; j < n; ++j) {
            std::uniform_int_distribution<std::size_t> pick(0, j);
            const auto t = static_cast<NodeId>(pick(rng));
            if (!chosen.insert(t).second) {
                chosen.insert(static_cast<NodeId>(j));
            }
        }
        neighbours.assign(chosen.begin(), chosen.end());
        std::sort(neighbours.begin(), neighbours.end());
        for (NodeId w : neighbours) {
            edges.push_back({static_cast<NodeId>(u), w, 1.0});
        }
    }
    return DirectedGraph::from_edges(edges, n);
}

DirectedGraph generate_power_law_in_degree(std::size_t n, double avg_degree, double exponent,
                                           std::uint64_t seed) {
    if (n == 0) {
        throw GraphError("power-law generator needs n >= 1");
    }
    if (!(exponent > 1.0)) {
        throw GraphError("power-law exponent must be > 1");
    }
    if (!(avg_degree >= 0.0)) {
        throw GraphError("power-law generator needs d >= 0");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // floor of a Pareto(1, exponent - 1) draw: P(K >= k) = k^-(exponent - 1).
    std::vector<double> in_weight(n);
    const double tail = -1.0 / (exponent - 1.0);
    for (double& w : in_weight) {
        const double x = std::pow(1.0 - unit(rng), tail);
        w = std::min(std::floor(x), static_cast<double>(n));
    }

    const auto m = static_cast<std::size_t>(std::llround(avg_degree * static_cast<double>(n)));
    std::discrete_distribution<std::size_t> pick_target(in_weight.begin(), in_weight.end());
    std::uniform_int_distribution<std::size_t> pick_source(0, n - 1);
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto v = static_cast<NodeId>(pick_target(rng));
        const auto u = static_cast<NodeId>(pick_source(rng));
        edges.push_back({u, v, 1.0});
    }
    std::stable_sort(edges.begin(), edges.end(),
                     [](const Edge& a, const Edge& b) { return a.source < b.source; });
    return DirectedGraph::from_edges(edges, n);
}

DirectedGraph make_cycle(std::size_t n) {
    if (n == 0) {
        throw GraphError("cycle needs n >= 1");
    }
    std::vector<Edge> edges;
    edges.reserve(n);
    for (std::size_t u = 0; u < n; ++u) {
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>((u + 1) % n), 1.0});
    }
    return DirectedGraph::from_edges(edges, n);
}

DirectedGraph make_star(std::size_t leaves) {
    std::vector<Edge> edges;
    edges.reserve(leaves);
    for (std::size_t i = 1; i <= leaves; ++i) {
        edges.push_back({static_cast<NodeId>(i), 0, 1.0});
    }
    return DirectedGraph::from_edges(edges, leaves + 1);
}

DirectedGraph make_self_loop() {
    const Edge loop{0, 0, 1.0};
    return DirectedGraph::from_edges(std::span<const Edge>(&loop, 1));
}

}  // namespace ppr
