#pragma once

#include <string>
#include <utility>
#include <vector>

#include "burnsolver/graph.hpp"
#include "burnsolver/rng.hpp"

namespace burnsolver::testing {

// 12-vertex example graph used across the suites: two optimal length-3
// burning sequences are [4, 10, 7] and [5, 10, 2] (labels as written below).
inline std::string fig1_edge_text() {
    return "2 3\n3 4\n4 5\n5 6\n6 7\n1 5\n1 4\n1 6\n5 8\n6 8\n10 8\n10 9\n10 11\n10 12\n";
}

inline Graph fig1_graph() { return parse_edge_list(fig1_edge_text()); }

// Maps a list of external labels to dense ids for the given graph.
inline std::vector<VertexId> seq_of(const Graph& g, const std::vector<std::string>& labels) {
    std::vector<VertexId> seq;
    for (const auto& label : labels) {
        const VertexId v = g.id_of(label);
        if (v == kNoVertex) throw std::runtime_error("unknown label " + label);
        seq.push_back(v);
    }
    return seq;
}

inline Graph make_path(std::size_t n) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));
    return Graph::from_edges(n, std::move(edges));
}

inline Graph make_cycle(std::size_t n) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t i = 0; i < n; ++i)
        edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n));
    return Graph::from_edges(n, std::move(edges));
}

inline Graph make_star(std::size_t leaves) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t i = 1; i <= leaves; ++i)
        edges.emplace_back(0, static_cast<VertexId>(i));
    return Graph::from_edges(leaves + 1, std::move(edges));
}

inline Graph make_complete(std::size_t n) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
    return Graph::from_edges(n, std::move(edges));
}

// G(n, p)-style random graph; may be disconnected.
inline Graph random_graph(std::size_t n, double edge_prob, Rng& rng) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (draw_unit(rng) < edge_prob)
                edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
    return Graph::from_edges(n, std::move(edges));
}

inline bool is_connected(const Graph& g) { return connected_components(g).count == 1; }

inline Graph random_connected_graph(std::size_t n, double edge_prob, Rng& rng) {
    for (;;) {
        Graph g = random_graph(n, edge_prob, rng);
        if (is_connected(g)) return g;
    }
}

}  // namespace burnsolver::testing
