#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "burnsolver/graph.hpp"
#include "burnsolver/rng.hpp"

namespace burnsolver {

// Preferential attachment starting from a clique of (attach + 1) vertices;
// each later vertex attaches to `attach` distinct existing vertices chosen
// with degree-proportional probability (endpoint-list sampling, duplicates
// redrawn). Edge count is C(attach+1, 2) + attach * (n - attach - 1).
inline Graph generate_barabasi_albert(std::size_t n, std::size_t attach, std::uint64_t seed) {
    if (attach < 1) throw std::invalid_argument("barabasi-albert: attach must be >= 1");
    if (n <= attach) throw std::invalid_argument("barabasi-albert: n must exceed attach");
    Rng rng = make_rng(seed, 0x6261ull);

    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<VertexId> endpoints;  // one entry per edge endpoint: degree-proportional pool
    const std::size_t seed_clique = attach + 1;
    for (std::size_t u = 0; u < seed_clique; ++u) {
        for (std::size_t v = u + 1; v < seed_clique; ++v) {
            edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
            endpoints.push_back(static_cast<VertexId>(u));
            endpoints.push_back(static_cast<VertexId>(v));
        }
    }
    std::vector<VertexId> targets;
    for (std::size_t v = seed_clique; v < n; ++v) {
        targets.clear();
        while (targets.size() < attach) {
            const VertexId t = endpoints[draw_below(rng, endpoints.size())];
            bool duplicate = false;
            for (VertexId prior : targets) duplicate = duplicate || prior == t;
            if (!duplicate) targets.push_back(t);
        }
        for (VertexId t : targets) {
            edges.emplace_back(t, static_cast<VertexId>(v));
            endpoints.push_back(t);
            endpoints.push_back(static_cast<VertexId>(v));
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

// Uniform G(n, M): exactly m_edges distinct edges sampled without replacement.
inline Graph generate_erdos_renyi(std::size_t n, std::size_t m_edges, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("erdos-renyi: n must be >= 1");
    const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (m_edges > max_edges)
        throw std::invalid_argument("erdos-renyi: more edges requested than pairs exist");
    Rng rng = make_rng(seed, 0x6572ull);

    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(m_edges);
    while (edges.size() < m_edges) {
        auto u = static_cast<VertexId>(draw_below(rng, n));
        auto v = static_cast<VertexId>(draw_below(rng, n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        const std::uint64_t key = static_cast<std::uint64_t>(u) * n + v;
        if (seen.insert(key).second) edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, std::move(edges));
}

}  // namespace burnsolver
