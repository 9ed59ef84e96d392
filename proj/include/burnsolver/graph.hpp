#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace burnsolver {

using VertexId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr std::uint32_t kUnreachableDist = std::numeric_limits<std::uint32_t>::max();

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(what), line_number(line) {}
    std::size_t line_number = 0;
};

/// Immutable simple undirected graph over dense vertex ids [0, N).
/// Adjacency is CSR with neighbor lists sorted ascending; every traversal in
/// the library iterates neighbors in that order so results are reproducible.
class Graph {
public:
    Graph() = default;

    // Edges may contain duplicates and self-loops; both are dropped here.
    // Labels default to the decimal form of the dense id.
    static Graph from_edges(std::size_t n, std::vector<std::pair<VertexId, VertexId>> edges,
                            std::vector<std::string> labels = {}) {
        if (n == 0) throw ParseError("empty graph: no vertices");
        for (auto& [u, v] : edges) {
            if (u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges.erase(std::remove_if(edges.begin(), edges.end(),
                                   [](const auto& e) { return e.first == e.second; }),
                    edges.end());

        Graph g;
        g.n_ = n;
        g.m_ = edges.size();
        std::vector<std::uint32_t> degree(n, 0);
        for (const auto& [u, v] : edges) {
            ++degree[u];
            ++degree[v];
        }
        g.offsets_.assign(n + 1, 0);
        for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
        g.adjacency_.resize(2 * g.m_);
        std::vector<std::uint32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
        for (const auto& [u, v] : edges) {
            g.adjacency_[fill[u]++] = v;
            g.adjacency_[fill[v]++] = u;
        }
        for (std::size_t v = 0; v < n; ++v)
            std::sort(g.adjacency_.begin() + g.offsets_[v], g.adjacency_.begin() + g.offsets_[v + 1]);

        if (labels.empty()) {
            labels.resize(n);
            for (std::size_t v = 0; v < n; ++v) labels[v] = std::to_string(v);
        } else if (labels.size() != n) {
            throw std::invalid_argument("label count does not match vertex count");
        }
        g.labels_ = std::move(labels);
        return g;
    }

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return m_; }

    std::span<const VertexId> neighbors(VertexId v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

    std::uint32_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

    const std::string& label(VertexId v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }

    // Dense id of an external label, or kNoVertex when unknown.
    VertexId id_of(std::string_view label) const {
        for (std::size_t v = 0; v < n_; ++v)
            if (labels_[v] == label) return static_cast<VertexId>(v);
        return kNoVertex;
    }

private:
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::uint32_t> offsets_;
    std::vector<VertexId> adjacency_;
    std::vector<std::string> labels_;
};

struct ParseStats {
    std::size_t dropped_self_loops = 0;
    std::size_t dropped_duplicate_edges = 0;
};

// Edge-list text: one "u v" pair per line, arbitrary string labels remapped
// to dense ids in first-appearance order. Lines starting with '#' or '%'
// (covers Matrix-Market "%%") are comments; blank lines are skipped.
inline Graph parse_edge_list(std::istream& in, ParseStats* stats = nullptr) {
    std::unordered_map<std::string, VertexId> ids;
    std::vector<std::string> labels;
    std::vector<std::pair<VertexId, VertexId>> raw_edges;
    std::string line;
    std::size_t line_number = 0;

    auto intern = [&](std::string&& token) -> VertexId {
        auto [it, inserted] = ids.try_emplace(std::move(token), static_cast<VertexId>(labels.size()));
        if (inserted) labels.push_back(it->first);
        return it->second;
    };

    while (std::getline(in, line)) {
        ++line_number;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#' || line[first] == '%') continue;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a >> b) || (ls >> extra)) {
            throw ParseError("malformed edge line " + std::to_string(line_number) +
                                 ": expected exactly two tokens",
                             line_number);
        }
        const VertexId u = intern(std::move(a));
        const VertexId v = intern(std::move(b));
        raw_edges.emplace_back(u, v);
    }
    if (labels.empty()) throw ParseError("empty graph: no vertices");

    std::size_t self_loops = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(raw_edges.size());
    for (auto [u, v] : raw_edges) {
        if (u == v) {
            ++self_loops;
            continue;
        }
        if (u > v) std::swap(u, v);
        edges.emplace_back(u, v);
    }
    std::sort(edges.begin(), edges.end());
    const std::size_t before = edges.size();
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (stats) {
        stats->dropped_self_loops = self_loops;
        stats->dropped_duplicate_edges = before - edges.size();
    }
    const std::size_t n = labels.size();  // read before the move below
    return Graph::from_edges(n, std::move(edges), std::move(labels));
}

inline Graph parse_edge_list(std::string_view text, ParseStats* stats = nullptr) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in, stats);
}

// One "u v" line per edge with u < v in dense-id order, original labels.
// Isolated vertices are written as self-loop lines so the vertex set
// round-trips; parsing drops the loop but keeps the vertex.
inline std::string serialize_edge_list(const Graph& g) {
    std::string out;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        if (g.degree(u) == 0) {
            out += g.label(u);
            out += ' ';
            out += g.label(u);
            out += '\n';
            continue;
        }
        for (VertexId v : g.neighbors(u)) {
            if (v <= u) continue;
            out += g.label(u);
            out += ' ';
            out += g.label(v);
            out += '\n';
        }
    }
    return out;
}

struct ComponentLabeling {
    std::vector<VertexId> component_of;   // per-vertex component id
    std::vector<std::uint32_t> sizes;     // per-component vertex count
    std::size_t count = 0;
};

// Component ids are assigned in order of the smallest contained vertex id.
inline ComponentLabeling connected_components(const Graph& g) {
    const std::size_t n = g.vertex_count();
    ComponentLabeling out;
    out.component_of.assign(n, kNoVertex);
    std::vector<VertexId> queue;
    for (VertexId s = 0; s < n; ++s) {
        if (out.component_of[s] != kNoVertex) continue;
        const auto id = static_cast<VertexId>(out.count++);
        std::uint32_t size = 0;
        queue.clear();
        queue.push_back(s);
        out.component_of[s] = id;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const VertexId v = queue[head];
            ++size;
            for (VertexId w : g.neighbors(v)) {
                if (out.component_of[w] == kNoVertex) {
                    out.component_of[w] = id;
                    queue.push_back(w);
                }
            }
        }
        out.sizes.push_back(size);
    }
    return out;
}

struct BfsResult {
    VertexId source = 0;
    std::vector<VertexId> order;          // reachable vertices, non-decreasing dist
    std::vector<VertexId> parent;         // parent[source] == source; kNoVertex if unreachable
    std::vector<std::uint32_t> dist;      // kUnreachableDist for other components
};

inline BfsResult bfs(const Graph& g, VertexId source) {
    const std::size_t n = g.vertex_count();
    if (source >= n) throw std::out_of_range("bfs source out of range");
    BfsResult r;
    r.source = source;
    r.parent.assign(n, kNoVertex);
    r.dist.assign(n, kUnreachableDist);
    r.order.reserve(n);
    r.parent[source] = source;
    r.dist[source] = 0;
    r.order.push_back(source);
    for (std::size_t head = 0; head < r.order.size(); ++head) {
        const VertexId v = r.order[head];
        for (VertexId w : g.neighbors(v)) {
            if (r.dist[w] != kUnreachableDist) continue;
            r.dist[w] = r.dist[v] + 1;
            r.parent[w] = v;
            r.order.push_back(w);
        }
    }
    return r;
}

}  // namespace burnsolver
