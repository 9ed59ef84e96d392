#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "burnsolver/graph.hpp"
#include "burnsolver/parallel.hpp"
#include "burnsolver/rng.hpp"

namespace burnsolver {

// Cell is the storage type for both hop distances and middle-vertex ids:
// uint16_t when the graph fits (N < 65535, which also bounds the diameter),
// uint32_t otherwise. The all-ones value is reserved as the sentinel for
// cross-component pairs.
template <typename Cell>
inline constexpr Cell kUnreachableCell = std::numeric_limits<Cell>::max();

inline bool fits_16bit_cells(std::size_t n) { return n < 65535; }

template <typename Cell>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, Cell fill = kUnreachableCell<Cell>)
        : n_(n), cells_(n * n, fill) {}

    std::size_t size() const { return n_; }
    Cell at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, Cell value) { cells_[i * n_ + j] = value; }
    std::span<Cell> row(std::size_t i) { return {cells_.data() + i * n_, n_}; }
    std::span<const Cell> row(std::size_t i) const { return {cells_.data() + i * n_, n_}; }
    std::span<const Cell> cells() const { return cells_; }
    std::span<Cell> cells() { return cells_; }

    bool operator==(const SquareMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Cell> cells_;
};

struct SizingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMemoryBudgetBytes = std::size_t{12} << 30;

// Dist + middle matrices are the dominant allocations; refuse up front when
// they would not fit the budget instead of thrashing.
template <typename Cell>
void check_matrix_budget(std::size_t n, std::size_t budget_bytes) {
    const std::size_t need = 2 * n * n * sizeof(Cell);
    if (budget_bytes != 0 && need > budget_bytes) {
        throw SizingError("precompute needs " + std::to_string(need) +
                          " bytes for two " + std::to_string(n) + "x" + std::to_string(n) +
                          " matrices, over the " + std::to_string(budget_bytes) + " byte budget");
    }
}

namespace detail {

// BFS from `source` writing hop distances straight into a matrix row.
template <typename Cell>
void bfs_row(const Graph& g, VertexId source, std::span<Cell> row, std::vector<VertexId>& queue) {
    std::fill(row.begin(), row.end(), kUnreachableCell<Cell>);
    queue.clear();
    queue.push_back(source);
    row[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId v = queue[head];
        const Cell next = static_cast<Cell>(row[v] + 1);
        for (VertexId w : g.neighbors(v)) {
            if (row[w] != kUnreachableCell<Cell>) continue;
            row[w] = next;
            queue.push_back(w);
        }
    }
}

}  // namespace detail

template <typename Cell>
SquareMatrix<Cell> compute_apsp(const Graph& g, int threads = 1,
                                std::size_t memory_budget_bytes = kDefaultMemoryBudgetBytes) {
    const std::size_t n = g.vertex_count();
    check_matrix_budget<Cell>(n, memory_budget_bytes);
    SquareMatrix<Cell> dist(n);
    parallel_for_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<VertexId> queue;
        queue.reserve(n);
        for (std::size_t v = begin; v < end; ++v)
            detail::bfs_row(g, static_cast<VertexId>(v), dist.row(v), queue);
    });
    return dist;
}

// Row v of the middle matrix via a two-pointer scan over the BFS visitation
// order S_v. Odd-distance vertices inherit the middle of their BFS parent;
// even-distance vertices take the first mid in S_v with
// dist(v,mid) == dist(mid,u) and dist(v,mid) + dist(mid,u) == dist(v,u).
// The mid pointer never runs past the reachable prefix: the BFS-tree ancestor
// of u in the halfway layer is always a valid middle at or after it.
template <typename Cell>
void compute_middle_row(VertexId v, const SquareMatrix<Cell>& dist, const BfsResult& bfs_result,
                        std::span<Cell> row) {
    assert(bfs_result.source == v);
    std::fill(row.begin(), row.end(), kUnreachableCell<Cell>);
    const auto& order = bfs_result.order;
    const auto dist_v = dist.row(v);
    std::size_t j = 0;
    for (std::size_t i = 0; i < order.size();) {
        const VertexId u = order[i];
        if (dist_v[u] % 2 == 1) {
            row[u] = row[bfs_result.parent[u]];
            ++i;
            continue;
        }
        assert(j < order.size() && "mid pointer overran the reachable set");
        const VertexId mid = order[j];
        if (dist_v[mid] == dist.at(mid, u) &&
            static_cast<std::uint64_t>(dist_v[mid]) + dist.at(mid, u) == dist_v[u]) {
            row[u] = static_cast<Cell>(mid);
            ++i;
        } else {
            ++j;
        }
    }
}

template <typename Cell>
SquareMatrix<Cell> compute_middle_matrix(const Graph& g, const SquareMatrix<Cell>& dist,
                                         int threads = 1,
                                         std::size_t memory_budget_bytes = kDefaultMemoryBudgetBytes) {
    const std::size_t n = g.vertex_count();
    check_matrix_budget<Cell>(n, memory_budget_bytes);
    SquareMatrix<Cell> middle(n);
    parallel_for_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t v = begin; v < end; ++v) {
            const BfsResult b = bfs(g, static_cast<VertexId>(v));
            compute_middle_row(static_cast<VertexId>(v), dist, b, middle.row(v));
        }
    });
    return middle;
}

enum class BetweennessMode : std::uint8_t { exact = 0, sampled = 1 };

struct CentralityVector {
    std::vector<double> values;  // per-vertex, normalized to [0, 1] per component
    BetweennessMode mode = BetweennessMode::exact;
    std::uint32_t sample_count = 0;

    bool operator==(const CentralityVector&) const = default;
};

namespace detail {

// One Brandes source pass: BFS path counting plus dependency accumulation.
// Writes the per-vertex dependency of `source` into `delta`.
inline void brandes_pass(const Graph& g, VertexId source, std::vector<double>& delta,
                         std::vector<VertexId>& order, std::vector<std::uint32_t>& dist,
                         std::vector<double>& sigma) {
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), kUnreachableDist);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    order.clear();
    dist[source] = 0;
    sigma[source] = 1.0;
    order.push_back(source);
    for (std::size_t head = 0; head < order.size(); ++head) {
        const VertexId v = order[head];
        for (VertexId w : g.neighbors(v)) {
            if (dist[w] == kUnreachableDist) {
                dist[w] = dist[v] + 1;
                order.push_back(w);
            }
            if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
        }
    }
    for (std::size_t idx = order.size(); idx-- > 1;) {
        const VertexId w = order[idx];
        const double coeff = (1.0 + delta[w]) / sigma[w];
        for (VertexId v : g.neighbors(w)) {
            if (dist[v] + 1 == dist[w]) delta[v] += sigma[v] * coeff;
        }
    }
    delta[source] = 0.0;
}

}  // namespace detail

// Raw (un-normalized) betweenness. Exact mode runs a dependency pass from
// every vertex; sampled mode runs passes from `pivots` distinct seeded source
// vertices and rescales by N/pivots. Accumulation happens in ascending source
// order regardless of thread count, so results are bit-identical for any
// `threads` value.
inline std::vector<double> compute_betweenness_raw(const Graph& g, BetweennessMode mode,
                                                   std::uint32_t pivots = 0,
                                                   std::uint64_t seed = 0, int threads = 1) {
    const std::size_t n = g.vertex_count();
    std::vector<VertexId> sources;
    double scale = 0.5;  // undirected: each unordered pair is seen twice
    if (mode == BetweennessMode::exact) {
        sources.resize(n);
        std::iota(sources.begin(), sources.end(), 0);
    } else {
        if (pivots == 0) throw std::invalid_argument("sampled betweenness needs pivots >= 1");
        pivots = static_cast<std::uint32_t>(std::min<std::size_t>(pivots, n));
        std::vector<VertexId> pool(n);
        std::iota(pool.begin(), pool.end(), 0);
        Rng rng = make_rng(seed, 0x62657477ull);  // independent pivot-choice stream
        for (std::uint32_t i = 0; i < pivots; ++i) {
            const auto pick = i + static_cast<std::size_t>(draw_below(rng, n - i));
            std::swap(pool[i], pool[pick]);
        }
        sources.assign(pool.begin(), pool.begin() + pivots);
        std::sort(sources.begin(), sources.end());
        scale *= static_cast<double>(n) / static_cast<double>(pivots);
    }

    std::vector<double> centrality(n, 0.0);
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(threads > 0 ? threads : 1, sources.size()));
    std::vector<std::vector<double>> deltas(workers, std::vector<double>(n));
    // Block-synchronous: each block computes `workers` passes in parallel,
    // then the deltas merge sequentially in source order.
    for (std::size_t block = 0; block < sources.size(); block += workers) {
        const std::size_t block_end = std::min(sources.size(), block + workers);
        parallel_for_chunks(block_end - block, static_cast<int>(workers),
                            [&](std::size_t begin, std::size_t end) {
                                std::vector<VertexId> order;
                                std::vector<std::uint32_t> dist(n);
                                std::vector<double> sigma(n);
                                order.reserve(n);
                                for (std::size_t k = begin; k < end; ++k)
                                    detail::brandes_pass(g, sources[block + k], deltas[k], order,
                                                         dist, sigma);
                            });
        for (std::size_t k = 0; k < block_end - block; ++k)
            for (std::size_t v = 0; v < n; ++v) centrality[v] += deltas[k][v];
    }
    for (double& c : centrality) c *= scale;
    return centrality;
}

// Divide by the component maximum so every component's peak is exactly 1.
// Components with fewer than three vertices (or an all-zero component, e.g. a
// triangle) get the value 1 everywhere so they keep nonzero sampling weight.
inline CentralityVector normalize_per_component(std::vector<double> raw,
                                                const ComponentLabeling& comps) {
    std::vector<double> max_of(comps.count, 0.0);
    for (std::size_t v = 0; v < raw.size(); ++v)
        max_of[comps.component_of[v]] = std::max(max_of[comps.component_of[v]], raw[v]);
    for (std::size_t v = 0; v < raw.size(); ++v) {
        const VertexId c = comps.component_of[v];
        if (comps.sizes[c] < 3 || max_of[c] == 0.0) {
            raw[v] = 1.0;
        } else {
            raw[v] /= max_of[c];
        }
    }
    CentralityVector out;
    out.values = std::move(raw);
    return out;
}

inline CentralityVector compute_betweenness(const Graph& g, const ComponentLabeling& comps,
                                            BetweennessMode mode, std::uint32_t pivots = 0,
                                            std::uint64_t seed = 0, int threads = 1) {
    CentralityVector out =
        normalize_per_component(compute_betweenness_raw(g, mode, pivots, seed, threads), comps);
    out.mode = mode;
    out.sample_count = mode == BetweennessMode::sampled
                           ? static_cast<std::uint32_t>(std::min<std::size_t>(pivots, g.vertex_count()))
                           : 0;
    return out;
}

inline constexpr std::size_t kExactBetweennessLimit = 2000;
inline constexpr std::uint32_t kDefaultPivots = 512;

struct PrecomputeOptions {
    int threads = 1;
    std::size_t memory_budget_bytes = kDefaultMemoryBudgetBytes;
    // Betweenness policy: exact up to kExactBetweennessLimit vertices, sampled
    // with `pivots` sources beyond that. force_exact overrides.
    std::uint32_t pivots = kDefaultPivots;
    bool force_exact = false;
    std::uint64_t seed = 0;
};

template <typename Cell>
struct Precomputed {
    SquareMatrix<Cell> dist;
    SquareMatrix<Cell> middle;
    ComponentLabeling components;
    CentralityVector centrality;
};

template <typename Cell>
Precomputed<Cell> precompute_all(const Graph& g, const PrecomputeOptions& opts = {}) {
    Precomputed<Cell> out;
    out.dist = compute_apsp<Cell>(g, opts.threads, opts.memory_budget_bytes);
    out.middle = compute_middle_matrix<Cell>(g, out.dist, opts.threads, opts.memory_budget_bytes);
    out.components = connected_components(g);
    const bool exact = opts.force_exact || g.vertex_count() <= kExactBetweennessLimit;
    out.centrality = compute_betweenness(
        g, out.components, exact ? BetweennessMode::exact : BetweennessMode::sampled,
        opts.pivots, opts.seed, opts.threads);
    return out;
}

// Per-vertex eccentricity within its component (max finite distance in the row).
template <typename Cell>
std::vector<std::uint32_t> component_eccentricities(const SquareMatrix<Cell>& dist) {
    const std::size_t n = dist.size();
    std::vector<std::uint32_t> ecc(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        std::uint32_t best = 0;
        for (Cell d : dist.row(v))
            if (d != kUnreachableCell<Cell>) best = std::max<std::uint32_t>(best, d);
        ecc[v] = best;
    }
    return ecc;
}

}  // namespace burnsolver
