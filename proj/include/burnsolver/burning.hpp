#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "burnsolver/graph.hpp"
#include "burnsolver/precompute.hpp"

namespace burnsolver {

// Ordered fire sources v_1..v_b; position j is fired at step j-1 and spreads
// b-j further hops before the process ends.
using BurningSequence = std::vector<VertexId>;

// Stand-in for an infinite hop distance. Any graph the N x N matrices can
// hold has diameter far below this, and N * kInfiniteBurnDistance^2 still
// fits in int64, so costs never overflow.
inline constexpr std::int64_t kInfiniteBurnDistance = std::int64_t{1} << 20;

namespace detail {

template <typename Cell>
std::int64_t hop_distance(const SquareMatrix<Cell>& dist, VertexId a, VertexId b) {
    const Cell d = dist.at(a, b);
    return d == kUnreachableCell<Cell> ? kInfiniteBurnDistance : static_cast<std::int64_t>(d);
}

}  // namespace detail

// Distance from vertex i to the nearest burned vertex once the process ends:
// 0 when i is burned, otherwise min_j dist(i, v_j) - (b - j) with
// cross-component distances treated as infinite.
template <typename Cell>
std::int64_t burning_distance(const SquareMatrix<Cell>& dist, const BurningSequence& seq,
                              VertexId i) {
    const auto b = static_cast<std::int64_t>(seq.size());
    std::int64_t best = kInfiniteBurnDistance;
    for (std::int64_t j = 1; j <= b; ++j) {
        const std::int64_t d = detail::hop_distance(dist, i, seq[j - 1]);
        if (d >= kInfiniteBurnDistance) continue;
        best = std::min(best, d - (b - j));
        if (best <= 0) return 0;
    }
    return best;
}

// Sum of squared burning distances over all vertices.
template <typename Cell>
std::int64_t sequence_cost(const SquareMatrix<Cell>& dist, const BurningSequence& seq) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const std::int64_t d = burning_distance(dist, seq, static_cast<VertexId>(i));
        total += d * d;
    }
    return total;
}

// The sources must be pairwise compatible (each fired while still unburned,
// i.e. dist(v_i, v_j) >= j - i) and their shrinking neighborhoods must cover
// the whole graph.
template <typename Cell>
bool is_valid_burning_sequence(const SquareMatrix<Cell>& dist, const BurningSequence& seq) {
    if (seq.empty()) return false;
    for (VertexId v : seq)
        if (v >= dist.size()) return false;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (detail::hop_distance(dist, seq[i], seq[j]) <
                static_cast<std::int64_t>(j - i))
                return false;
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (burning_distance(dist, seq, static_cast<VertexId>(i)) > 0) return false;
    return true;
}

inline constexpr std::int32_t kUnburned = -1;

struct BurnState {
    std::vector<std::int32_t> burned_at;  // first-burn step index, kUnburned otherwise
};

// Step-by-step wavefront simulation of the burning process. Sources that are
// already burned when their step comes are skipped (the sequence may be
// invalid); spreading is unaffected.
inline BurnState simulate_burning(const Graph& g, const BurningSequence& seq) {
    BurnState state;
    state.burned_at.assign(g.vertex_count(), kUnburned);
    std::vector<VertexId> frontier;
    std::vector<VertexId> next;
    for (std::size_t step = 0; step < seq.size(); ++step) {
        next.clear();
        for (VertexId v : frontier) {
            for (VertexId w : g.neighbors(v)) {
                if (state.burned_at[w] != kUnburned) continue;
                state.burned_at[w] = static_cast<std::int32_t>(step);
                next.push_back(w);
            }
        }
        const VertexId src = seq[step];
        if (state.burned_at[src] == kUnburned) {
            state.burned_at[src] = static_cast<std::int32_t>(step);
            next.push_back(src);
        }
        frontier.swap(next);
    }
    return state;
}

struct ExactBurningResult {
    bool found = false;
    std::size_t length = 0;
    BurningSequence witness;
};

inline constexpr std::size_t kExactOracleVertexGuard = 14;

namespace detail {

template <typename Cell>
struct ExactSearch {
    const SquareMatrix<Cell>& dist;
    std::size_t n;
    std::size_t k = 0;
    BurningSequence placed;
    BurningSequence witness;

    explicit ExactSearch(const SquareMatrix<Cell>& d) : dist(d), n(d.size()) {}

    // Greedy lower bound on how many more sources the uncovered vertices
    // need: vertices pairwise farther apart than twice the next spread can
    // never share a source.
    bool infeasible(const std::vector<std::int64_t>& residual) const {
        const std::size_t remaining = k - placed.size();
        const std::int64_t spread = static_cast<std::int64_t>(remaining) - 1;
        std::vector<VertexId> reps;
        for (std::size_t u = 0; u < n; ++u) {
            if (residual[u] <= 0) continue;
            bool isolated = true;
            for (VertexId r : reps) {
                if (hop_distance(dist, static_cast<VertexId>(u), r) <= 2 * spread) {
                    isolated = false;
                    break;
                }
            }
            if (isolated) {
                reps.push_back(static_cast<VertexId>(u));
                if (reps.size() > remaining) return true;
            }
        }
        return false;
    }

    bool search(const std::vector<std::int64_t>& residual) {
        if (placed.size() == k) {
            for (std::size_t u = 0; u < n; ++u)
                if (residual[u] > 0) return false;
            witness = placed;
            return true;
        }
        if (infeasible(residual)) return false;
        const auto pos = static_cast<std::int64_t>(placed.size()) + 1;  // 1-based
        const std::int64_t spread = static_cast<std::int64_t>(k) - pos;
        for (std::size_t v = 0; v < n; ++v) {
            // Fire only vertices still unburned at their firing step.
            bool admissible = true;
            for (std::size_t i = 0; i < placed.size(); ++i) {
                if (hop_distance(dist, placed[i], static_cast<VertexId>(v)) <
                    pos - static_cast<std::int64_t>(i + 1)) {
                    admissible = false;
                    break;
                }
            }
            if (!admissible) continue;
            std::vector<std::int64_t> child = residual;
            for (std::size_t u = 0; u < n; ++u)
                child[u] = std::min(child[u],
                                    hop_distance(dist, static_cast<VertexId>(u),
                                                 static_cast<VertexId>(v)) -
                                        spread);
            placed.push_back(static_cast<VertexId>(v));
            if (search(child)) return true;
            placed.pop_back();
        }
        return false;
    }
};

}  // namespace detail

// Depth-first enumeration of ordered source tuples with admissible pruning.
// Only meant for small graphs; refuses N > 14 unless forced.
template <typename Cell>
ExactBurningResult exact_burning_number(const Graph& g, const SquareMatrix<Cell>& dist,
                                        std::size_t max_len, bool force = false) {
    const std::size_t n = g.vertex_count();
    if (n > kExactOracleVertexGuard && !force)
        throw std::invalid_argument("exact oracle refuses graphs over " +
                                    std::to_string(kExactOracleVertexGuard) +
                                    " vertices unless forced");
    detail::ExactSearch<Cell> search(dist);
    for (std::size_t k = 1; k <= max_len; ++k) {
        search.k = k;
        search.placed.clear();
        std::vector<std::int64_t> residual(n, kInfiniteBurnDistance);
        if (search.search(residual)) {
            return {true, k, search.witness};
        }
    }
    return {};
}

}  // namespace burnsolver
