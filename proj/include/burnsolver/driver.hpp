#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "burnsolver/burning.hpp"
#include "burnsolver/ga.hpp"
#include "burnsolver/graph.hpp"
#include "burnsolver/precompute.hpp"

namespace burnsolver {

struct SolverOptions {
    GaConfig ga;
    std::uint32_t chr_size_offset = 3;  // chromosome stores max(1, b - offset) sources
    PrecomputeOptions precompute;
};

struct DecisionRecord {
    std::uint32_t b = 0;
    bool found = false;
    std::uint32_t generations = 0;  // 0 for the constructive fallback witness
    double wall_ms = 0.0;
};

struct SolveReport {
    std::string graph_name;
    std::uint32_t best_length = 0;
    BurningSequence witness;
    std::vector<DecisionRecord> decisions;
    double precompute_ms = 0.0;
    double total_ms = 0.0;
    std::uint64_t seed = 0;
    bool from_construction = false;  // best witness came from the fallback, not the GA
};

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
        .count();
}

}  // namespace detail

// GA parameters for one probed burning length.
inline GaConfig config_for_length(const SolverOptions& opts, std::uint32_t b, std::size_t n) {
    GaConfig cfg = opts.ga;
    const std::uint32_t raw =
        b > opts.chr_size_offset ? b - opts.chr_size_offset : 1;
    cfg.chr_size = static_cast<std::uint32_t>(std::min<std::size_t>(std::max<std::uint32_t>(raw, 1), n));
    cfg.min_dist = cfg.chr_size;
    cfg.seed = derive_seed(opts.ga.seed, b);  // independent but reproducible per probe
    return cfg;
}

template <typename Cell>
BurningSequence center_fallback_witness(const Graph& g, const Precomputed<Cell>& pre);

// Decision procedure: is there a valid burning sequence of length at most b?
// A false answer is NOT_FOUND, never a proof of nonexistence. Lengths at or
// above the deterministic construction are answered by the construction
// itself (a witness of length <= b already exists); the GA runs only for the
// contested range below it.
template <typename Cell>
GaOutcome decide_burnable(const Graph& g, const Precomputed<Cell>& pre, std::uint32_t b,
                          const SolverOptions& opts,
                          const BurningSequence* known_witness = nullptr) {
    if (b == 0) return {};
    BurningSequence local;
    if (known_witness == nullptr) {
        local = center_fallback_witness(g, pre);
        known_witness = &local;
    }
    if (known_witness->size() <= b) return {true, *known_witness, 0};
    return run_ga(g, pre, b, config_for_length(opts, b, g.vertex_count()));
}

// Deterministic valid witness: fire each component's minimum-eccentricity
// vertex in descending eccentricity order, then keep firing the unburned
// vertex farthest from the fire (ties to the smallest id) until the whole
// graph is burned. Every source fires while unburned, so the result is
// always a valid burning sequence; its length is the binary-search upper
// bound.
template <typename Cell>
BurningSequence center_fallback_witness(const Graph& g, const Precomputed<Cell>& pre) {
    const std::size_t n = g.vertex_count();
    const std::vector<std::uint32_t> ecc = component_eccentricities(pre.dist);

    std::vector<VertexId> center(pre.components.count, kNoVertex);
    for (std::size_t v = 0; v < n; ++v) {
        VertexId& c = center[pre.components.component_of[v]];
        if (c == kNoVertex || ecc[v] < ecc[c]) c = static_cast<VertexId>(v);
    }
    std::sort(center.begin(), center.end(), [&](VertexId a, VertexId b) {
        return ecc[a] != ecc[b] ? ecc[a] > ecc[b] : a < b;
    });

    BurningSequence seq;
    std::vector<char> burned(n, 0);
    std::size_t burned_count = 0;
    std::vector<VertexId> frontier;
    std::vector<VertexId> next;
    for (std::size_t step = 0; burned_count < n; ++step) {
        // The source must be unburned before this step's spread; firing while
        // the fire arrives (d(v_i, v_j) == j - i) is still a legal sequence.
        VertexId source = kNoVertex;
        if (step < center.size()) {
            source = center[step];  // centers sit in distinct components, never pre-burned
            assert(!burned[source]);
        } else {
            // Multi-source BFS from the burned set; pick the farthest unburned
            // vertex so late sources handle the worst stragglers.
            std::vector<std::uint32_t> hops(n, kUnreachableDist);
            std::vector<VertexId> queue;
            for (std::size_t v = 0; v < n; ++v) {
                if (burned[v]) {
                    hops[v] = 0;
                    queue.push_back(static_cast<VertexId>(v));
                }
            }
            for (std::size_t head = 0; head < queue.size(); ++head) {
                const VertexId v = queue[head];
                for (VertexId w : g.neighbors(v)) {
                    if (hops[w] != kUnreachableDist) continue;
                    hops[w] = hops[v] + 1;
                    queue.push_back(w);
                }
            }
            std::uint32_t best_hops = 0;
            for (std::size_t v = 0; v < n; ++v) {
                if (burned[v]) continue;
                if (source == kNoVertex || hops[v] > best_hops) {
                    source = static_cast<VertexId>(v);
                    best_hops = hops[v];
                }
            }
        }
        next.clear();
        for (VertexId v : frontier) {
            for (VertexId w : g.neighbors(v)) {
                if (burned[w]) continue;
                burned[w] = 1;
                ++burned_count;
                next.push_back(w);
            }
        }
        assert(source != kNoVertex);
        seq.push_back(source);
        if (!burned[source]) {
            burned[source] = 1;
            ++burned_count;
            next.push_back(source);
        }
        frontier.swap(next);
    }
    assert(is_valid_burning_sequence(pre.dist, seq));
    return seq;
}

// Binary search over the decision procedure. Precomputation happens exactly
// once (or is supplied by the caller, e.g. from the on-disk cache). The
// search starts from the constructive upper bound and, because the GA is
// stochastic, finishes by re-probing bestLength - 1 when it was never tried.
template <typename Cell>
SolveReport find_burning_length(const Graph& g, const SolverOptions& opts,
                                std::string graph_name = {},
                                const Precomputed<Cell>* precomputed = nullptr) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport report;
    report.graph_name = std::move(graph_name);
    report.seed = opts.ga.seed;

    Precomputed<Cell> local;
    if (precomputed == nullptr) {
        PrecomputeOptions popts = opts.precompute;
        popts.seed = derive_seed(opts.ga.seed, 0x70726543ull);
        local = precompute_all<Cell>(g, popts);
        precomputed = &local;
        report.precompute_ms = detail::elapsed_ms(t0);
    }
    const Precomputed<Cell>& pre = *precomputed;

    const auto tw = std::chrono::steady_clock::now();
    BurningSequence best_witness = center_fallback_witness(g, pre);
    report.from_construction = true;
    report.decisions.push_back(
        {static_cast<std::uint32_t>(best_witness.size()), true, 0, detail::elapsed_ms(tw)});

    std::map<std::uint32_t, bool> probed;
    auto probe = [&](std::uint32_t b) {
        const auto tp = std::chrono::steady_clock::now();
        GaOutcome out = decide_burnable(g, pre, b, opts, &best_witness);
        report.decisions.push_back({b, out.found, out.generations, detail::elapsed_ms(tp)});
        probed[b] = out.found;
        if (out.found) {
            assert(out.witness.size() <= b);
            best_witness = std::move(out.witness);
            report.from_construction = false;
        }
        return out.found;
    };

    // A valid sequence needs one source per component.
    const auto lo_bound = static_cast<std::uint32_t>(std::max<std::size_t>(pre.components.count, 1));
    std::uint32_t lo = lo_bound;
    std::uint32_t hi = static_cast<std::uint32_t>(best_witness.size()) - 1;
    while (lo <= hi && hi >= lo_bound) {
        const std::uint32_t mid = lo + (hi - lo) / 2;
        if (probe(mid)) {
            hi = static_cast<std::uint32_t>(best_witness.size()) - 1;
        } else {
            lo = mid + 1;
        }
    }
    // Confirm the answer: keep probing one below the best until a probe fails.
    while (best_witness.size() > lo_bound) {
        const auto below = static_cast<std::uint32_t>(best_witness.size()) - 1;
        if (probed.count(below)) break;
        if (!probe(below)) break;
    }

    report.best_length = static_cast<std::uint32_t>(best_witness.size());
    report.witness = std::move(best_witness);
    report.total_ms = detail::elapsed_ms(t0);
    return report;
}

}  // namespace burnsolver
