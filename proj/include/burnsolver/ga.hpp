#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "burnsolver/burning.hpp"
#include "burnsolver/graph.hpp"
#include "burnsolver/parallel.hpp"
#include "burnsolver/precompute.hpp"
#include "burnsolver/rng.hpp"

namespace burnsolver {

struct GaConfig {
    std::uint32_t chr_size = 1;        // fire sources stored per chromosome
    std::uint32_t min_dist = 1;        // initial pairwise source spacing at init
    std::uint32_t skip_number = 20;    // unburned-count cutoff for evaluation
    std::uint32_t pop_size = 300;
    std::uint32_t max_generations = 500;
    std::uint32_t crossover_population = 500;  // offspring per generation
    double mutation_prob = 0.1;
    double alpha = 0.05;               // sigmoid sampling midpoint
    double beta = 200.0;               // sigmoid sampling steepness
    std::uint64_t seed = 0;
    std::int64_t inf_cost = 0;         // 0 = derive from the distance matrix
    int threads = 1;
};

inline constexpr std::int64_t kUnevaluatedCost = -1;

struct Chromosome {
    std::vector<VertexId> prefix;
    std::int64_t cost = kUnevaluatedCost;
    std::vector<VertexId> completion;  // best suffix found; empty when skipped
    std::uint32_t unburned_count = 0;

    bool evaluated() const { return cost != kUnevaluatedCost; }
};

struct EvalResult {
    std::int64_t cost = 0;
    std::vector<VertexId> completion;
    std::uint32_t unburned_count = 0;
};

// Sentinel cost for skipped chromosomes: strictly above any cost a sequence
// that reaches every component can produce, while 1/(cost+1) stays positive.
template <typename Cell>
std::int64_t derive_inf_cost(const SquareMatrix<Cell>& dist) {
    std::int64_t max_finite = 0;
    for (Cell d : dist.cells())
        if (d != kUnreachableCell<Cell>)
            max_finite = std::max<std::int64_t>(max_finite, static_cast<std::int64_t>(d));
    const std::int64_t n = static_cast<std::int64_t>(dist.size());
    return n * (max_finite + 1) * (max_finite + 1) + 1;
}

inline double sigmoid_weight(double centrality, double alpha, double beta) {
    return 1.0 / (1.0 + std::exp(-beta * (centrality - alpha)));
}

// Per-vertex sampling weights Sigmoid(beta * (c_v - alpha)), built once per run.
struct SamplingWeights {
    std::vector<double> weight;

    SamplingWeights() = default;
    SamplingWeights(const CentralityVector& centrality, double alpha, double beta) {
        weight.reserve(centrality.values.size());
        for (double c : centrality.values) weight.push_back(sigmoid_weight(c, alpha, beta));
    }
};

// Weighted draw over non-excluded vertices. Throws when nothing is left;
// callers that can relax their exclusions (MinDist) check availability first.
inline VertexId sample_vertex(const SamplingWeights& weights, const std::vector<char>& excluded,
                              Rng& rng) {
    double total = 0.0;
    for (std::size_t v = 0; v < weights.weight.size(); ++v)
        if (!excluded[v]) total += weights.weight[v];
    if (total <= 0.0) throw std::runtime_error("sample_vertex: all vertices excluded");
    double target = draw_unit(rng) * total;
    VertexId last = kNoVertex;
    for (std::size_t v = 0; v < weights.weight.size(); ++v) {
        if (excluded[v]) continue;
        last = static_cast<VertexId>(v);
        target -= weights.weight[v];
        if (target < 0.0) return last;
    }
    return last;  // float round-off: fall back to the last admissible vertex
}

inline VertexId sample_vertex(const CentralityVector& centrality, const std::vector<char>& excluded,
                              double alpha, double beta, Rng& rng) {
    SamplingWeights w(centrality, alpha, beta);
    return sample_vertex(w, excluded, rng);
}

// Draws chr_size sources one by one, excluding vertices closer than the
// current MinDist to any already-chosen source. When every vertex is
// excluded, MinDist drops by one and the step retries; it resets for the
// next chromosome. Beneath the relaxable MinDist sits a hard floor: a
// candidate for position j must keep dist >= j - i to the source at each
// earlier position i, so generated prefixes fire every source while it is
// still unburned whenever the graph allows it.
template <typename Cell>
std::vector<VertexId> init_prefix(const SquareMatrix<Cell>& dist, const SamplingWeights& weights,
                                  const GaConfig& cfg, Rng& rng) {
    const std::size_t n = dist.size();
    if (cfg.chr_size > n)
        throw std::invalid_argument("chromosome size exceeds vertex count");
    std::vector<VertexId> chosen;
    chosen.reserve(cfg.chr_size);
    std::vector<char> excluded(n, 0);
    std::uint32_t current_min_dist = cfg.min_dist;

    // Level 0 keeps only distinctness so the loop always terminates.
    auto rebuild_exclusions = [&](std::uint32_t min_dist_level) {
        std::fill(excluded.begin(), excluded.end(), 0);
        std::size_t available = n;
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t i = 0; i < chosen.size(); ++i) {
                const std::uint32_t gap = static_cast<std::uint32_t>(chosen.size() - i);
                const std::uint32_t required =
                    min_dist_level == 0 ? 1 : std::max(min_dist_level, gap);
                const Cell d = dist.at(v, chosen[i]);
                if (v == chosen[i] || (d != kUnreachableCell<Cell> && d < required)) {
                    excluded[v] = 1;
                    --available;
                    break;
                }
            }
        }
        return available;
    };

    for (std::uint32_t step = 0; step < cfg.chr_size; ++step) {
        std::size_t available = rebuild_exclusions(current_min_dist);
        while (available == 0 && current_min_dist > 0) {
            --current_min_dist;
            available = rebuild_exclusions(current_min_dist);
        }
        chosen.push_back(sample_vertex(weights, excluded, rng));
    }
    return chosen;
}

namespace detail {

// Suffix-completion search state for one chromosome evaluation.
template <typename Cell>
struct CompletionSearch {
    const SquareMatrix<Cell>& dist;
    std::uint32_t b;
    std::int64_t inf_cost;
    std::vector<VertexId> prefix;

    std::vector<VertexId> unburned;            // sorted by (prefix residual, id)
    std::vector<std::int64_t> residual;        // current residual per unburned index
    std::vector<VertexId> suffix;
    std::uint32_t uncovered = 0;               // unburned entries with residual > 0
    std::vector<std::vector<std::int64_t>> undo_stack;  // one reusable snapshot per depth

    std::int64_t best_cost;
    std::vector<VertexId> best_completion;

    CompletionSearch(const SquareMatrix<Cell>& d, std::uint32_t total_len, std::int64_t inf,
                     std::vector<VertexId> pfx)
        : dist(d), b(total_len), inf_cost(inf), prefix(std::move(pfx)), best_cost(inf) {}

    std::int64_t residual_cost() const {
        std::int64_t total = 0;
        for (std::int64_t r : residual)
            if (r > 0) total += r * r;
        return total;
    }

    bool admissible_in_time(VertexId v, std::size_t position) const {
        // Suffix members only; prefix compatibility is implied by being
        // unburned with respect to the prefix.
        const std::size_t first_suffix_pos = prefix.size() + 1;
        for (std::size_t q = 0; q < suffix.size(); ++q) {
            if (hop_distance(dist, suffix[q], v) <
                static_cast<std::int64_t>(position - (first_suffix_pos + q)))
                return false;
        }
        return true;
    }

    // Record a candidate full-length sequence cost (first-found wins ties).
    void offer(std::int64_t cost, std::vector<VertexId> completion) {
        if (cost < best_cost) {
            best_cost = cost;
            best_completion = std::move(completion);
        }
    }

    // All unburned vertices are covered but suffix slots remain. Try to pad
    // the sequence to full length with still-fireable vertices; if the padded
    // sequence cannot reach length b, fall back to the shortest valid
    // truncation that keeps the whole prefix.
    void finish_covered() {
        std::vector<VertexId> sources = prefix;
        sources.insert(sources.end(), suffix.begin(), suffix.end());
        while (sources.size() < b) {
            const std::size_t position = sources.size() + 1;
            VertexId pad = kNoVertex;
            for (std::size_t w = 0; w < dist.size(); ++w) {
                bool ok = true;
                for (std::size_t q = 0; q < sources.size(); ++q) {
                    if (hop_distance(dist, sources[q], static_cast<VertexId>(w)) <
                        static_cast<std::int64_t>(position - (q + 1))) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    pad = static_cast<VertexId>(w);
                    break;
                }
            }
            if (pad == kNoVertex) break;
            sources.push_back(pad);
        }
        if (sources.size() == b) {
            offer(0, {sources.begin() + prefix.size(), sources.end()});
            return;
        }
        for (std::size_t len = prefix.size(); len <= sources.size(); ++len) {
            BurningSequence trial(sources.begin(), sources.begin() + len);
            if (!trial.empty() && is_valid_burning_sequence(dist, trial)) {
                offer(0, {sources.begin() + prefix.size(), sources.begin() + len});
                return;
            }
        }
        // Covered under b-step timing but no assemblable witness; keep the
        // cost positive so cost 0 always comes with a valid sequence.
        offer(std::max<std::int64_t>(residual_cost(), 1),
              {sources.begin() + prefix.size(), sources.end()});
    }

    void search(std::uint32_t depth) {
        if (best_cost == 0) return;
        const std::uint32_t suffix_len = b - static_cast<std::uint32_t>(prefix.size());
        if (depth == suffix_len) {
            offer(residual_cost(), suffix);
            return;
        }
        const std::size_t position = prefix.size() + depth + 1;
        const std::int64_t spread = static_cast<std::int64_t>(b) - static_cast<std::int64_t>(position);
        bool any_candidate = false;
        if (undo_stack.size() <= depth) undo_stack.resize(depth + 1);
        for (std::size_t idx = 0; idx < unburned.size(); ++idx) {
            const VertexId v = unburned[idx];
            if (std::find(suffix.begin(), suffix.end(), v) != suffix.end()) continue;
            if (!admissible_in_time(v, position)) continue;
            any_candidate = true;

            undo_stack[depth].assign(residual.begin(), residual.end());
            const std::uint32_t saved_uncovered = uncovered;
            for (std::size_t u = 0; u < unburned.size(); ++u) {
                const std::int64_t r = hop_distance(dist, unburned[u], v) - spread;
                if (r < residual[u]) {
                    if (residual[u] > 0 && r <= 0) --uncovered;
                    residual[u] = r;
                }
            }
            suffix.push_back(v);
            search(depth + 1);
            suffix.pop_back();
            residual.assign(undo_stack[depth].begin(), undo_stack[depth].end());
            uncovered = saved_uncovered;
            if (best_cost == 0) return;
        }
        if (!any_candidate) {
            if (uncovered == 0) {
                finish_covered();
            } else {
                offer(residual_cost(), suffix);
            }
        }
    }
};

}  // namespace detail

// Fitness of a chromosome prefix for total burning length b. Computes the
// set of vertices the prefix leaves unburned, skips with inf_cost when that
// set exceeds skip_number, and otherwise brute-forces ordered suffix
// completions drawn from the unburned set (each source still fireable at its
// step), returning the minimum sequence cost with early exit at zero.
// Prefixes whose sources collide in time also evaluate to inf_cost.
template <typename Cell>
EvalResult evaluate_prefix(const SquareMatrix<Cell>& dist, const std::vector<VertexId>& prefix,
                           std::uint32_t b, const GaConfig& cfg) {
    if (cfg.inf_cost <= 0)
        throw std::invalid_argument("evaluate_prefix needs a resolved inf_cost");
    assert(b >= prefix.size());
    const std::size_t n = dist.size();
    const auto chr_size = static_cast<std::int64_t>(prefix.size());

    EvalResult out;
    // Unburned set and residual burning distances with respect to the prefix.
    std::vector<VertexId> unburned;
    std::vector<std::int64_t> residual;
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t r = kInfiniteBurnDistance;
        for (std::int64_t j = 1; j <= chr_size; ++j) {
            const std::int64_t d = detail::hop_distance(dist, static_cast<VertexId>(i), prefix[j - 1]);
            if (d >= kInfiniteBurnDistance) continue;
            r = std::min(r, d - (static_cast<std::int64_t>(b) - j));
            if (r <= 0) break;
        }
        if (r > 0) {
            unburned.push_back(static_cast<VertexId>(i));
            residual.push_back(r);
            if (unburned.size() > cfg.skip_number) {
                // Count the rest so unburned_count reports the true size.
                std::uint32_t count = static_cast<std::uint32_t>(unburned.size());
                for (std::size_t k = i + 1; k < n; ++k) {
                    std::int64_t rk = kInfiniteBurnDistance;
                    for (std::int64_t j = 1; j <= chr_size; ++j) {
                        const std::int64_t d =
                            detail::hop_distance(dist, static_cast<VertexId>(k), prefix[j - 1]);
                        if (d >= kInfiniteBurnDistance) continue;
                        rk = std::min(rk, d - (static_cast<std::int64_t>(b) - j));
                        if (rk <= 0) break;
                    }
                    if (rk > 0) ++count;
                }
                out.cost = cfg.inf_cost;
                out.unburned_count = count;
                return out;
            }
        }
    }
    out.unburned_count = static_cast<std::uint32_t>(unburned.size());

    for (std::size_t i = 0; i < prefix.size(); ++i) {
        for (std::size_t j = i + 1; j < prefix.size(); ++j) {
            if (detail::hop_distance(dist, prefix[i], prefix[j]) <
                static_cast<std::int64_t>(j - i)) {
                out.cost = cfg.inf_cost;
                return out;
            }
        }
    }

    detail::CompletionSearch<Cell> search(dist, b, cfg.inf_cost, prefix);
    // Visit candidates in ascending burning-distance-to-prefix order.
    std::vector<std::size_t> by_residual(unburned.size());
    for (std::size_t i = 0; i < by_residual.size(); ++i) by_residual[i] = i;
    std::sort(by_residual.begin(), by_residual.end(), [&](std::size_t a, std::size_t c) {
        return residual[a] != residual[c] ? residual[a] < residual[c]
                                          : unburned[a] < unburned[c];
    });
    for (std::size_t i : by_residual) {
        search.unburned.push_back(unburned[i]);
        search.residual.push_back(residual[i]);
    }
    search.uncovered = static_cast<std::uint32_t>(search.unburned.size());
    search.search(0);

    out.cost = search.best_cost;
    out.completion = std::move(search.best_completion);
    return out;
}

// Roulette-wheel selection with weight 1/(cost + 1).
inline std::vector<double> build_selection_cdf(const std::vector<Chromosome>& population) {
    std::vector<double> cdf;
    cdf.reserve(population.size());
    double total = 0.0;
    for (const Chromosome& c : population) {
        assert(c.evaluated());
        total += 1.0 / (static_cast<double>(c.cost) + 1.0);
        cdf.push_back(total);
    }
    return cdf;
}

inline std::size_t roulette_select_index(const std::vector<double>& cdf, Rng& rng) {
    assert(!cdf.empty());
    const double target = draw_unit(rng) * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

// Per position, the child takes the first parent's source, the second
// parent's source, or their middle vertex, each with equal probability.
// The middle option exists only when both sources share a component.
template <typename Cell>
std::vector<VertexId> crossover(const std::vector<VertexId>& p1, const std::vector<VertexId>& p2,
                                const SquareMatrix<Cell>& middle, Rng& rng) {
    assert(p1.size() == p2.size());
    std::vector<VertexId> child(p1.size());
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (p1[i] == p2[i]) {
            child[i] = p1[i];
            continue;
        }
        const Cell mid = middle.at(p1[i], p2[i]);
        const bool has_mid = mid != kUnreachableCell<Cell>;
        switch (draw_below(rng, has_mid ? 3 : 2)) {
            case 0: child[i] = p1[i]; break;
            case 1: child[i] = p2[i]; break;
            default: child[i] = static_cast<VertexId>(mid); break;
        }
    }
    return child;
}

// Replaces each selected source with a uniformly random neighbor.
inline std::vector<VertexId> mutate_neighbor(std::vector<VertexId> prefix, const Graph& g,
                                             double mutation_prob, Rng& rng) {
    for (VertexId& v : prefix) {
        if (draw_unit(rng) >= mutation_prob) continue;
        const auto nbrs = g.neighbors(v);
        if (nbrs.empty()) continue;
        v = nbrs[draw_below(rng, nbrs.size())];
    }
    return prefix;
}

// Replaces each selected source with a centrality-sampled vertex from the
// same connected component.
inline std::vector<VertexId> mutate_resample(std::vector<VertexId> prefix,
                                             const ComponentLabeling& comps,
                                             const SamplingWeights& weights, double mutation_prob,
                                             Rng& rng) {
    const std::size_t n = weights.weight.size();
    std::vector<char> excluded;
    for (VertexId& v : prefix) {
        if (draw_unit(rng) >= mutation_prob) continue;
        excluded.assign(n, 0);
        const VertexId component = comps.component_of[v];
        for (std::size_t u = 0; u < n; ++u)
            if (comps.component_of[u] != component) excluded[u] = 1;
        v = sample_vertex(weights, excluded, rng);
    }
    return prefix;
}

struct GaOutcome {
    bool found = false;
    BurningSequence witness;
    std::uint32_t generations = 0;  // evaluation passes run (1 = initial population)
};

// Called once per survivor-selection step with the best cost so far.
using GaObserver = std::function<void(std::uint32_t generation, std::int64_t best_cost)>;

namespace detail {

struct PrefixHash {
    std::size_t operator()(const std::vector<VertexId>& prefix) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (VertexId v : prefix) {
            h ^= v;
            h *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// Evaluation depends only on the prefix, so results are shared across
// generations. Populations converge onto few distinct prefixes; caching
// collapses most of the evaluation work on long runs.
using EvalCache = std::unordered_map<std::vector<VertexId>, EvalResult, PrefixHash>;

}  // namespace detail

// One decision run: initialize, then evolve until a zero-cost chromosome
// appears or the generation cap is hit. Offspring are produced from
// per-index rng streams and evaluated independently, so results are
// identical for any thread count.
template <typename Cell>
GaOutcome run_ga(const Graph& g, const Precomputed<Cell>& pre, std::uint32_t b, GaConfig cfg,
                 const GaObserver& observer = {}) {
    if (cfg.chr_size == 0 || b < cfg.chr_size)
        throw std::invalid_argument("run_ga requires 1 <= chr_size <= b");
    if (cfg.inf_cost <= 0) cfg.inf_cost = derive_inf_cost(pre.dist);
    const SamplingWeights weights(pre.centrality, cfg.alpha, cfg.beta);

    detail::EvalCache cache;
    // Fills the cost fields of every chromosome in the pool: cached prefixes
    // are copied in the owner thread, the rest evaluate in parallel and are
    // inserted back afterwards, keeping results thread-count independent.
    auto evaluate_pool = [&](std::vector<Chromosome>& pool) {
        std::vector<std::size_t> misses;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const auto hit = cache.find(pool[i].prefix);
            if (hit == cache.end()) {
                misses.push_back(i);
                continue;
            }
            pool[i].cost = hit->second.cost;
            pool[i].completion = hit->second.completion;
            pool[i].unburned_count = hit->second.unburned_count;
        }
        std::vector<EvalResult> fresh(misses.size());
        parallel_for_chunks(misses.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t k = begin; k < end; ++k)
                fresh[k] = evaluate_prefix(pre.dist, pool[misses[k]].prefix, b, cfg);
        });
        for (std::size_t k = 0; k < misses.size(); ++k) {
            Chromosome& c = pool[misses[k]];
            c.cost = fresh[k].cost;
            c.completion = fresh[k].completion;
            c.unburned_count = fresh[k].unburned_count;
            cache.emplace(c.prefix, std::move(fresh[k]));
        }
    };

    std::vector<Chromosome> population(cfg.pop_size);
    parallel_for_chunks(population.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng = make_rng(cfg.seed, 0x696e6974ull, i);
            population[i].prefix = init_prefix(pre.dist, weights, cfg, rng);
        }
    });
    evaluate_pool(population);

    auto find_solution = [&](const std::vector<Chromosome>& pool) -> const Chromosome* {
        for (const Chromosome& c : pool) {
            if (c.cost != 0) continue;
            BurningSequence witness = c.prefix;
            witness.insert(witness.end(), c.completion.begin(), c.completion.end());
            if (is_valid_burning_sequence(pre.dist, witness)) return &c;
            assert(false && "zero-cost chromosome without a valid witness");
        }
        return nullptr;
    };
    auto make_witness = [](const Chromosome& c) {
        BurningSequence w = c.prefix;
        w.insert(w.end(), c.completion.begin(), c.completion.end());
        return w;
    };

    if (const Chromosome* hit = find_solution(population))
        return {true, make_witness(*hit), 1};

    std::vector<Chromosome> offspring;
    for (std::uint32_t gen = 1; gen <= cfg.max_generations; ++gen) {
        const std::vector<double> cdf = build_selection_cdf(population);
        offspring.assign(cfg.crossover_population, {});
        parallel_for_chunks(offspring.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t k = begin; k < end; ++k) {
                Rng rng = make_rng(cfg.seed, 0x67656eull, gen, k);
                const Chromosome& a = population[roulette_select_index(cdf, rng)];
                const Chromosome& b2 = population[roulette_select_index(cdf, rng)];
                std::vector<VertexId> child = crossover(a.prefix, b2.prefix, pre.middle, rng);
                child = mutate_neighbor(std::move(child), g, cfg.mutation_prob, rng);
                child = mutate_resample(std::move(child), pre.components, weights,
                                        cfg.mutation_prob, rng);
                offspring[k].prefix = std::move(child);
            }
        });
        evaluate_pool(offspring);

        if (const Chromosome* hit = find_solution(offspring))
            return {true, make_witness(*hit), gen + 1};

        // (mu + lambda) elitist truncation; stable sort keeps insertion order
        // on ties so runs are reproducible.
        population.insert(population.end(), std::make_move_iterator(offspring.begin()),
                          std::make_move_iterator(offspring.end()));
        std::stable_sort(population.begin(), population.end(),
                         [](const Chromosome& x, const Chromosome& y) { return x.cost < y.cost; });
        population.resize(cfg.pop_size);
        if (observer) observer(gen, population.front().cost);
    }
    return {false, {}, cfg.max_generations + 1};
}

}  // namespace burnsolver
