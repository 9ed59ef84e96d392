#pragma once

#include <optional>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "burnsolver/bench.hpp"
#include "burnsolver/driver.hpp"
#include "burnsolver/graph.hpp"

namespace burnsolver {

inline nlohmann::json config_to_json(const SolverOptions& opts) {
    return nlohmann::json{
        {"popSize", opts.ga.pop_size},
        {"maxGenerations", opts.ga.max_generations},
        {"crossoverPopulation", opts.ga.crossover_population},
        {"mutationProb", opts.ga.mutation_prob},
        {"alpha", opts.ga.alpha},
        {"beta", opts.ga.beta},
        {"skipNumber", opts.ga.skip_number},
        {"chrSizeOffset", opts.chr_size_offset},
        {"threads", opts.ga.threads},
    };
}

inline nlohmann::json witness_to_json(const Graph& g, const BurningSequence& seq) {
    nlohmann::json arr = nlohmann::json::array();
    for (VertexId v : seq) arr.push_back(g.label(v));
    return arr;
}

// Timing fields are emitted as null unless requested: solve output must be
// byte-identical across runs with the same seed, and wall times are not.
inline nlohmann::json solve_report_to_json(const SolveReport& report, const Graph& g,
                                           const SolverOptions& opts, bool include_timing) {
    std::uint32_t generations = 0;
    for (const DecisionRecord& d : report.decisions)
        if (d.found && d.b >= report.best_length) generations = d.generations;
    nlohmann::json j{
        {"graph", report.graph_name},
        {"n", g.vertex_count()},
        {"m", g.edge_count()},
        {"bestLength", report.best_length},
        {"witness", witness_to_json(g, report.witness)},
        {"generations", generations},
        {"precomputeMs", nullptr},
        {"solveMs", nullptr},
        {"seed", report.seed},
        {"config", config_to_json(opts)},
    };
    if (include_timing) {
        j["precomputeMs"] = report.precompute_ms;
        j["solveMs"] = report.total_ms - report.precompute_ms;
    }
    return j;
}

inline nlohmann::json decide_report_to_json(const Graph& g, const std::string& name,
                                            std::uint32_t b, const GaOutcome& outcome,
                                            const SolverOptions& opts, std::uint64_t seed,
                                            std::optional<double> wall_ms) {
    nlohmann::json j{
        {"graph", name},
        {"n", g.vertex_count()},
        {"m", g.edge_count()},
        {"b", b},
        {"found", outcome.found},
        {"witness", witness_to_json(g, outcome.witness)},
        {"generations", outcome.generations},
        {"solveMs", nullptr},
        {"seed", seed},
        {"config", config_to_json(opts)},
    };
    if (wall_ms) j["solveMs"] = *wall_ms;
    return j;
}

inline nlohmann::json bench_report_to_json(const BenchReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        rows.push_back(nlohmann::json{
            {"name", row.entry.name},
            {"status", row.status == BenchStatus::pass
                           ? "PASS"
                           : row.status == BenchStatus::fail ? "FAIL" : "SKIPPED"},
            {"meanLength", row.mean_length},
            {"meanTotalMs", row.mean_total_ms},
            {"repeats", row.lengths.size()},
            {"lengths", row.lengths},
            {"note", row.note},
        });
    }
    return nlohmann::json{{"entries", rows}};
}

// Re-validates the witness of a solve JSON against the graph it came from.
template <typename Cell>
bool validate_solve_json(const nlohmann::json& j, const Graph& g, const SquareMatrix<Cell>& dist) {
    std::unordered_map<std::string, VertexId> by_label;
    for (VertexId v = 0; v < g.vertex_count(); ++v) by_label.emplace(g.label(v), v);
    BurningSequence seq;
    for (const auto& item : j.at("witness")) {
        const auto it = by_label.find(item.get<std::string>());
        if (it == by_label.end()) return false;
        seq.push_back(it->second);
    }
    return seq.size() == j.at("bestLength").get<std::size_t>() &&
           is_valid_burning_sequence(dist, seq);
}

}  // namespace burnsolver
