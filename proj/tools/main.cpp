#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "burnsolver/bench.hpp"
#include "burnsolver/cache.hpp"
#include "burnsolver/driver.hpp"
#include "burnsolver/generators.hpp"
#include "burnsolver/graph.hpp"
#include "burnsolver/report_json.hpp"

namespace {

using namespace burnsolver;

constexpr int kExitOk = 0;
constexpr int kExitNotFound = 1;
constexpr int kExitInputError = 2;

struct CommonArgs {
    std::string graph_path;
    SolverOptions opts;
    std::size_t mem_budget_mb = kDefaultMemoryBudgetBytes >> 20;
    std::string cache_dir;
    bool json = false;
    bool timing = false;
};

void add_solver_flags(CLI::App* cmd, CommonArgs& args, bool needs_graph = true) {
    if (needs_graph)
        cmd->add_option("--graph", args.graph_path, "edge-list file")->required();
    cmd->add_option("--seed", args.opts.ga.seed, "rng seed");
    cmd->add_option("--pop-size", args.opts.ga.pop_size, "population survivors per generation");
    cmd->add_option("--max-gens", args.opts.ga.max_generations, "generation cap per decision");
    cmd->add_option("--skip-number", args.opts.ga.skip_number, "unburned-count evaluation cutoff");
    cmd->add_option("--alpha", args.opts.ga.alpha, "sigmoid sampling midpoint");
    cmd->add_option("--beta", args.opts.ga.beta, "sigmoid sampling steepness");
    cmd->add_option("--mutation-prob", args.opts.ga.mutation_prob, "per-position mutation probability");
    cmd->add_option("--crossover-pop", args.opts.ga.crossover_population, "offspring per generation");
    cmd->add_option("--chr-size-offset", args.opts.chr_size_offset,
                    "chromosome stores max(1, b - offset) sources");
    cmd->add_option("--threads", args.opts.ga.threads, "worker threads");
    cmd->add_option("--bc-pivots", args.opts.precompute.pivots,
                    "betweenness pivot count for large graphs");
    cmd->add_option("--mem-budget-mb", args.mem_budget_mb, "matrix memory budget in MiB");
    cmd->add_option("--cache", args.cache_dir,
                    "precompute cache directory (default: $BURNSOLVER_CACHE)");
    cmd->add_flag("--json", args.json, "machine-readable output");
    cmd->add_flag("--timing", args.timing, "include wall times in JSON output");
}

void finalize_args(CommonArgs& args) {
    args.opts.precompute.threads = args.opts.ga.threads;
    args.opts.precompute.memory_budget_bytes = args.mem_budget_mb << 20;
    if (args.cache_dir.empty()) {
        if (const char* env = std::getenv("BURNSOLVER_CACHE")) args.cache_dir = env;
    }
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    ParseStats stats;
    Graph g = parse_edge_list(in, &stats);
    if (stats.dropped_self_loops || stats.dropped_duplicate_edges)
        std::cerr << "warning: dropped " << stats.dropped_self_loops << " self-loops and "
                  << stats.dropped_duplicate_edges << " duplicate edges\n";
    return g;
}

std::string graph_display_name(const std::string& path) {
    return std::filesystem::path(path).filename().string();
}

template <typename Cell>
Precomputed<Cell> load_or_precompute(const Graph& g, const CommonArgs& args, double* precompute_ms) {
    PrecomputeOptions popts = args.opts.precompute;
    popts.seed = derive_seed(args.opts.ga.seed, 0x70726543ull);
    const auto t0 = std::chrono::steady_clock::now();
    if (!args.cache_dir.empty()) {
        const std::uint64_t hash = graph_content_hash(g, popts);
        if (auto cached = load_precomputed<Cell>(args.cache_dir, hash, g.vertex_count())) {
            if (precompute_ms) *precompute_ms = detail::elapsed_ms(t0);
            return std::move(*cached);
        }
        Precomputed<Cell> pre = precompute_all<Cell>(g, popts);
        save_precomputed(args.cache_dir, hash, pre);
        if (precompute_ms) *precompute_ms = detail::elapsed_ms(t0);
        return pre;
    }
    Precomputed<Cell> pre = precompute_all<Cell>(g, popts);
    if (precompute_ms) *precompute_ms = detail::elapsed_ms(t0);
    return pre;
}

template <typename Cell>
int run_solve(const Graph& g, const CommonArgs& args) {
    double precompute_ms = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    Precomputed<Cell> pre = load_or_precompute<Cell>(g, args, &precompute_ms);
    SolveReport report = find_burning_length<Cell>(g, args.opts,
                                                   graph_display_name(args.graph_path), &pre);
    report.precompute_ms = precompute_ms;
    report.total_ms = detail::elapsed_ms(t0);

    if (args.json) {
        std::cout << solve_report_to_json(report, g, args.opts, args.timing).dump() << "\n";
    } else {
        std::cout << report.graph_name << ": burning length " << report.best_length << "\n";
        std::cout << "witness:";
        for (VertexId v : report.witness) std::cout << " " << g.label(v);
        std::cout << "\n";
        for (const DecisionRecord& d : report.decisions) {
            if (d.generations == 0) {
                std::cout << "  construction  b=" << d.b << " found\n";
            } else if (d.found) {
                std::cout << "  decision      b=" << d.b << " found after " << d.generations
                          << " generation(s), " << static_cast<long>(d.wall_ms) << " ms\n";
            } else {
                std::cout << "  decision      b=" << d.b << " not-found within "
                          << args.opts.ga.max_generations << " generations, "
                          << static_cast<long>(d.wall_ms) << " ms\n";
            }
        }
        std::cout << "precompute " << static_cast<long>(report.precompute_ms) << " ms, total "
                  << static_cast<long>(report.total_ms) << " ms\n";
    }
    return kExitOk;
}

template <typename Cell>
int run_decide(const Graph& g, const CommonArgs& args, std::uint32_t b) {
    double precompute_ms = 0.0;
    Precomputed<Cell> pre = load_or_precompute<Cell>(g, args, &precompute_ms);
    const auto t0 = std::chrono::steady_clock::now();
    const GaOutcome outcome = decide_burnable(g, pre, b, args.opts);
    const double wall = detail::elapsed_ms(t0);

    if (args.json) {
        std::cout << decide_report_to_json(g, graph_display_name(args.graph_path), b, outcome,
                                           args.opts, args.opts.ga.seed,
                                           args.timing ? std::optional<double>(wall) : std::nullopt)
                         .dump()
                  << "\n";
    } else if (outcome.found) {
        std::cout << "b=" << b << ": found witness of length " << outcome.witness.size() << ":";
        for (VertexId v : outcome.witness) std::cout << " " << g.label(v);
        std::cout << "\n";
    } else {
        std::cout << "b=" << b << ": NOT_FOUND within " << args.opts.ga.max_generations
                  << " generations (not a proof of nonexistence)\n";
    }
    return outcome.found ? kExitOk : kExitNotFound;
}

int dispatch_solve(const CommonArgs& args) {
    const Graph g = load_graph(args.graph_path);
    return fits_16bit_cells(g.vertex_count()) ? run_solve<std::uint16_t>(g, args)
                                              : run_solve<std::uint32_t>(g, args);
}

int dispatch_decide(const CommonArgs& args, std::uint32_t b) {
    const Graph g = load_graph(args.graph_path);
    return fits_16bit_cells(g.vertex_count()) ? run_decide<std::uint16_t>(g, args, b)
                                              : run_decide<std::uint32_t>(g, args, b);
}

int run_bench(const CommonArgs& args, const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot open manifest: " + manifest_path);
    const BenchmarkManifest manifest = parse_manifest(in);
    const BenchReport report = run_benchmark(manifest, args.opts, &std::cerr);
    if (args.json) {
        std::cout << bench_report_to_json(report).dump() << "\n";
    } else {
        std::cout << format_bench_table(report);
    }
    return report.all_passed_or_skipped() ? kExitOk : kExitNotFound;
}

int run_gen(const std::string& model, std::size_t n, std::size_t edges, std::size_t attach,
            std::uint64_t seed, const std::string& out_path) {
    Graph g;
    if (model == "er") {
        g = generate_erdos_renyi(n, edges, seed);
    } else if (model == "ba") {
        g = generate_barabasi_albert(n, attach, seed);
    } else {
        throw std::runtime_error("unknown model: " + model + " (expected er or ba)");
    }
    const std::string text = serialize_edge_list(g);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write: " + out_path);
        out << text;
    }
    return kExitOk;
}

template <typename Cell>
int run_precompute(const Graph& g, const CommonArgs& args) {
    if (args.cache_dir.empty())
        throw std::runtime_error("precompute needs --cache or $BURNSOLVER_CACHE");
    PrecomputeOptions popts = args.opts.precompute;
    popts.seed = derive_seed(args.opts.ga.seed, 0x70726543ull);
    const auto t0 = std::chrono::steady_clock::now();
    const Precomputed<Cell> pre = precompute_all<Cell>(g, popts);
    const double ms = detail::elapsed_ms(t0);
    const std::uint64_t hash = graph_content_hash(g, popts);
    if (!save_precomputed(args.cache_dir, hash, pre))
        throw std::runtime_error("failed to write cache under " + args.cache_dir);
    std::cout << "cached " << cache_file_path(args.cache_dir, hash).string() << " (n="
              << g.vertex_count() << ", m=" << g.edge_count() << ", "
              << (pre.centrality.mode == BetweennessMode::exact ? "exact" : "sampled")
              << " betweenness) in " << static_cast<long>(ms) << " ms\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph burning solver"};
    app.require_subcommand(1);

    CommonArgs solve_args, decide_args, bench_args, pre_args;
    std::uint32_t decide_b = 0;
    std::string manifest_path;
    std::string gen_model;
    std::size_t gen_n = 0, gen_edges = 0, gen_attach = 1;
    std::uint64_t gen_seed = 0;
    std::string gen_out;

    CLI::App* solve = app.add_subcommand("solve", "find the burning length of one graph");
    add_solver_flags(solve, solve_args);

    CLI::App* decide = app.add_subcommand("decide", "test one burning length");
    add_solver_flags(decide, decide_args);
    decide->add_option("--b", decide_b, "burning length to test")->required();

    CLI::App* bench = app.add_subcommand("bench", "run a benchmark manifest");
    add_solver_flags(bench, bench_args, /*needs_graph=*/false);
    bench->add_option("--manifest", manifest_path, "manifest file")->required();

    CLI::App* gen = app.add_subcommand("gen", "emit a random graph as an edge list");
    gen->add_option("--model", gen_model, "er or ba")->required();
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--edges", gen_edges, "edge count (er)");
    gen->add_option("--attach", gen_attach, "attachments per vertex (ba)");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    CLI::App* precompute = app.add_subcommand("precompute", "warm the precompute cache");
    add_solver_flags(precompute, pre_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (solve->parsed()) {
            finalize_args(solve_args);
            return dispatch_solve(solve_args);
        }
        if (decide->parsed()) {
            finalize_args(decide_args);
            if (decide_b == 0) throw std::runtime_error("--b must be >= 1");
            return dispatch_decide(decide_args, decide_b);
        }
        if (bench->parsed()) {
            finalize_args(bench_args);
            return run_bench(bench_args, manifest_path);
        }
        if (gen->parsed()) {
            return run_gen(gen_model, gen_n, gen_edges, gen_attach, gen_seed, gen_out);
        }
        if (precompute->parsed()) {
            finalize_args(pre_args);
            const Graph g = load_graph(pre_args.graph_path);
            return fits_16bit_cells(g.vertex_count()) ? run_precompute<std::uint16_t>(g, pre_args)
                                                      : run_precompute<std::uint32_t>(g, pre_args);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
