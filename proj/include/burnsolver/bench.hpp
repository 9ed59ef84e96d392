#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "burnsolver/driver.hpp"
#include "burnsolver/generators.hpp"
#include "burnsolver/graph.hpp"

namespace burnsolver {

struct BenchmarkEntry {
    std::string name;
    std::string path;      // dataset file; empty when generated
    std::string gen_spec;  // "ba,n=...,attach=..." or "er,n=...,m=..."
    std::optional<double> expected_length;
    std::optional<double> time_budget_sec;  // per-run ceiling on total wall time
    std::optional<double> slack;            // tolerance added to expected_length
    std::uint32_t repeats = 10;
};

struct BenchmarkManifest {
    std::vector<BenchmarkEntry> entries;
};

// Line-oriented manifest: "<name> key=value ...". Keys: path, gen, expected,
// budget (seconds), repeats, slack. '#' and '%' start comments.
inline BenchmarkManifest parse_manifest(std::istream& in) {
    BenchmarkManifest manifest;
    std::unordered_set<std::string> names;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#' || line[first] == '%') continue;
        std::istringstream ls(line);
        BenchmarkEntry entry;
        if (!(ls >> entry.name))
            throw ParseError("manifest line " + std::to_string(line_number) + ": missing name",
                             line_number);
        if (!names.insert(entry.name).second)
            throw ParseError("manifest line " + std::to_string(line_number) +
                                 ": duplicate entry name '" + entry.name + "'",
                             line_number);
        std::string token;
        while (ls >> token) {
            const std::size_t eq = token.find('=');
            if (eq == std::string::npos)
                throw ParseError("manifest line " + std::to_string(line_number) +
                                     ": expected key=value, got '" + token + "'",
                                 line_number);
            const std::string key = token.substr(0, eq);
            const std::string value = token.substr(eq + 1);
            try {
                if (key == "path") {
                    entry.path = value;
                } else if (key == "gen") {
                    entry.gen_spec = value;
                } else if (key == "expected") {
                    entry.expected_length = std::stod(value);
                } else if (key == "budget") {
                    entry.time_budget_sec = std::stod(value);
                } else if (key == "slack") {
                    entry.slack = std::stod(value);
                } else if (key == "repeats") {
                    const long r = std::stol(value);
                    if (r < 1) throw std::out_of_range("repeats");
                    entry.repeats = static_cast<std::uint32_t>(r);
                } else {
                    throw ParseError("manifest line " + std::to_string(line_number) +
                                         ": unknown key '" + key + "'",
                                     line_number);
                }
            } catch (const std::invalid_argument&) {
                throw ParseError("manifest line " + std::to_string(line_number) +
                                     ": bad value for '" + key + "'",
                                 line_number);
            } catch (const std::out_of_range&) {
                throw ParseError("manifest line " + std::to_string(line_number) +
                                     ": bad value for '" + key + "'",
                                 line_number);
            }
        }
        if (entry.path.empty() == entry.gen_spec.empty())
            throw ParseError("manifest line " + std::to_string(line_number) +
                                 ": need exactly one of path= or gen=",
                             line_number);
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

inline BenchmarkManifest parse_manifest(const std::string& text) {
    std::istringstream in(text);
    return parse_manifest(in);
}

inline Graph graph_from_gen_spec(const std::string& spec, std::uint64_t seed) {
    std::string model;
    std::size_t n = 0, m = 0, attach = 0;
    std::stringstream ss(spec);
    std::string part;
    bool first = true;
    while (std::getline(ss, part, ',')) {
        if (first) {
            model = part;
            first = false;
            continue;
        }
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad gen spec: " + spec);
        const std::string key = part.substr(0, eq);
        const unsigned long value = std::stoul(part.substr(eq + 1));
        if (key == "n")
            n = value;
        else if (key == "m")
            m = value;
        else if (key == "attach")
            attach = value;
        else if (key == "seed")
            seed = value;
        else
            throw std::invalid_argument("bad gen spec key: " + key);
    }
    if (model == "ba") return generate_barabasi_albert(n, attach, seed);
    if (model == "er") return generate_erdos_renyi(n, m, seed);
    throw std::invalid_argument("unknown gen model: " + model);
}

enum class BenchStatus { pass, fail, skipped };

struct BenchmarkRowResult {
    BenchmarkEntry entry;
    BenchStatus status = BenchStatus::skipped;
    std::string note;
    double mean_length = 0.0;
    double mean_total_ms = 0.0;
    double max_total_ms = 0.0;
    std::vector<std::uint32_t> lengths;
};

struct BenchReport {
    std::vector<BenchmarkRowResult> rows;

    bool all_passed_or_skipped() const {
        for (const auto& r : rows)
            if (r.status == BenchStatus::fail) return false;
        return true;
    }
};

namespace detail {

inline std::uint64_t name_salt(const std::string& name) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : name) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

template <typename Cell>
SolveReport bench_solve(const Graph& g, const SolverOptions& base, const std::string& name,
                        std::uint32_t run) {
    SolverOptions opts = base;
    opts.ga.seed = derive_seed(base.ga.seed, name_salt(name), run);
    return find_burning_length<Cell>(g, opts, name);
}

}  // namespace detail

// Runs every manifest entry `repeats` times and compares the mean burning
// length against expected + slack. Fractional expectations default to a
// +0.3 slack (different random instances than any reference numbers);
// integer expectations are compared as-is. Missing dataset files mark the
// entry SKIPPED rather than failing the whole run.
inline BenchReport run_benchmark(const BenchmarkManifest& manifest, const SolverOptions& base,
                                 std::ostream* progress = nullptr) {
    BenchReport report;
    for (const BenchmarkEntry& entry : manifest.entries) {
        BenchmarkRowResult row;
        row.entry = entry;
        Graph loaded;
        try {
            if (!entry.path.empty()) {
                std::ifstream in(entry.path);
                if (!in) {
                    row.status = BenchStatus::skipped;
                    row.note = "dataset not found: " + entry.path;
                    report.rows.push_back(std::move(row));
                    continue;
                }
                loaded = parse_edge_list(in);
            }
        } catch (const std::exception& e) {
            row.status = BenchStatus::skipped;
            row.note = e.what();
            report.rows.push_back(std::move(row));
            continue;
        }

        double length_sum = 0.0, ms_sum = 0.0;
        bool skip = false;
        for (std::uint32_t run = 0; run < entry.repeats && !skip; ++run) {
            Graph generated;
            const Graph* g = &loaded;
            if (!entry.gen_spec.empty()) {
                // Generated entries get a fresh seeded instance per run.
                try {
                    generated = graph_from_gen_spec(
                        entry.gen_spec,
                        derive_seed(base.ga.seed, detail::name_salt(entry.name), run));
                } catch (const std::exception& e) {
                    row.status = BenchStatus::skipped;
                    row.note = e.what();
                    skip = true;
                    break;
                }
                g = &generated;
            }
            SolveReport solve = fits_16bit_cells(g->vertex_count())
                                    ? detail::bench_solve<std::uint16_t>(*g, base, entry.name, run)
                                    : detail::bench_solve<std::uint32_t>(*g, base, entry.name, run);
            row.lengths.push_back(solve.best_length);
            length_sum += solve.best_length;
            ms_sum += solve.total_ms;
            row.max_total_ms = std::max(row.max_total_ms, solve.total_ms);
            if (progress)
                *progress << entry.name << " run " << (run + 1) << "/" << entry.repeats
                          << ": length " << solve.best_length << " in " << std::fixed
                          << std::setprecision(0) << solve.total_ms << " ms\n";
        }
        if (skip) {
            report.rows.push_back(std::move(row));
            continue;
        }
        row.mean_length = length_sum / entry.repeats;
        row.mean_total_ms = ms_sum / entry.repeats;

        row.status = BenchStatus::pass;
        if (entry.expected_length) {
            const double expected = *entry.expected_length;
            const bool fractional = expected != std::floor(expected);
            const double slack = entry.slack.value_or(fractional ? 0.3 : 0.0);
            if (row.mean_length > expected + slack + 1e-9) {
                row.status = BenchStatus::fail;
                row.note = "mean length over threshold";
            }
        }
        if (entry.time_budget_sec && row.max_total_ms > *entry.time_budget_sec * 1000.0) {
            row.status = BenchStatus::fail;
            row.note = row.note.empty() ? "run exceeded time budget" : row.note + "; over time budget";
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

inline std::string format_bench_table(const BenchReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(20) << "name" << std::right << std::setw(10) << "mean_len"
        << std::setw(12) << "mean_ms" << std::setw(10) << "runs" << std::setw(10) << "status"
        << "  note\n";
    for (const auto& row : report.rows) {
        out << std::left << std::setw(20) << row.entry.name << std::right;
        if (row.status == BenchStatus::skipped) {
            out << std::setw(10) << "-" << std::setw(12) << "-";
        } else {
            out << std::setw(10) << std::fixed << std::setprecision(2) << row.mean_length
                << std::setw(12) << std::setprecision(0) << row.mean_total_ms;
        }
        out << std::setw(10) << row.lengths.size() << std::setw(10)
            << (row.status == BenchStatus::pass
                    ? "PASS"
                    : row.status == BenchStatus::fail ? "FAIL" : "SKIPPED");
        if (!row.note.empty()) out << "  " << row.note;
        out << "\n";
    }
    return out.str();
}

}  // namespace burnsolver
