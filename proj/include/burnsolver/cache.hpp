#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "burnsolver/graph.hpp"
#include "burnsolver/precompute.hpp"

namespace burnsolver {

// On-disk cache for the precomputed matrices and centrality of one graph,
// keyed by a content hash of the adjacency plus the betweenness parameters.
// Layout: header (magic, version, n, cell width, mode, pivots, payload
// checksum) followed by the raw payload. Anything that fails validation is
// treated as a miss.

inline constexpr std::uint32_t kCacheMagic = 0x43'4e'52'42u;  // "BRNC"
inline constexpr std::uint32_t kCacheVersion = 1;

namespace detail {

inline std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

template <typename T>
void write_pod(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
bool read_pod(std::istream& in, T& value) {
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    return static_cast<bool>(in);
}

template <typename T>
void write_vec(std::ostream& out, const std::vector<T>& v, std::uint64_t& checksum) {
    write_pod(out, static_cast<std::uint64_t>(v.size()));
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(T)));
    checksum = fnv1a(v.data(), v.size() * sizeof(T), checksum);
}

template <typename T>
bool read_vec(std::istream& in, std::vector<T>& v, std::uint64_t& checksum, std::uint64_t limit) {
    std::uint64_t count = 0;
    if (!read_pod(in, count) || count > limit) return false;
    v.resize(count);
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(count * sizeof(T)));
    if (!in) return false;
    checksum = fnv1a(v.data(), v.size() * sizeof(T), checksum);
    return true;
}

}  // namespace detail

// Content hash over the full adjacency structure and the parameters that
// influence the precomputed payload.
inline std::uint64_t graph_content_hash(const Graph& g, const PrecomputeOptions& opts) {
    std::uint64_t h = detail::fnv1a(nullptr, 0);
    const std::uint64_t n = g.vertex_count();
    const std::uint64_t m = g.edge_count();
    h = detail::fnv1a(&n, sizeof(n), h);
    h = detail::fnv1a(&m, sizeof(m), h);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto nbrs = g.neighbors(v);
        h = detail::fnv1a(nbrs.data(), nbrs.size_bytes(), h);
    }
    const bool exact = opts.force_exact || g.vertex_count() <= kExactBetweennessLimit;
    const std::uint64_t bc[3] = {exact ? 0ull : 1ull, exact ? 0ull : opts.pivots,
                                 exact ? 0ull : opts.seed};
    return detail::fnv1a(bc, sizeof(bc), h);
}

inline std::filesystem::path cache_file_path(const std::filesystem::path& dir, std::uint64_t hash) {
    char name[32];
    std::snprintf(name, sizeof(name), "%016llx.burncache",
                  static_cast<unsigned long long>(hash));
    return dir / name;
}

template <typename Cell>
bool save_precomputed(const std::filesystem::path& dir, std::uint64_t hash,
                      const Precomputed<Cell>& pre) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return false;

    // Payload serialized twice-over a stringstream would double memory for
    // big matrices; write to the file and patch the checksum last.
    std::ofstream out(cache_file_path(dir, hash), std::ios::binary | std::ios::trunc);
    if (!out) return false;

    detail::write_pod(out, kCacheMagic);
    detail::write_pod(out, kCacheVersion);
    detail::write_pod(out, static_cast<std::uint64_t>(pre.dist.size()));
    detail::write_pod(out, static_cast<std::uint8_t>(sizeof(Cell)));
    detail::write_pod(out, static_cast<std::uint8_t>(pre.centrality.mode));
    detail::write_pod(out, pre.centrality.sample_count);
    const auto checksum_pos = out.tellp();
    std::uint64_t checksum = detail::fnv1a(nullptr, 0);
    detail::write_pod(out, checksum);  // placeholder

    std::vector<Cell> cells(pre.dist.cells().begin(), pre.dist.cells().end());
    detail::write_vec(out, cells, checksum);
    cells.assign(pre.middle.cells().begin(), pre.middle.cells().end());
    detail::write_vec(out, cells, checksum);
    detail::write_vec(out, pre.components.component_of, checksum);
    detail::write_vec(out, pre.components.sizes, checksum);
    detail::write_vec(out, pre.centrality.values, checksum);

    out.seekp(checksum_pos);
    detail::write_pod(out, checksum);
    return static_cast<bool>(out);
}

template <typename Cell>
std::optional<Precomputed<Cell>> load_precomputed(const std::filesystem::path& dir,
                                                  std::uint64_t hash, std::size_t expected_n) {
    std::ifstream in(cache_file_path(dir, hash), std::ios::binary);
    if (!in) return std::nullopt;

    std::uint32_t magic = 0, version = 0;
    std::uint64_t n = 0;
    std::uint8_t cell_width = 0, mode = 0;
    std::uint32_t sample_count = 0;
    std::uint64_t stored_checksum = 0;
    if (!detail::read_pod(in, magic) || magic != kCacheMagic) return std::nullopt;
    if (!detail::read_pod(in, version) || version != kCacheVersion) return std::nullopt;
    if (!detail::read_pod(in, n) || n != expected_n) return std::nullopt;
    if (!detail::read_pod(in, cell_width) || cell_width != sizeof(Cell)) return std::nullopt;
    if (!detail::read_pod(in, mode)) return std::nullopt;
    if (!detail::read_pod(in, sample_count)) return std::nullopt;
    if (!detail::read_pod(in, stored_checksum)) return std::nullopt;

    const std::uint64_t cell_limit = n * n;
    std::uint64_t checksum = detail::fnv1a(nullptr, 0);
    std::vector<Cell> dist_cells, middle_cells;
    Precomputed<Cell> pre;
    if (!detail::read_vec(in, dist_cells, checksum, cell_limit)) return std::nullopt;
    if (!detail::read_vec(in, middle_cells, checksum, cell_limit)) return std::nullopt;
    if (!detail::read_vec(in, pre.components.component_of, checksum, n)) return std::nullopt;
    if (!detail::read_vec(in, pre.components.sizes, checksum, n)) return std::nullopt;
    if (!detail::read_vec(in, pre.centrality.values, checksum, n)) return std::nullopt;
    if (checksum != stored_checksum) return std::nullopt;
    if (dist_cells.size() != cell_limit || middle_cells.size() != cell_limit) return std::nullopt;
    if (pre.components.component_of.size() != n || pre.centrality.values.size() != n)
        return std::nullopt;

    pre.dist = SquareMatrix<Cell>(n);
    std::copy(dist_cells.begin(), dist_cells.end(), pre.dist.cells().begin());
    pre.middle = SquareMatrix<Cell>(n);
    std::copy(middle_cells.begin(), middle_cells.end(), pre.middle.cells().begin());
    pre.components.count = pre.components.sizes.size();
    pre.centrality.mode = static_cast<BetweennessMode>(mode);
    pre.centrality.sample_count = sample_count;
    return pre;
}

}  // namespace burnsolver
