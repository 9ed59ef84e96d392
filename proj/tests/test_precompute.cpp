#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "burnsolver/precompute.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace burnsolver;
using namespace burnsolver::testing;

namespace {

std::vector<std::size_t> argsort_with_id_ties(const std::vector<double>& values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return values[a] != values[b] ? values[a] > values[b] : a < b;
    });
    return idx;
}

}  // namespace

TEST_CASE("apsp basics") {
    SUBCASE("path distances are symmetric") {
        const auto dist = compute_apsp<std::uint16_t>(make_path(5));
        CHECK(dist.at(0, 4) == 4);
        CHECK(dist.at(4, 0) == 4);
        CHECK(dist.at(2, 2) == 0);
    }
    SUBCASE("fixture hand-traced distance") {
        const Graph g = fig1_graph();
        const auto dist = compute_apsp<std::uint16_t>(g);
        CHECK(dist.at(g.id_of("7"), g.id_of("9")) == 4);
        CHECK(dist.at(g.id_of("2"), g.id_of("7")) == 5);
    }
    SUBCASE("cross-component pairs are unreachable") {
        const Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
        const auto dist = compute_apsp<std::uint16_t>(g);
        CHECK(dist.at(0, 2) == kUnreachableCell<std::uint16_t>);
        CHECK(dist.at(1, 3) == kUnreachableCell<std::uint16_t>);
    }
}

TEST_CASE("apsp rows equal bfs rows and satisfy the triangle inequality") {
    Rng rng = make_rng(21);
    for (int trial = 0; trial < 8; ++trial) {
        const Graph g = random_graph(25, 0.15, rng);
        const auto dist = compute_apsp<std::uint16_t>(g);
        for (int probe = 0; probe < 10; ++probe) {
            const auto v = static_cast<VertexId>(draw_below(rng, g.vertex_count()));
            const BfsResult r = bfs(g, v);
            for (std::size_t u = 0; u < g.vertex_count(); ++u) {
                const std::uint32_t expected =
                    r.dist[u] == kUnreachableDist ? kUnreachableCell<std::uint16_t> : r.dist[u];
                CHECK(dist.at(v, u) == expected);
            }
        }
        for (std::size_t i = 0; i < g.vertex_count(); ++i) {
            CHECK(dist.at(i, i) == 0);
            for (std::size_t j = 0; j < g.vertex_count(); ++j) {
                CHECK(dist.at(i, j) == dist.at(j, i));
                if (dist.at(i, j) == kUnreachableCell<std::uint16_t>) continue;
                for (std::size_t k = 0; k < g.vertex_count(); ++k) {
                    if (dist.at(i, k) == kUnreachableCell<std::uint16_t>) continue;
                    CHECK(dist.at(k, j) <= dist.at(k, i) + dist.at(i, j));
                }
            }
        }
    }
}

TEST_CASE("apsp memory budget guard") {
    CHECK_THROWS_AS(compute_apsp<std::uint16_t>(make_path(100), 1, /*budget=*/1024), SizingError);
}

TEST_CASE("middle row follows the two-pointer rules") {
    SUBCASE("even distance takes the halfway vertex") {
        const Graph g = make_path(5);
        const auto dist = compute_apsp<std::uint16_t>(g);
        const auto middle = compute_middle_matrix(g, dist);
        CHECK(middle.at(0, 4) == 2);
        CHECK(middle.at(0, 0) == 0);
    }
    SUBCASE("odd distance inherits the parent middle") {
        const Graph g = make_path(4);
        const auto dist = compute_apsp<std::uint16_t>(g);
        const auto middle = compute_middle_matrix(g, dist);
        CHECK(middle.at(0, 3) == middle.at(0, 2));
        CHECK(middle.at(0, 3) == 1);
    }
    SUBCASE("cycle antipode resolves to the first midpoint in bfs order") {
        const Graph g = make_cycle(6);
        const auto dist = compute_apsp<std::uint16_t>(g);
        const auto middle = compute_middle_matrix(g, dist);
        CHECK(middle.at(0, 3) == 1);
    }
    SUBCASE("disconnected pairs get the sentinel") {
        const Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
        const auto dist = compute_apsp<std::uint16_t>(g);
        const auto middle = compute_middle_matrix(g, dist);
        CHECK(middle.at(0, 2) == kUnreachableCell<std::uint16_t>);
    }
}

TEST_CASE("compute_middle_row writes one row from a bfs traversal") {
    const Graph g = make_cycle(6);
    const auto dist = compute_apsp<std::uint16_t>(g);
    const BfsResult traversal = bfs(g, 2);
    std::vector<std::uint16_t> row(g.vertex_count(), kUnreachableCell<std::uint16_t>);
    compute_middle_row<std::uint16_t>(2, dist, traversal, row);
    const auto full = compute_middle_matrix(g, dist);
    for (std::size_t u = 0; u < g.vertex_count(); ++u) CHECK(row[u] == full.at(2, u));
    CHECK(row[2] == 2);
}

TEST_CASE("middle matrix property on random graphs") {
    Rng rng = make_rng(33);
    for (int trial = 0; trial < 25; ++trial) {
        const Graph g = random_graph(40, 0.1, rng);
        const auto dist = compute_apsp<std::uint16_t>(g);
        const auto middle = compute_middle_matrix(g, dist);
        for (std::size_t i = 0; i < g.vertex_count(); ++i) {
            CHECK(middle.at(i, i) == i);
            for (std::size_t j = 0; j < g.vertex_count(); ++j) {
                if (dist.at(i, j) == kUnreachableCell<std::uint16_t>) {
                    CHECK(middle.at(i, j) == kUnreachableCell<std::uint16_t>);
                    continue;
                }
                const auto m = middle.at(i, j);
                REQUIRE(m != kUnreachableCell<std::uint16_t>);
                const int dim = dist.at(i, m);
                const int dmj = dist.at(m, j);
                CHECK(dim + dmj == dist.at(i, j));
                CHECK(std::abs(dim - dmj) <= 1);
            }
        }
    }
}

TEST_CASE("fixture middle vertex satisfies both middle conditions") {
    const Graph g = fig1_graph();
    const auto dist = compute_apsp<std::uint16_t>(g);
    const auto middle = compute_middle_matrix(g, dist);
    const VertexId a = g.id_of("2"), b = g.id_of("7");
    REQUIRE(dist.at(a, b) == 5);
    const auto m = middle.at(a, b);
    CHECK(dist.at(a, m) + dist.at(m, b) == 5);
    CHECK(std::abs(int(dist.at(a, m)) - int(dist.at(m, b))) <= 1);
}

TEST_CASE("exact betweenness matches the counting oracle") {
    Rng rng = make_rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = random_graph(5 + trial * 2, 0.25, rng);
        const std::vector<double> fast = compute_betweenness_raw(g, BetweennessMode::exact);
        const std::vector<double> naive = naive_betweenness(g);
        REQUIRE(fast.size() == naive.size());
        for (std::size_t v = 0; v < fast.size(); ++v) {
            const double scale = std::max(1.0, std::abs(naive[v]));
            CHECK(std::abs(fast[v] - naive[v]) / scale < 1e-9);
        }
    }
}

TEST_CASE("betweenness normalization per component") {
    SUBCASE("path of three: center 1, endpoints 0") {
        const auto c = compute_betweenness(make_path(3), connected_components(make_path(3)),
                                           BetweennessMode::exact);
        CHECK(c.values == std::vector<double>{0.0, 1.0, 0.0});
    }
    SUBCASE("star center 1, leaves 0") {
        const Graph g = make_star(4);
        const auto c = compute_betweenness(g, connected_components(g), BetweennessMode::exact);
        CHECK(c.values[0] == 1.0);
        for (std::size_t v = 1; v < g.vertex_count(); ++v) CHECK(c.values[v] == 0.0);
    }
    SUBCASE("two-vertex component gets ones") {
        const Graph g = Graph::from_edges(5, {{0, 1}, {2, 3}, {3, 4}});
        const auto c = compute_betweenness(g, connected_components(g), BetweennessMode::exact);
        CHECK(c.values[0] == 1.0);
        CHECK(c.values[1] == 1.0);
        CHECK(c.values[3] == 1.0);  // P3 component center
    }
    SUBCASE("all-zero component (triangle) gets ones") {
        const Graph g = make_complete(3);
        const auto c = compute_betweenness(g, connected_components(g), BetweennessMode::exact);
        CHECK(c.values == std::vector<double>{1.0, 1.0, 1.0});
    }
    SUBCASE("every large component peaks at exactly one") {
        Rng rng = make_rng(55);
        for (int trial = 0; trial < 10; ++trial) {
            const Graph g = random_graph(30, 0.08, rng);
            const ComponentLabeling comps = connected_components(g);
            const auto c = compute_betweenness(g, comps, BetweennessMode::exact);
            std::vector<double> peak(comps.count, 0.0);
            for (std::size_t v = 0; v < g.vertex_count(); ++v) {
                CHECK(c.values[v] >= 0.0);
                CHECK(c.values[v] <= 1.0);
                peak[comps.component_of[v]] = std::max(peak[comps.component_of[v]], c.values[v]);
            }
            for (double p : peak) CHECK(p == 1.0);
        }
    }
}

TEST_CASE("sampled betweenness with pivots = n matches exact argsort") {
    Rng rng = make_rng(66);
    const Graph g = random_connected_graph(24, 0.15, rng);
    const auto exact = compute_betweenness_raw(g, BetweennessMode::exact);
    const auto sampled = compute_betweenness_raw(g, BetweennessMode::sampled,
                                                 static_cast<std::uint32_t>(g.vertex_count()), 123);
    CHECK(argsort_with_id_ties(exact) == argsort_with_id_ties(sampled));
}

TEST_CASE("sampled betweenness is deterministic per seed and rescaled") {
    Rng rng = make_rng(77);
    const Graph g = random_connected_graph(30, 0.12, rng);
    const auto a = compute_betweenness_raw(g, BetweennessMode::sampled, 8, 42);
    const auto b = compute_betweenness_raw(g, BetweennessMode::sampled, 8, 42);
    CHECK(a == b);
    CHECK_THROWS_AS(compute_betweenness_raw(g, BetweennessMode::sampled, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("parallel precompute is bit-identical to single-worker") {
    Rng rng = make_rng(88);
    const Graph g = random_graph(40, 0.1, rng);
    PrecomputeOptions one, four;
    one.threads = 1;
    four.threads = 4;
    const auto a = precompute_all<std::uint16_t>(g, one);
    const auto b = precompute_all<std::uint16_t>(g, four);
    CHECK(a.dist == b.dist);
    CHECK(a.middle == b.middle);
    CHECK(a.centrality.values == b.centrality.values);
}

TEST_CASE("32-bit cells behave identically to 16-bit cells") {
    Rng rng = make_rng(99);
    const Graph g = random_graph(30, 0.12, rng);
    const auto narrow = precompute_all<std::uint16_t>(g);
    const auto wide = precompute_all<std::uint32_t>(g);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        for (std::size_t j = 0; j < g.vertex_count(); ++j) {
            const bool nu = narrow.dist.at(i, j) == kUnreachableCell<std::uint16_t>;
            const bool wu = wide.dist.at(i, j) == kUnreachableCell<std::uint32_t>;
            CHECK(nu == wu);
            if (!nu) {
                CHECK(narrow.dist.at(i, j) == wide.dist.at(i, j));
                CHECK(narrow.middle.at(i, j) == wide.middle.at(i, j));
            }
        }
    }
    CHECK(narrow.centrality.values == wide.centrality.values);
    CHECK(fits_16bit_cells(65534));
    CHECK_FALSE(fits_16bit_cells(65535));
}

TEST_CASE("eccentricities within components") {
    const Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {3, 4}});
    const auto dist = compute_apsp<std::uint16_t>(g);
    const auto ecc = component_eccentricities(dist);
    CHECK(ecc == std::vector<std::uint32_t>{2, 1, 2, 1, 1});
}
