#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "burnsolver/burning.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace burnsolver;
using namespace burnsolver::testing;

namespace {

struct Fig1 {
    Graph g = fig1_graph();
    SquareMatrix<std::uint16_t> dist = compute_apsp<std::uint16_t>(g);
};

}  // namespace

TEST_CASE("burning distance on the fixture") {
    Fig1 f;
    SUBCASE("valid sequence burns everything") {
        const BurningSequence seq = seq_of(f.g, {"4", "10", "7"});
        for (std::size_t i = 0; i < f.g.vertex_count(); ++i)
            CHECK(burning_distance(f.dist, seq, static_cast<VertexId>(i)) == 0);
    }
    SUBCASE("invalid sequence leaves vertex 7 at distance one") {
        const BurningSequence seq = seq_of(f.g, {"3", "8", "12"});
        CHECK(burning_distance(f.dist, seq, f.g.id_of("7")) == 1);
    }
    SUBCASE("sources are at distance zero") {
        const BurningSequence seq = seq_of(f.g, {"3", "8", "12"});
        for (VertexId v : seq) CHECK(burning_distance(f.dist, seq, v) == 0);
    }
}

TEST_CASE("sequence cost") {
    Fig1 f;
    CHECK(sequence_cost(f.dist, seq_of(f.g, {"4", "10", "7"})) == 0);
    CHECK(sequence_cost(f.dist, seq_of(f.g, {"3", "8", "12"})) == 3);

    const Graph single = Graph::from_edges(1, {});
    const auto dist1 = compute_apsp<std::uint16_t>(single);
    CHECK(sequence_cost(dist1, {0}) == 0);
}

TEST_CASE("sequence cost equals the definitional formula on random triples") {
    Rng rng = make_rng(101);
    for (int trial = 0; trial < 300; ++trial) {
        const Graph g = random_graph(3 + draw_below(rng, 12), 0.25, rng);
        const auto dist = compute_apsp<std::uint16_t>(g);
        const std::size_t b = 1 + draw_below(rng, 5);
        BurningSequence seq;
        for (std::size_t j = 0; j < b; ++j)
            seq.push_back(static_cast<VertexId>(draw_below(rng, g.vertex_count())));
        CHECK(sequence_cost(dist, seq) == definitional_sequence_cost(dist, seq));
        const auto probe = static_cast<VertexId>(draw_below(rng, g.vertex_count()));
        CHECK(burning_distance(dist, seq, probe) ==
              definitional_burning_distance(dist, seq, probe));
    }
}

TEST_CASE("validity checker agrees with the fixture caption") {
    Fig1 f;
    CHECK(is_valid_burning_sequence(f.dist, seq_of(f.g, {"4", "10", "7"})));
    CHECK(is_valid_burning_sequence(f.dist, seq_of(f.g, {"5", "10", "2"})));
    CHECK(is_valid_burning_sequence(f.dist, seq_of(f.g, {"2", "10", "1", "7"})));
    CHECK_FALSE(is_valid_burning_sequence(f.dist, seq_of(f.g, {"3", "8", "12"})));
    CHECK_FALSE(is_valid_burning_sequence(f.dist, seq_of(f.g, {"4", "4", "7"})));
    CHECK_FALSE(is_valid_burning_sequence(f.dist, {}));
}

TEST_CASE("zero cost plus the pairwise condition is exactly validity") {
    Rng rng = make_rng(103);
    for (int trial = 0; trial < 200; ++trial) {
        const Graph g = random_graph(3 + draw_below(rng, 10), 0.3, rng);
        const auto dist = compute_apsp<std::uint16_t>(g);
        BurningSequence seq;
        const std::size_t b = 1 + draw_below(rng, 4);
        for (std::size_t j = 0; j < b; ++j)
            seq.push_back(static_cast<VertexId>(draw_below(rng, g.vertex_count())));
        bool pairwise = true;
        for (std::size_t i = 0; i < seq.size(); ++i)
            for (std::size_t j = i + 1; j < seq.size(); ++j)
                if (dist.at(seq[i], seq[j]) == kUnreachableCell<std::uint16_t>
                        ? false
                        : dist.at(seq[i], seq[j]) < j - i)
                    pairwise = false;
        CHECK(is_valid_burning_sequence(dist, seq) ==
              (sequence_cost(dist, seq) == 0 && pairwise));
    }
}

TEST_CASE("simulation marks exactly the vertices with zero burning distance") {
    Rng rng = make_rng(105);
    for (int trial = 0; trial < 120; ++trial) {
        const Graph g = random_graph(4 + draw_below(rng, 26), 0.15, rng);
        const auto dist = compute_apsp<std::uint16_t>(g);
        BurningSequence seq;
        const std::size_t b = 1 + draw_below(rng, 5);
        for (std::size_t j = 0; j < b; ++j)
            seq.push_back(static_cast<VertexId>(draw_below(rng, g.vertex_count())));
        const BurnState state = simulate_burning(g, seq);
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            const bool burned = state.burned_at[v] != kUnburned;
            CHECK(burned == (burning_distance(dist, seq, static_cast<VertexId>(v)) == 0));
            if (burned) CHECK(state.burned_at[v] < static_cast<std::int32_t>(seq.size()));
        }
    }
}

TEST_CASE("appending a source never increases any burning distance") {
    Rng rng = make_rng(107);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph g = random_graph(4 + draw_below(rng, 10), 0.3, rng);
        const auto dist = compute_apsp<std::uint16_t>(g);
        BurningSequence seq{static_cast<VertexId>(draw_below(rng, g.vertex_count()))};
        for (int grow = 0; grow < 3; ++grow) {
            BurningSequence extended = seq;
            extended.push_back(static_cast<VertexId>(draw_below(rng, g.vertex_count())));
            for (std::size_t v = 0; v < g.vertex_count(); ++v)
                CHECK(burning_distance(dist, extended, static_cast<VertexId>(v)) <=
                      burning_distance(dist, seq, static_cast<VertexId>(v)));
            seq = std::move(extended);
        }
    }
}

TEST_CASE("exact oracle on the fixture") {
    Fig1 f;
    const ExactBurningResult r = exact_burning_number(f.g, f.dist, 5);
    REQUIRE(r.found);
    CHECK(r.length == 3);
    CHECK(is_valid_burning_sequence(f.dist, r.witness));
    CHECK(r.witness.size() == 3);
}

TEST_CASE("exact oracle small cases") {
    SUBCASE("single vertex") {
        const Graph g = Graph::from_edges(1, {});
        const auto dist = compute_apsp<std::uint16_t>(g);
        const ExactBurningResult r = exact_burning_number(g, dist, 3);
        REQUIRE(r.found);
        CHECK(r.length == 1);
    }
    SUBCASE("path of nine") {
        const Graph g = make_path(9);
        const auto dist = compute_apsp<std::uint16_t>(g);
        const ExactBurningResult r = exact_burning_number(g, dist, 6);
        REQUIRE(r.found);
        CHECK(r.length == 3);
    }
    SUBCASE("complete graphs burn in two") {
        for (std::size_t n = 2; n <= 8; ++n) {
            const Graph g = make_complete(n);
            const auto dist = compute_apsp<std::uint16_t>(g);
            const ExactBurningResult r = exact_burning_number(g, dist, 4);
            REQUIRE(r.found);
            CHECK(r.length == 2);
        }
        const Graph k1 = Graph::from_edges(1, {});
        CHECK(exact_burning_number(k1, compute_apsp<std::uint16_t>(k1), 4).length == 1);
    }
    SUBCASE("not found within the cap") {
        const Graph g = make_path(9);
        const auto dist = compute_apsp<std::uint16_t>(g);
        CHECK_FALSE(exact_burning_number(g, dist, 2).found);
    }
    SUBCASE("vertex guard") {
        const Graph g = make_path(20);
        const auto dist = compute_apsp<std::uint16_t>(g);
        CHECK_THROWS_AS(exact_burning_number(g, dist, 4), std::invalid_argument);
        CHECK(exact_burning_number(g, dist, 6, /*force=*/true).length == 5);
    }
}

TEST_CASE("exact oracle agrees with plain enumeration on random graphs") {
    Rng rng = make_rng(109);
    for (int trial = 0; trial < 15; ++trial) {
        const Graph g = random_graph(4 + draw_below(rng, 5), 0.3, rng);
        const auto dist = compute_apsp<std::uint16_t>(g);
        const ExactBurningResult fast = exact_burning_number(g, dist, g.vertex_count());
        std::size_t naive = 0;
        for (std::size_t k = 1; k <= g.vertex_count(); ++k) {
            if (exists_valid_sequence_of_length(g, dist, k)) {
                naive = k;
                break;
            }
        }
        REQUIRE(fast.found);
        CHECK(fast.length == naive);
        CHECK(is_valid_burning_sequence(dist, fast.witness));
    }
}
