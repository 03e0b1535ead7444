#include <stepup/constructions.hpp>
#include <stepup/embedding.hpp>
#include <stepup/independence.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace stepup;

TEST(Expansion, SingleEdge) {
    const auto ex = expansion(Hypergraph(3, 3, {{0, 1, 2}}));
    EXPECT_EQ(ex.hypergraph.uniformity(), 4u);
    EXPECT_EQ(ex.hypergraph.vertex_count(), 4u);
    EXPECT_EQ(ex.hypergraph.edges(), (std::vector<Edge>{{0, 1, 2, 3}}));
    const auto oe = ordered_expansion(Hypergraph(3, 3, {{0, 1, 2}}));
    EXPECT_EQ(oe.ranks()[3], 0u);
}

TEST(Expansion, Fano) {
    const auto ex = expansion(fano_plane());
    EXPECT_EQ(ex.hypergraph.vertex_count(), 14u);
    EXPECT_EQ(ex.hypergraph.edge_count(), 7u);
    EXPECT_TRUE(is_linear(ex.hypergraph));
    const auto deg = ex.hypergraph.degrees();
    for (std::size_t v = 7; v < 14; ++v) EXPECT_EQ(deg[v], 1u);

    const auto oe = ordered_expansion(fano_plane());
    const auto ranks = oe.ranks();
    for (auto ve : ex.new_vertex) EXPECT_LT(ranks[ve], 7u);
    EXPECT_TRUE(is_ordered_expansion(oe, ex));

    auto bad = oe;
    std::swap(bad.order[0], bad.order[7]); // old vertex 0 moves before some v_e
    EXPECT_FALSE(is_ordered_expansion(bad, ex));
}

TEST(ProjectivePlane, Sizes) {
    const auto fano = pg_lines(2);
    EXPECT_EQ(fano.vertex_count(), 7u);
    EXPECT_EQ(fano.edge_count(), 7u);
    EXPECT_EQ(fano.uniformity(), 3u);
    const auto f = f4();
    EXPECT_EQ(f.vertex_count(), 13u);
    EXPECT_EQ(f.edge_count(), 13u);
    EXPECT_EQ(f.uniformity(), 4u);
    EXPECT_THROW(pg_lines(4), std::invalid_argument);
}

TEST(ProjectivePlane, Axioms) {
    for (unsigned q : {2u, 3u, 5u}) {
        const auto h = pg_lines(q);
        const std::size_t n = h.vertex_count();
        EXPECT_EQ(n, q * q + q + 1);
        EXPECT_TRUE(is_linear(h));
        // every pair of points on exactly one line
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b) {
                std::size_t lines = 0;
                for (const auto& e : h.edges())
                    lines += std::binary_search(e.begin(), e.end(), a) && std::binary_search(e.begin(), e.end(), b);
                EXPECT_EQ(lines, 1u);
            }
        // any two lines meet in exactly one point; every point is on q+1 lines
        for (std::size_t i = 0; i < h.edge_count(); ++i)
            for (std::size_t j = i + 1; j < h.edge_count(); ++j) {
                std::size_t common = 0;
                for (auto v : h.edges()[i]) common += std::binary_search(h.edges()[j].begin(), h.edges()[j].end(), v);
                EXPECT_EQ(common, 1u);
            }
        for (auto d : h.degrees()) EXPECT_EQ(d, q + 1);
    }
}

TEST(RecursiveConstruction, SizesAndEdges) {
    const std::vector<std::size_t> edges{1, 38, 860, 16120};
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto g = g_k(k);
        EXPECT_EQ(g.vertex_count(), std::size_t{1} << (k + 1));
        EXPECT_EQ(g.edge_count(), edges[k - 1]);
    }
    EXPECT_THROW(g_k(0), std::invalid_argument);
    EXPECT_THROW(g_k(6), std::invalid_argument);
}

TEST(RecursiveConstruction, IndependenceNumber) {
    for (std::size_t k = 1; k <= 3; ++k) {
        const auto g = g_k(k);
        const auto r = independence_number(g);
        EXPECT_EQ(r.size, k + 2);
        EXPECT_EQ(oracle::independence_number(g), k + 2);
        // the witness has at least two vertices in at most one half
        const Vertex half = static_cast<Vertex>(g.vertex_count() / 2);
        std::size_t lo = 0, hi = 0;
        for (auto v : r.witness) (v < half ? lo : hi) += 1;
        EXPECT_FALSE(lo >= 2 && hi >= 2);
    }
}

TEST(RecursiveConstruction, NoProjectivePlaneInside) {
    EXPECT_EQ(contains_copy(f4(), g_k(2)).outcome, SearchOutcome::proven_absent);
    const auto r = contains_copy(f4(), g_k(3), std::chrono::seconds(60));
    EXPECT_NE(r.outcome, SearchOutcome::found);
}

TEST(ParityScan, Examples) {
    const auto f = f4();
    const auto sets = parity_partition_scan(f);
    EXPECT_EQ(sets, (std::vector<std::uint64_t>{0, (std::uint64_t{1} << 13) - 1}));

    const auto one = parity_partition_scan(Hypergraph(4, 4, {{0, 1, 2, 3}}));
    EXPECT_NE(std::find(one.begin(), one.end(), 0b0011u), one.end());
    EXPECT_EQ(one.size(), 8u); // sizes 0, 2 and 4

    EXPECT_EQ(parity_partition_scan(Hypergraph(4, 6)).size(), 64u);
    EXPECT_THROW(parity_partition_scan(Hypergraph(4, 30)), std::invalid_argument);
}
