#include <stepup/stepping_up.hpp>
#include <stepup/transversal.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace stepup;

namespace {

OrientedHypergraph random_tiny(Rng& rng, std::size_t n, std::size_t s, double p) {
    OrientedHypergraph h{s, n, {}};
    for_each_k_subset(n, s, [&](const Edge& e) {
        if (rng.uniform01() < p) {
            std::vector<Vertex> t = e;
            rng.shuffle(t);
            h.edges.push_back(t);
        }
    });
    return h;
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

} // namespace

TEST(Sampler, FullProbabilityGivesEveryTuple) {
    SearchConfig cfg;
    cfg.s = 3;
    cfg.n = 3;
    cfg.c = 3.0; // p = 3 * 3^-1 = 1
    std::set<std::vector<Vertex>> orientations;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        cfg.seed = seed;
        const auto h = sample_oriented(cfg);
        ASSERT_EQ(h.edges.size(), 1u);
        orientations.insert(h.edges[0]);
    }
    EXPECT_EQ(orientations.size(), 6u);
}

TEST(Sampler, RejectsInvalidProbability) {
    SearchConfig cfg;
    cfg.c = 0.0;
    EXPECT_THROW(sample_oriented(cfg), std::invalid_argument);
    cfg.c = 100.0;
    cfg.n = 4;
    EXPECT_THROW(sample_oriented(cfg), std::invalid_argument);
}

TEST(Sampler, Deterministic) {
    SearchConfig cfg;
    cfg.n = 15;
    cfg.c = 0.5;
    cfg.seed = 99;
    const auto a = sample_oriented(cfg);
    const auto b = sample_oriented(cfg);
    EXPECT_EQ(a.edges, b.edges);
    const auto la = sample_linear_oriented(cfg);
    const auto lb = sample_linear_oriented(cfg);
    ASSERT_TRUE(la.graph);
    EXPECT_EQ(la.graph->edges, lb.graph->edges);
    EXPECT_EQ(la.attempts, lb.attempts);
    EXPECT_TRUE(is_linear(la.graph->underlying()));
}

TEST(Sampler, GirthFilter) {
    SearchConfig cfg;
    cfg.n = 12;
    cfg.c = 0.3;
    cfg.seed = 5;
    cfg.girth = 3;
    const auto r = sample_linear_oriented(cfg);
    ASSERT_TRUE(r.graph);
    EXPECT_TRUE(berge_girth_exceeds(r.graph->underlying(), 3));
}

TEST(OrientedHypergraph, JsonRoundTripAndValidation) {
    OrientedHypergraph h{3, 5, {{2, 0, 1}, {4, 3, 0}}};
    const auto back = oriented_from_json(to_json(h));
    EXPECT_EQ(back.edges, h.edges);
    OrientedHypergraph dup{3, 5, {{2, 0, 1}, {0, 1, 2}}};
    EXPECT_THROW(dup.validate(), std::invalid_argument);
    OrientedHypergraph rep{3, 5, {{2, 2, 1}}};
    EXPECT_THROW(rep.validate(), std::invalid_argument);
}

TEST(Verifier, SingleEdgeIsRefuted) {
    const OrientedHypergraph h{3, 3, {{0, 1, 2}}};
    const auto r = verify_transversal_property(h);
    EXPECT_EQ(r.verdict, Verdict::refuted);
    ASSERT_TRUE(r.counterexample);
    EXPECT_TRUE(is_admissible_triple(3, *r.counterexample));
    EXPECT_FALSE(has_ordered_monochromatic_transversal_edge(h, *r.counterexample));
}

TEST(Verifier, NoEdgesIsRefuted) {
    const OrientedHypergraph h{3, 4, {}};
    const auto r = verify_transversal_property(h);
    EXPECT_EQ(r.verdict, Verdict::refuted);
    EXPECT_TRUE(is_admissible_triple(4, *r.counterexample));
}

TEST(Verifier, SingletonEdgesAreVerified) {
    // with s = 1 every vertex is an ordered monochromatic transversal edge
    OrientedHypergraph h{1, 5, {}};
    for (Vertex v = 0; v < 5; ++v) h.edges.push_back({v});
    const auto r = verify_transversal_property(h);
    EXPECT_EQ(r.verdict, Verdict::verified);
    EXPECT_EQ(naive_transversal_check(h).verdict, Verdict::verified);
    Rng rng(1);
    EXPECT_EQ(estimate_transversal_fraction(h, 100, rng).admitting, 100u);
}

TEST(Verifier, BudgetExhaustion) {
    OrientedHypergraph dense{3, 12, {}};
    // a zero budget stops before the first partition is examined
    for_each_k_subset(12, 3, [&](const Edge& e) { dense.edges.push_back(e); });
    const auto r = verify_transversal_property(dense, std::chrono::milliseconds(0));
    EXPECT_EQ(r.verdict, Verdict::budget_exhausted);
    EXPECT_FALSE(r.counterexample);
}

TEST(Verifier, AgreesWithNaiveChecker) {
    Rng rng(2024);
    std::size_t refuted = 0, verified = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t s = 1 + trial % 3;
        const std::size_t n = std::max<std::size_t>(s, 2 + trial % 4);
        const auto h = random_tiny(rng, n, s, 0.4 + 0.2 * rng.uniform01());
        const auto fast = verify_transversal_property(h);
        const auto slow = naive_transversal_check(h);
        ASSERT_NE(fast.verdict, Verdict::budget_exhausted);
        EXPECT_EQ(fast.verdict, slow.verdict) << nlohmann::json(to_json(h)).dump();
        if (fast.verdict == Verdict::refuted) {
            ++refuted;
            ASSERT_TRUE(fast.counterexample);
            EXPECT_TRUE(is_admissible_triple(n, *fast.counterexample));
            EXPECT_FALSE(has_ordered_monochromatic_transversal_edge(h, *fast.counterexample));
        } else {
            ++verified;
            Rng re(trial);
            EXPECT_EQ(estimate_transversal_fraction(h, 100, re).admitting, 100u);
        }
    }
    EXPECT_GT(refuted, 0u);
    EXPECT_GT(verified, 0u);
}

TEST(PotentialEdges, Examples) {
    const std::vector<std::size_t> singletons(7, 1);
    const std::vector<Side> all_left(7, Side::L);
    EXPECT_EQ(count_potential_edges(singletons, all_left, 3), binom(7, 3));
    EXPECT_EQ(count_potential_edges({3, 1}, {Side::L, Side::L}, 3), 0u);
    EXPECT_EQ(count_potential_edges({2, 1, 1}, {Side::L, Side::R, Side::L}, 2), 2u);
}

TEST(PotentialEdges, MatchesSubsetCount) {
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 3 + rng.below(8);
        const auto x = random_triple(n, rng);
        std::vector<std::size_t> sizes(x.colors.size(), 0);
        for (auto p : x.part) ++sizes[p];
        for (std::size_t s = 1; s <= 4; ++s) {
            std::uint64_t direct = 0;
            for_each_k_subset(n, s, [&](const Edge& e) {
                std::set<std::size_t> parts;
                std::set<Side> cols;
                for (auto v : e) {
                    parts.insert(x.part[v]);
                    cols.insert(x.colors[x.part[v]]);
                }
                direct += parts.size() == s && cols.size() == 1;
            });
            EXPECT_EQ(count_potential_edges(sizes, x.colors, s), direct);
        }
    }
}

TEST(PotentialEdges, AtLeastTheGreedyProduct) {
    // T * s! >= floor(|A| / 2^{2s-1})^s whenever s < t/2
    for (std::size_t n = 1; n <= 9; ++n) {
        for_each_dyadic_profile(n, [&](const std::vector<std::size_t>& sizes) {
            const std::size_t t = sizes.size();
            std::vector<Side> colors(t);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
                for (std::size_t i = 0; i < t; ++i) colors[i] = (mask >> i & 1) ? Side::R : Side::L;
                for (std::size_t s = 1; 2 * s < t; ++s) {
                    const std::uint64_t f = n >> (2 * s - 1);
                    std::uint64_t lhs = count_potential_edges(sizes, colors, s), rhs = 1;
                    for (std::size_t i = 2; i <= s; ++i) lhs *= i;
                    for (std::size_t i = 0; i < s; ++i) rhs *= f;
                    EXPECT_GE(lhs, rhs);
                }
            }
        });
    }
}

TEST(Blowup, CountsAndLinearity) {
    std::mt19937_64 gen(12);
    Rng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const auto base = oracle::random_linear_hypergraph(3, 4 + trial % 2, 3, gen);
        const auto f = ordered_expansion(base);
        SearchConfig cfg;
        cfg.s = f.hypergraph.vertex_count();
        cfg.n = 2 * cfg.s - 1 + trial % 3;
        // about three expected edges
        cfg.c = 3.0 * std::pow(static_cast<double>(cfg.n), static_cast<double>(cfg.s) - 2.0) /
                static_cast<double>(binom(cfg.n, cfg.s));
        cfg.seed = static_cast<std::uint64_t>(trial);
        const auto h0 = sample_linear_oriented(cfg);
        if (!h0.graph) continue;
        const auto out = blowup(*h0.graph, f);
        EXPECT_EQ(out.duplicate_edges, 0u);
        EXPECT_EQ(out.hypergraph.edge_count(), h0.graph->edges.size() * f.hypergraph.edge_count());
        EXPECT_TRUE(is_linear(out.hypergraph));
    }
}

TEST(Blowup, SingleEdgeGivesCopy) {
    const auto f = ordered_expansion(Hypergraph(2, 3, {{0, 1}, {1, 2}}));
    // f has 5 vertices: v_e's 3 and 4 first, then 0, 1, 2
    const OrientedHypergraph h0{5, 5, {{4, 0, 3, 1, 2}}};
    const auto out = blowup(h0, f);
    ASSERT_EQ(out.hypergraph.edge_count(), 2u);
    const auto rank = f.ranks();
    for (const auto& e : f.hypergraph.edges()) {
        Edge img;
        for (auto v : e) img.push_back(h0.edges[0][rank[v]]);
        EXPECT_TRUE(out.hypergraph.has_edge(img));
    }
    EXPECT_THROW(blowup(OrientedHypergraph{3, 3, {{0, 1, 2}}}, f), std::invalid_argument);
}

TEST(PhiStar, WorkedExample) {
    const auto d = dyadic_decompose(IntSet{5, 6, 7, 8, 9});
    EXPECT_EQ(phi_star(d, 5, Side::R, 4), 1);
    EXPECT_EQ(phi_star(d, 5, Side::L, 4), 2);
    EXPECT_EQ(phi_star(d, 8, Side::R, 4), 3);
    EXPECT_THROW(phi_star(d, 7, Side::R, 4), std::invalid_argument);
}

TEST(Chain, RandomChainsHaveRecordedLevels) {
    Rng rng(77);
    std::size_t checked = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<std::uint64_t> v;
        const std::size_t size = 2 + rng.below(40);
        while (v.size() < size) {
            v.push_back(rng.below(1u << 12));
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        const auto d = dyadic_decompose(IntSet(v));
        const Side side = rng.coin() ? Side::R : Side::L;
        // walk down the part indices, keeping only parts of the chosen color after x_0
        std::vector<std::uint64_t> chain;
        std::size_t i = d.t() - rng.below(d.t());
        chain.push_back(d.parts[i - 1][rng.below(d.parts[i - 1].size())]);
        for (std::size_t j = i - 1; j >= 1; --j) {
            if (d.colors[j - 1] != side || rng.coin()) continue;
            chain.push_back(d.parts[j - 1][rng.below(d.parts[j - 1].size())]);
        }
        if (chain.size() < 2) continue;
        const auto c = check_chain(d, chain, side);
        EXPECT_TRUE(c.structure_ok);
        EXPECT_TRUE(c.levels_ok);
        ++checked;
    }
    EXPECT_GT(checked, 1000u);
}

TEST(Chain, LeftStepEdgeMapsToSourceEdge) {
    // An all-R chain whose set is a left stepping-up edge of G has phi* image in E(G).
    std::mt19937_64 gen(5);
    Rng rng(5);
    std::size_t hits = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t N = 6;
        const auto g = oracle::random_hypergraph(3, N, 0.5, gen);
        std::vector<std::uint64_t> v;
        while (v.size() < 24) {
            v.push_back(rng.below(std::uint64_t{1} << N));
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        const auto d = dyadic_decompose(IntSet(v));
        std::vector<std::uint64_t> chain;
        std::size_t i = d.t() - rng.below(d.t());
        chain.push_back(d.parts[i - 1].min());
        for (std::size_t j = i - 1; j >= 1 && chain.size() < 4; --j)
            if (d.colors[j - 1] == Side::R && rng.coin()) chain.push_back(d.parts[j - 1].max());
        if (chain.size() != 4) continue;
        const IntSet e(chain);
        if (!left_step_edge(e, g)) continue;
        Edge image;
        for (std::size_t j = 1; j < 4; ++j) image.push_back(static_cast<Vertex>(phi_star(d, chain[j], Side::R, N)));
        EXPECT_TRUE(g.has_edge(image));
        ++hits;
    }
    EXPECT_GT(hits, 10u);
}
