#include <stepup/binary_structure.hpp>
#include <stepup/int_set.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace stepup;

TEST(IntSet, ParsesAndNormalizes) {
    const IntSet s = parse_int_set("9, 5,7,6,8");
    EXPECT_EQ(s.to_string(), "{5,6,7,8,9}");
    EXPECT_EQ(s.size(), 5u);
    EXPECT_EQ(s.min(), 5u);
    EXPECT_EQ(s.max(), 9u);
    EXPECT_TRUE(s.contains(7));
    EXPECT_FALSE(s.contains(4));
    EXPECT_TRUE(parse_int_set("").empty());
    EXPECT_EQ(IntSet::from_mask(0b1011), (IntSet{0, 1, 3}));
}

TEST(IntSet, RejectsBadLiterals) {
    EXPECT_THROW(parse_int_set("1,,2"), std::invalid_argument);
    EXPECT_THROW(parse_int_set("1,x"), std::invalid_argument);
    EXPECT_THROW(parse_int_set("3,3"), std::invalid_argument);
}

TEST(Delta, HighestDifferingBit) {
    EXPECT_EQ(delta(5, 6), 1);
    EXPECT_EQ(delta(6, 7), 0);
    EXPECT_EQ(delta(7, 8), 3);
    EXPECT_EQ(delta(8, 9), 0);
    EXPECT_THROW(delta(3, 3), std::invalid_argument);
}

TEST(TopSplittingLevel, Examples) {
    EXPECT_EQ(top_splitting_level(IntSet{5, 6, 7, 8, 9}), 3);
    EXPECT_EQ(top_splitting_level(IntSet{0, 1}), 0);
    EXPECT_EQ(top_splitting_level(IntSet{6, 7}), 0);
    EXPECT_THROW(top_splitting_level(IntSet{4}), std::invalid_argument);
}

TEST(Split, Examples) {
    auto [l, r] = split(IntSet{5, 6, 7, 8, 9});
    EXPECT_EQ(l, (IntSet{5, 6, 7}));
    EXPECT_EQ(r, (IntSet{8, 9}));
    auto [l2, r2] = split(IntSet{5, 6, 7});
    EXPECT_EQ(l2, (IntSet{5}));
    EXPECT_EQ(r2, (IntSet{6, 7}));
    auto [l3, r3] = split(IntSet{0, 1});
    EXPECT_EQ(l3, (IntSet{0}));
    EXPECT_EQ(r3, (IntSet{1}));
}

TEST(DeltaSequence, Examples) {
    EXPECT_EQ(delta_sequence(IntSet{5, 6, 7, 8, 9}), (std::vector<int>{1, 0, 3, 0}));
    EXPECT_EQ(delta_sequence(IntSet{0, 1}), (std::vector<int>{0}));
    EXPECT_EQ(delta_sequence(IntSet{0, 1, 6, 7}), (std::vector<int>{0, 2, 0}));
}

TEST(BinaryStructure, WorkedFiveElementSet) {
    const BinaryStructureTree b(IntSet{5, 6, 7, 8, 9});
    const auto& root = b.root();
    EXPECT_EQ(root.weight, 5u);
    EXPECT_EQ(root.level, 3);
    const auto& l = b.node(root.left);
    const auto& r = b.node(root.right);
    EXPECT_EQ(l.weight, 3u);
    EXPECT_EQ(l.level, 1);
    EXPECT_EQ(r.weight, 2u);
    EXPECT_EQ(r.level, 0);
    EXPECT_TRUE(b.node(l.left).is_leaf());
    EXPECT_EQ(b.node(l.left).element, 5u);
    EXPECT_EQ(b.node(l.right).weight, 2u);
    EXPECT_EQ(b.node(l.right).level, 0);
    EXPECT_EQ(b.shape(), "((1,(1,1)),(1,1))");
    EXPECT_EQ(classify_monotone(b), Monotonicity::neither);
}

TEST(BinaryStructure, SmallCases) {
    const BinaryStructureTree one(IntSet{7});
    EXPECT_TRUE(one.root().is_leaf());
    EXPECT_EQ(one.root().weight, 1u);

    const BinaryStructureTree b(IntSet{0, 1, 6, 7});
    EXPECT_EQ(b.root().level, 2);
    EXPECT_EQ(b.node(b.root().left).weight, 2u);
    EXPECT_EQ(b.node(b.root().right).weight, 2u);
    EXPECT_EQ(b.node(b.root().left).level, 0);
    EXPECT_EQ(b.node(b.root().right).level, 0);

    EXPECT_THROW(BinaryStructureTree(IntSet{}), std::invalid_argument);
}

TEST(BinaryStructure, Monotonicity) {
    // delta sequence (1,2,3,4) strictly increases, so this set is increasing
    EXPECT_EQ(classify_monotone(BinaryStructureTree(IntSet{1, 2, 4, 8, 16})), Monotonicity::increasing);
    EXPECT_EQ(classify_monotone(BinaryStructureTree(IntSet{0, 1})), Monotonicity::both);
    EXPECT_EQ(classify_monotone(BinaryStructureTree(IntSet{3})), Monotonicity::both);
    EXPECT_EQ(classify_monotone(BinaryStructureTree(IntSet{0, 8, 12, 14})), Monotonicity::decreasing);
}

TEST(LevelSet, Examples) {
    EXPECT_EQ(level_set(IntSet{0, 1, 2, 4}), (IntSet{0, 1, 2}));
    EXPECT_TRUE(level_set(IntSet{9}).empty());
    EXPECT_EQ(level_set(IntSet{1, 2, 4, 8, 16}), (IntSet{1, 2, 3, 4}));
    EXPECT_THROW(level_set(IntSet{5, 6, 7, 8, 9}), std::invalid_argument);
}

TEST(BinaryStructure, RandomSetsAgreeWithDeltaOracle) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 3000; ++trial) {
        const std::uint64_t mask = rng() & 0xffffffffull;
        if (mask == 0) continue;
        const IntSet s = IntSet::from_mask(mask);
        const BinaryStructureTree b(s);
        const auto v = s.vector();

        // structural invariants
        EXPECT_EQ(b.leaves_in_order(), v);
        EXPECT_EQ(b.root().weight, s.size());
        for (const auto& n : b.nodes()) {
            if (n.is_leaf()) continue;
            EXPECT_EQ(n.weight, b.node(n.left).weight + b.node(n.right).weight);
            for (int c : {n.left, n.right})
                if (!b.node(c).is_leaf()) EXPECT_LT(b.node(c).level, n.level);
        }
        if (s.size() >= 2) {
            std::vector<int> ds;
            for (std::size_t i = 0; i + 1 < v.size(); ++i) ds.push_back(oracle::delta(v[i], v[i + 1]));
            EXPECT_EQ(delta_sequence(s), ds);
            EXPECT_EQ(b.internal_levels_in_order(), ds);
        }
        EXPECT_EQ(is_increasing(b), oracle::delta_increasing(v)) << s.to_string();
        EXPECT_EQ(is_decreasing(b), oracle::delta_decreasing(v)) << s.to_string();
    }
}

TEST(BinaryStructure, SparseSetsOfAllSizes) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t size = 2 + rng() % 5;
        std::vector<std::uint64_t> v;
        while (v.size() < size) {
            v.push_back(rng() % 64);
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        const IntSet s(v);
        const BinaryStructureTree b(s);
        const bool inc = oracle::delta_increasing(v), dec = oracle::delta_decreasing(v);
        EXPECT_EQ(is_increasing(b), inc);
        EXPECT_EQ(is_decreasing(b), dec);
        if (inc || dec) {
            std::vector<std::uint64_t> ds;
            for (std::size_t i = 0; i + 1 < v.size(); ++i) ds.push_back(oracle::delta(v[i], v[i + 1]));
            EXPECT_EQ(level_set(s), IntSet(ds));
        }
    }
}

TEST(BinaryStructure, DotMentionsLevels) {
    const auto dot = BinaryStructureTree(IntSet{5, 6, 7, 8, 9}).to_dot();
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    EXPECT_NE(dot.find("l=3"), std::string::npos);
    EXPECT_NE(dot.find("label=\"5\""), std::string::npos);
}
