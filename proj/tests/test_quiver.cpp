#include <gtest/gtest.h>

#include <random>

#include "qrep/quiver.hpp"

using namespace qrep;

namespace {

using Sets = std::vector<std::vector<std::size_t>>;

Quiver random_quiver(std::mt19937_64& rng) {
    std::size_t nv = 1 + rng() % 8;
    std::size_t na = rng() % (2 * nv + 1);
    std::vector<std::string> vs;
    for (std::size_t i = 0; i < nv; ++i) vs.push_back(std::to_string(i + 1));
    std::vector<Arrow> as;
    bool dag = rng() % 2 == 0;
    for (std::size_t k = 0; k < na; ++k) {
        std::size_t s = rng() % nv, t = rng() % nv;
        if (dag && s >= t) {
            if (s == t) continue;
            std::swap(s, t);
        }
        as.push_back({"a" + std::to_string(k), s, t});
    }
    return Quiver(vs, as);
}

}  // namespace

TEST(VSequenceTest, ForkQuiver) {
    auto v = v_sequence(fork_quiver());
    EXPECT_EQ(v.sets, (Sets{{}, {0, 1}, {0, 1, 2}, {0, 1, 2, 3}}));
    EXPECT_EQ(v.lambda, 3u);
    EXPECT_TRUE(v.left_rooted);
    EXPECT_TRUE(is_left_rooted(fork_quiver()));
}

TEST(VSequenceTest, LoopAndTwoCycle) {
    auto v = v_sequence(loop_quiver());
    EXPECT_EQ(v.sets, (Sets{{}, {}}));
    EXPECT_FALSE(v.left_rooted);
    EXPECT_FALSE(is_left_rooted(two_cycle_quiver()));
    EXPECT_TRUE(has_directed_cycle(two_cycle_quiver()));
}

TEST(VSequenceTest, A2) {
    auto v = v_sequence(a2_quiver());
    EXPECT_EQ(v.sets, (Sets{{}, {0}, {0, 1}}));
    EXPECT_TRUE(v.left_rooted);
}

TEST(VSequenceTest, RandomQuiversAgreeWithAcyclicity) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        auto q = random_quiver(rng);
        auto v = v_sequence(q);
        EXPECT_EQ(v.left_rooted, !has_directed_cycle(q));
        EXPECT_LE(v.lambda, q.vertex_count() + 1);
        for (std::size_t k = 0; k + 1 < v.sets.size(); ++k) {
            // monotone chain
            EXPECT_TRUE(std::includes(v.sets[k + 1].begin(), v.sets[k + 1].end(), v.sets[k].begin(), v.sets[k].end()));
            // arrow descent
            for (const auto& a : q.arrows())
                if (std::binary_search(v.sets[k + 1].begin(), v.sets[k + 1].end(), a.target))
                    EXPECT_TRUE(std::binary_search(v.sets[k].begin(), v.sets[k].end(), a.source));
        }
    }
}

TEST(QuiverTest, Opposite) {
    auto op = opposite(fork_quiver());
    EXPECT_EQ(op.arrow(0).source, 2u);
    EXPECT_EQ(op.arrow(0).target, 0u);
    EXPECT_EQ(op.arrow(1).source, 2u);
    EXPECT_EQ(op.arrow(1).target, 1u);
    EXPECT_EQ(op.arrow(2).source, 3u);
    EXPECT_EQ(op.arrow(2).target, 2u);
    EXPECT_EQ(opposite(op), fork_quiver());
    Quiver edgeless({"x", "y"}, {});
    EXPECT_EQ(opposite(edgeless), edgeless);
}

TEST(QuiverTest, ParseRoundTripAndErrors) {
    auto q = parse_quiver("# fork\nvertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a 1 3\narrow b 2 3\narrow c 3 4\n");
    EXPECT_EQ(q, fork_quiver());
    EXPECT_EQ(parse_quiver(q.to_text()), q);
    // order-insensitive
    EXPECT_EQ(parse_quiver("arrow a 1 2\nvertex 1\nvertex 2\n"), a2_quiver());
    try {
        parse_quiver("vertex 1\nvertex 2\nvertex 1\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    try {
        parse_quiver("vertex 1\narrow a 1 9\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(parse_quiver("vertex 1\nedge a 1 1\n"), ParseError);
    EXPECT_THROW(parse_quiver("vertex 1\narrow a 1 1\narrow a 1 1\n"), ParseError);
}

TEST(PathRingTest, Counts) {
    PathRing a2(a2_quiver(), RingSpec(2));
    EXPECT_EQ(a2.size(), 3u);
    PathRing fork(fork_quiver(), RingSpec(4));
    EXPECT_EQ(fork.size(), 9u);
    std::vector<std::string> names;
    for (const auto& p : fork.basis()) names.push_back(p.name(fork_quiver()));
    EXPECT_EQ(names, (std::vector<std::string>{"e1", "e2", "e3", "e4", "a", "b", "c", "ca", "cb"}));
    EXPECT_TRUE(fork.is_associative());
    EXPECT_TRUE(fork.has_identity());
    PathRing edgeless(Quiver({"1", "2", "3"}, {}), RingSpec(4));
    EXPECT_EQ(edgeless.size(), 3u);
    EXPECT_THROW(PathRing(loop_quiver(), RingSpec(2)), std::invalid_argument);
}

TEST(PathRingTest, RandomAcyclicTablesAreRings) {
    std::mt19937_64 rng(99);
    int checked = 0;
    while (checked < 50) {
        auto q = random_quiver(rng);
        if (has_directed_cycle(q)) continue;
        PathRing r(q, RingSpec(2));
        if (r.size() > 40) continue;
        EXPECT_TRUE(r.is_associative());
        EXPECT_TRUE(r.has_identity());
        ++checked;
    }
}
