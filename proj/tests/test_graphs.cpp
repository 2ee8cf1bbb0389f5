#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "hapmono/graphs.hpp"

using namespace hapmono;

namespace {

// Perfect matchings by brute force over pair sets.
std::size_t count_pm(const RegularGraph& g) {
    const auto& e = g.edges();
    const int half = g.vertex_count() / 2;
    std::size_t k = 0;
    std::vector<int> pick;
    auto rec = [&](auto&& self, std::size_t from, Mask used) -> void {
        if (static_cast<int>(pick.size()) == half) {
            ++k;
            return;
        }
        for (std::size_t i = from; i < e.size(); ++i) {
            Mask m = (Mask{1} << e[i].a) | (Mask{1} << e[i].b);
            if (used & m) continue;
            // lowest uncovered vertex must be matched first
            int low = std::countr_one(used);
            if (e[i].a != low) continue;
            pick.push_back(static_cast<int>(i));
            self(self, i + 1, used | m);
            pick.pop_back();
        }
    };
    rec(rec, 0, 0);
    return k;
}

}  // namespace

TEST(RegularGraph, Validation) {
    EXPECT_THROW(RegularGraph::from_edges(4, {{0, 1}, {0, 1}}), duplicate_edge);
    EXPECT_THROW(RegularGraph::from_edges(4, {{0, 1}, {1, 2}}), not_regular);
    auto c = cycle_graph(6);
    EXPECT_EQ(c.degree(), 2);
    EXPECT_EQ(c.edge_count(), 6u);
}

TEST(Families, DegreesAndSizes) {
    EXPECT_EQ(complete_graph(6).degree(), 5);
    EXPECT_EQ(complete_bipartite(4).degree(), 4);
    EXPECT_EQ(antiprism(8).degree(), 4);
    EXPECT_EQ(prism(5).degree(), 3);
    EXPECT_EQ(prism(5).vertex_count(), 10);
    EXPECT_EQ(petersen().degree(), 3);
    EXPECT_EQ(petersen_plus_matching().degree(), 4);
}

TEST(Families, Girth) {
    EXPECT_EQ(girth(petersen()), 5);
    EXPECT_EQ(girth(prism(4)), 4);
    EXPECT_EQ(girth(complete_graph(4)), 3);
    EXPECT_EQ(girth(complete_bipartite(3)), 4);
}

TEST(Matchings, CountsAgreeWithBruteForce) {
    for (const auto& g : {complete_graph(6), complete_bipartite(3), prism(4), petersen(), antiprism(8)})
        EXPECT_EQ(perfect_matchings(g.adjacency(), TeamSet(g.vertex_count()).all()).size(), count_pm(g));
    EXPECT_EQ(count_pm(petersen()), 6u);
    EXPECT_EQ(count_pm(complete_graph(6)), 15u);
}

TEST(Matchings, CrossingMatchings) {
    auto g = complete_graph(4);
    for (const auto& c : enumerate_partitions(TeamSet(4))) EXPECT_TRUE(has_crossing_perfect_matching(g.adjacency(), c));
    auto c6 = cycle_graph(6);
    // only {2,3} and {0,5} cross {0,1,2} | {3,4,5}
    EXPECT_FALSE(has_crossing_perfect_matching(c6.adjacency(), EqualPartition(6, 0b000111)));
    EXPECT_TRUE(has_crossing_perfect_matching(c6.adjacency(), EqualPartition(6, 0b010101)));
}

TEST(EdgeColouring, KnownChromaticIndices) {
    EXPECT_FALSE(is_edge_colorable(petersen()));
    EXPECT_TRUE(is_edge_colorable(prism(5)));
    EXPECT_TRUE(is_edge_colorable(complete_graph(6)));
    EXPECT_TRUE(is_edge_colorable(complete_bipartite(4)));
    EXPECT_TRUE(is_edge_colorable(antiprism(10)));
}

TEST(Complement, PetersenPlusMatching) {
    auto m = first_complement_matching(petersen());
    EXPECT_EQ(m.size(), 5u);
    for (const Pair& p : m) EXPECT_FALSE(petersen().has_edge(p));
    auto plus = petersen_plus_matching();
    for (const Pair& p : m) EXPECT_TRUE(plus.has_edge(p));
}

TEST(Isomorphism, FindsRelabellings) {
    std::mt19937 rng(3);
    for (const auto& g : {antiprism(8), petersen(), prism(5)}) {
        Permutation sigma(g.vertex_count());
        std::iota(sigma.begin(), sigma.end(), 0);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        std::vector<Pair> e;
        for (const Pair& p : g.edges()) e.emplace_back(sigma[p.a], sigma[p.b]);
        auto h = RegularGraph::from_edges(g.vertex_count(), e);
        auto iso = find_isomorphism(g, h);
        ASSERT_TRUE(iso.has_value());
        for (const Pair& p : g.edges()) EXPECT_TRUE(h.has_edge((*iso)[p.a], (*iso)[p.b]));
    }
    EXPECT_FALSE(find_isomorphism(prism(5), petersen()).has_value());
    EXPECT_FALSE(find_isomorphism(antiprism(8), complete_bipartite(4)).has_value());
}

TEST(TextFormat, GraphRoundTripAndErrors) {
    auto g = antiprism(10);
    EXPECT_EQ(parse_graph(format_graph(g)), g);
    EXPECT_THROW(parse_graph("graph 4\ne 0 0\n"), self_loop);
    EXPECT_THROW(parse_graph("graph 4\ne 0 7\n"), parse_error);
    EXPECT_THROW(parse_graph("grph 4\n"), parse_error);
}
