#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "hapmono/combinat.hpp"

using namespace hapmono;

namespace {

// Brute-force count of n/2-subsets containing team 0.
std::size_t count_partitions(int n) {
    std::size_t k = 0;
    for (Mask m = 0; m < (Mask{1} << n); ++m)
        if ((m & 1) && std::popcount(m) == n / 2) ++k;
    return k;
}

}  // namespace

TEST(TeamSet, RejectsOddAndTiny) {
    EXPECT_THROW(TeamSet(5), invalid_input);
    EXPECT_THROW(TeamSet(0), invalid_input);
    EXPECT_NO_THROW(TeamSet(2));
}

TEST(Enumeration, CountsMatchBruteForce) {
    for (int n = 2; n <= 12; n += 2) {
        const TeamSet ts(n);
        const auto parts = enumerate_partitions(ts);
        EXPECT_EQ(parts.size(), count_partitions(n)) << n;
        EXPECT_EQ(enumerate_pairs(ts).size(), static_cast<std::size_t>(n * (n - 1) / 2));
        if (n <= 10) {
            EXPECT_EQ(enumerate_pm(ts).size(), parts.size() * factorial(n / 2)) << n;
        }
    }
}

TEST(Enumeration, SmallCases) {
    EXPECT_EQ(enumerate_partitions(TeamSet(6)).size(), 10u);
    EXPECT_EQ(enumerate_pm(TeamSet(6)).size(), 60u);
    EXPECT_EQ(enumerate_pm(TeamSet(4)).size(), 6u);
}

TEST(Enumeration, GeneratorsAreDistinctAndCrossing) {
    auto pm = enumerate_pm(TeamSet(6));
    std::set<PMGenerator> seen(pm.begin(), pm.end());
    EXPECT_EQ(seen.size(), pm.size());
    for (const auto& g : pm)
        for (const Pair& p : g.matching()) EXPECT_TRUE(g.partition().crosses(p));
}

TEST(Ranking, RoundTrips) {
    for (int n : {4, 6, 8}) {
        auto parts = enumerate_partitions(TeamSet(n));
        for (std::size_t i = 0; i < parts.size(); ++i) {
            EXPECT_EQ(partition_rank(parts[i]), i);
            EXPECT_EQ(partition_unrank(n, i), parts[i]);
        }
        auto pm = enumerate_pm(TeamSet(n));
        for (std::size_t i = 0; i < pm.size(); ++i) {
            EXPECT_EQ(pm_unrank(n, pm_rank(pm[i])), pm[i]);
        }
    }
}

TEST(EqualPartition, CanonicalSideHoldsTeamZero) {
    EqualPartition a(4, 0b1100), b(4, 0b0011);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(a.is_home(0));
    EXPECT_THROW(EqualPartition(4, 0b0111), invalid_input);
}

TEST(PMGenerator, RejectsNonCrossingPairs) {
    EqualPartition c(4, 0b0011);
    EXPECT_THROW(PMGenerator({{0, 1}, {2, 3}}, c), invalid_input);
    EXPECT_NO_THROW(PMGenerator({{0, 2}, {1, 3}}, c));
    EXPECT_THROW(PMGenerator({{0, 2}}, c), invalid_input);
}

TEST(ProblemVector, Arithmetic) {
    ProblemVector v(4);
    v.set_edge({0, 1}, 1);
    v.set_ha(EqualPartition(4, 0b0101), 2);
    EXPECT_EQ(v.edge_sum(), 1);
    EXPECT_EQ(v.ha_sum(), 2);
    EXPECT_EQ(v.scaled(3).ha_sum(), 6);
    EXPECT_TRUE(v.scaled(0).is_zero());
    EXPECT_THROW(v.set_edge({0, 1}, -1), invalid_input);
    ProblemVector w = v + v;
    EXPECT_EQ(w.edge(Pair(0, 1)), 2);
    EXPECT_TRUE(v.leq(w));
    EXPECT_FALSE(w.leq(v));
    EXPECT_THROW(v += ProblemVector(6), dimension_mismatch);
}

TEST(Coordinates, DimensionIsPairsPlusPartitions) {
    EXPECT_EQ(coordinates(6).dimension(), 25u);
    EXPECT_EQ(coordinates(4).dimension(), 9u);
    const auto& co = coordinates(6);
    auto g = enumerate_pm(TeamSet(6)).front().to_vector();
    auto d = co.dense(g);
    EXPECT_EQ(std::accumulate(d.begin(), d.end(), std::int64_t{0}), 4);
}

TEST(Predicates, ProblemVectorChecks) {
    // sum of three generators covering K4 once
    ProblemVector v(4);
    v += PMGenerator({{0, 2}, {1, 3}}, EqualPartition(4, 0b0011)).to_vector();
    v += PMGenerator({{0, 1}, {2, 3}}, EqualPartition(4, 0b1001)).to_vector();
    v += PMGenerator({{0, 3}, {1, 2}}, EqualPartition(4, 0b0101)).to_vector();
    EXPECT_TRUE(is_problem_vector(v).ok);
    EXPECT_EQ(support_graph(v).size(), 6u);
    ProblemVector bad = v;
    bad.set_edge({0, 1}, 2);
    EXPECT_FALSE(is_problem_vector(bad).ok);
    ProblemVector unbalanced = v;
    unbalanced.add_ha(EqualPartition(4, 0b0011), 1);
    EXPECT_FALSE(is_problem_vector(unbalanced).ok);
}

TEST(Canonical, InvariantUnderRelabelling) {
    std::mt19937 rng(7);
    auto pm = enumerate_pm(TeamSet(6));
    for (int trial = 0; trial < 20; ++trial) {
        ProblemVector v(6);
        for (int k = 0; k < 3; ++k) v += pm[rng() % pm.size()].to_vector();
        Permutation sigma(6);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        EXPECT_EQ(canonical_form(v), canonical_form(permute_vector(v, sigma)));
    }
}

TEST(TextFormat, VectorRoundTrip) {
    auto pm = enumerate_pm(TeamSet(6));
    ProblemVector v = pm[3].to_vector() + pm[17].to_vector() + pm[17].to_vector();
    EXPECT_EQ(parse_vector(format_vector(v)), v);
    EXPECT_THROW(parse_vector("vec 6\nedge 0 9 1\n"), error);
    EXPECT_THROW(parse_vector("nonsense"), parse_error);
}
