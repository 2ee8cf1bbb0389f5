#include <gtest/gtest.h>

#include <algorithm>

#include "hapmono/bfactor.hpp"

using namespace hapmono;

namespace {

RegularGraph cycles(const std::vector<int>& lengths) {
    std::vector<Pair> e;
    int base = 0;
    for (int k : lengths) {
        for (int i = 0; i < k; ++i) e.emplace_back(base + i, base + (i + 1) % k);
        base += k;
    }
    return RegularGraph::from_edges(base, e);
}

}  // namespace

TEST(TwoRegular, AllBFactorizable) {
    for (const auto& lens : std::vector<std::vector<int>>{{4}, {6}, {3, 3}, {8}, {5, 3}, {4, 4}}) {
        BFactorVerdict v = decide_bfactor(cycles(lens), Budget::seconds(120));
        EXPECT_EQ(v.verdict, Verdict::BFactorizable) << lens.size() << " cycles";
    }
}

TEST(TwoRegular, OddCyclesAdmitNoConeVector) {
    const auto g = cycles({3, 3});
    auto gens = restricted_generators(g);
    auto parts = enumerate_partitions(TeamSet(6));
    for (const auto& a : parts)
        for (const auto& b : parts) {
            ProblemVector v = vector_of(g, HapTable(6, {a, b}));
            EXPECT_FALSE(cone_member(v, gens).member);
        }
}

TEST(Verdicts, SmallGraphs) {
    EXPECT_EQ(decide_bfactor(complete_graph(4)).verdict, Verdict::BFactorizable);
    EXPECT_EQ(decide_bfactor(complete_bipartite(3)).verdict, Verdict::BFactorizable);
    BFactorVerdict anti = decide_bfactor(antiprism(6), Budget::seconds(120));
    ASSERT_EQ(anti.verdict, Verdict::NotBFactorizable);
    ASSERT_TRUE(anti.witness.has_value());
    EXPECT_TRUE(check_witness(antiprism(6), *anti.witness).ok);
}

TEST(Verdicts, HapScanFindsTheSixVertexWitness) {
    BFactorVerdict v = hap_scan(antiprism(6), Budget::seconds(120));
    ASSERT_EQ(v.verdict, Verdict::NotBFactorizable);
    EXPECT_TRUE(check_witness(antiprism(6), *v.witness).ok);
    EXPECT_EQ(hap_scan(complete_bipartite(3), Budget::seconds(120), 42).verdict, Verdict::BFactorizable);
}

TEST(Verdicts, DayPermutationInvariance) {
    const auto g = complete_graph(6);
    auto parts = enumerate_partitions(TeamSet(6));
    std::vector<int> idx = {0, 3, 3, 7, 9};
    auto table = [&] {
        std::vector<EqualPartition> days;
        for (int i : idx) days.push_back(parts[i]);
        return HapTable(6, days);
    };
    const ProblemVector v = vector_of(g, table());
    const SearchStatus first = find_integral_schedule(g, table()).status;
    while (std::next_permutation(idx.begin(), idx.end())) {
        EXPECT_EQ(find_integral_schedule(g, table()).status, first);
        EXPECT_EQ(vector_of(g, table()), v);
    }
}

TEST(Witness, RejectsWrongSupport) {
    auto c = antiprism_counterexample(8, Budget::seconds(120));
    ASSERT_TRUE(c.valid());
    EXPECT_TRUE(check_witness(antiprism(8), c.v).ok);
    EXPECT_FALSE(check_witness(antiprism(10), c.v).ok);
    ProblemVector trimmed = c.v;
    trimmed.set_edge(antiprism(8).edges().front(), 0);
    EXPECT_FALSE(check_witness(antiprism(8), trimmed).ok);
}

TEST(Antiprism, StatedTablesKeepTheTwistInvariants) {
    for (int n : {8, 10, 12, 14, 16, 18}) {
        auto [hap, t] = antiprism_hap(n);
        EXPECT_TRUE(check_twists(t).ok) << n;
        EXPECT_EQ(hap.day_count(), 4);
    }
    EXPECT_THROW(antiprism_hap(7), invalid_input);
    EXPECT_THROW(antiprism_hap(6), invalid_input);
}

TEST(Antiprism, TwistCheckerCatchesViolations) {
    EXPECT_FALSE(check_twists({8, {{0, 1}, {2, 5}, {3, 6}, {4, 7}}}).ok);   // 0 and 1 too close
    EXPECT_FALSE(check_twists({8, {{0, 4}, {1, 5}, {2, 6}, {3}}}).ok);      // pair 7 never twisted
    EXPECT_TRUE(check_twists({8, {{1, 4}, {0, 5}, {2, 7}, {3, 6}}}).ok);
}

TEST(Antiprism, CounterexamplesVerify) {
    for (int n : {6, 8, 10, 12}) {
        auto c = antiprism_counterexample(n, Budget::seconds(300));
        ASSERT_TRUE(c.valid()) << n;
        EXPECT_EQ(support_graph(c.v), antiprism(n).edges());
        EXPECT_TRUE(verify_double_cover(c.v, c.double_cover));
        EXPECT_EQ(c.double_cover.size(), 8u);
        EXPECT_FALSE(has_disjoint_system(day_candidates(antiprism(n), c.hap), 4));
    }
}

TEST(Antiprism, TwistSearchFindsEight) {
    auto c = twist_search(8, Budget::seconds(120));
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(c->valid());
    EXPECT_TRUE(check_twists(*c->twists).ok);
}

TEST(DoubleCover, SixTeamAdditionalGenerators) {
    auto hb = hilbert_basis(enumerate_pm(TeamSet(6)));
    ASSERT_EQ(hb.additional.size(), 90u);
    for (std::size_t i = 0; i < hb.additional.size(); i += 9) {
        const auto& v = hb.additional[i];
        DoubleCoverResult dc = double_cover_search(v, Budget::seconds(60));
        ASSERT_EQ(dc.status, SearchStatus::Found);
        EXPECT_TRUE(verify_double_cover(v, dc.generators));
        EXPECT_TRUE(verify_decomposition(v, as_decomposition(dc.generators, 2)));
    }
}

TEST(DoubleCover, TrivialAndPrecondition) {
    auto gens = enumerate_pm(TeamSet(4));
    ProblemVector v = gens[1].to_vector() + gens[4].to_vector();
    EXPECT_EQ(double_cover_search(v).status, SearchStatus::Found);
    ProblemVector outside(4);
    outside.set_edge({0, 1}, 1);
    outside.set_ha(EqualPartition(4, 0b0011), 1);
    EXPECT_THROW(double_cover_search(outside), precondition_violated);
}

TEST(K44, PartitionTypes) {
    std::map<int, int> count;
    for (const auto& c : enumerate_partitions(TeamSet(8))) ++count[k44_type(c)];
    // team 0 is home: h=2 gives 3*6, h=1 gives 4, h=3 gives 3*4, h=4 gives 1
    EXPECT_EQ(count[1], 18);
    EXPECT_EQ(count[2], 16);
    EXPECT_EQ(count[3], 1);
    const auto g = complete_bipartite(4);
    for (const auto& c : enumerate_partitions(TeamSet(8))) {
        auto ms = compatible_matchings(g, c);
        if (k44_type(c) == 2) {
            EXPECT_EQ(ms.size(), 6u);
        }
        if (k44_type(c) == 3) {
            EXPECT_EQ(ms.size(), 24u);
        }
        if (k44_type(c) == 1) {
            EXPECT_EQ(ms.size(), 4u);
        }
    }
}

TEST(Reports, FormatCarriesResultLine) {
    Report r = scenario_counting();
    EXPECT_EQ(r.outcome, Outcome::Pass);
    const std::string text = format_report(r);
    EXPECT_NE(text.find("RESULT counting PASS"), std::string::npos);
    EXPECT_NE(find_scenario("k44"), nullptr);
    EXPECT_TRUE(find_scenario("k44")->slow);
    EXPECT_EQ(find_scenario("nope"), nullptr);
}

TEST(Reports, LemmaSuitePasses) {
    Report r = scenario_lemmas();
    EXPECT_EQ(r.outcome, Outcome::Pass);
    EXPECT_EQ(r.certificates_failed, 0u);
}
