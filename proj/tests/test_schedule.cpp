#include <gtest/gtest.h>

#include <random>

#include "hapmono/schedule.hpp"

using namespace hapmono;

namespace {

// Crossing perfect matchings of g by plain recursion on the lowest free vertex.
std::vector<std::vector<Pair>> crossing_pms(const RegularGraph& g, const EqualPartition& c) {
    std::vector<std::vector<Pair>> out;
    std::vector<Pair> cur;
    const int n = g.vertex_count();
    auto rec = [&](auto&& self, Mask used) -> void {
        if (std::popcount(used) == n) {
            out.push_back(cur);
            return;
        }
        int a = std::countr_one(used);
        for (int b = 0; b < n; ++b) {
            if (b == a || (used >> b & 1) || !g.has_edge(a, b) || !c.crosses(a, b)) continue;
            cur.emplace_back(a, b);
            self(self, used | Mask{1} << a | Mask{1} << b);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Schedule exists iff some choice of one crossing matching per day uses
// every edge once.
bool brute_schedule(const RegularGraph& g, const HapTable& hap) {
    std::vector<std::vector<std::vector<Pair>>> opts;
    for (const auto& c : hap.days) opts.push_back(crossing_pms(g, c));
    std::map<Pair, int> used;
    auto rec = [&](auto&& self, std::size_t d) -> bool {
        if (d == opts.size()) {
            for (const Pair& p : g.edges())
                if (used[p] != 1) return false;
            return true;
        }
        for (const auto& m : opts[d]) {
            bool clash = false;
            for (const Pair& p : m) clash = clash || used[p] > 0;
            if (clash) continue;
            for (const Pair& p : m) ++used[p];
            bool ok = self(self, d + 1);
            for (const Pair& p : m) --used[p];
            if (ok) return true;
        }
        return false;
    };
    return rec(rec, 0);
}

HapTable table_one() { return HapTable::from_rows({"HHAA", "HAAH", "AHAH"}); }

}  // namespace

TEST(HapTable, ParseFormatRoundTrip) {
    HapTable h = table_one();
    EXPECT_EQ(parse_hap(format_hap(h)), h);
    EXPECT_THROW(parse_hap("hap 4 2\nHHAA\n"), parse_error);
    EXPECT_THROW(HapTable::from_rows({"HHA"}), invalid_input);
    EXPECT_THROW(HapTable::from_rows({"HHAX"}), invalid_input);
}

TEST(HapTable, VectorRoundTrip) {
    HapTable h = table_one();
    ProblemVector v = vector_of(complete_graph(4), h);
    EXPECT_TRUE(is_problem_vector(v).ok);
    EXPECT_EQ(v.ha_sum(), 3);
    HapTable back = hap_of(v);
    EXPECT_EQ(back.day_count(), 3);
    EXPECT_EQ(vector_of(complete_graph(4), back), v);
}

TEST(Schedule, TableOneHasTheStatedSchedule) {
    const auto g = complete_graph(4);
    Schedule stated = {{{0, 2}, {1, 3}}, {{0, 1}, {2, 3}}, {{0, 3}, {1, 2}}};
    EXPECT_TRUE(check_schedule(g, table_one(), stated).ok);
    Schedule swapped = {stated[1], stated[0], stated[2]};
    EXPECT_FALSE(check_schedule(g, table_one(), swapped).ok);
    ScheduleResult r = find_integral_schedule(g, table_one());
    ASSERT_EQ(r.status, SearchStatus::Found);
    EXPECT_TRUE(check_schedule(g, table_one(), r.schedule).ok);
    EXPECT_EQ(parse_schedule(format_schedule(r.schedule)), r.schedule);
}

TEST(Schedule, DayCountMustMatchDegree) {
    EXPECT_THROW(find_integral_schedule(complete_graph(4), HapTable::from_rows({"HHAA", "HAHA"})), day_count_mismatch);
}

TEST(Schedule, AgreesWithBruteForceOnK6) {
    const auto g = complete_graph(6);
    auto parts = enumerate_partitions(TeamSet(6));
    std::mt19937 rng(5);
    int found = 0, none = 0;
    for (int trial = 0; trial < 150; ++trial) {
        std::vector<EqualPartition> days;
        for (int d = 0; d < 5; ++d) days.push_back(parts[rng() % parts.size()]);
        HapTable hap(6, days);
        ScheduleResult r = find_integral_schedule(g, hap);
        ASSERT_NE(r.status, SearchStatus::Undecided);
        EXPECT_EQ(r.status == SearchStatus::Found, brute_schedule(g, hap));
        if (r.status == SearchStatus::Found) {
            EXPECT_TRUE(check_schedule(g, hap, r.schedule).ok);
            ++found;
        } else {
            ++none;
        }
    }
    EXPECT_GT(found, 0);
    EXPECT_GT(none, 0);
}

TEST(Schedule, DisjointSystemMatchesScheduleExistence) {
    const auto g = complete_graph(6);
    auto parts = enumerate_partitions(TeamSet(6));
    std::mt19937 rng(9);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<EqualPartition> days;
        for (int d = 0; d < 5; ++d) days.push_back(parts[rng() % parts.size()]);
        HapTable hap(6, days);
        bool sys = has_disjoint_system(day_candidates(g, hap), 5);
        EXPECT_EQ(sys, brute_schedule(g, hap));
    }
}

TEST(Polytope, TableOneIsFeasibleAndSchedulePointSatisfies) {
    const auto g = complete_graph(4);
    PolytopeInstance p = build_polytope(g, table_one());
    FractionalResult fr = fractional_feasible(p);
    ASSERT_TRUE(fr.feasible);
    EXPECT_TRUE(satisfies(p.lp, fr.point));
    ScheduleResult r = find_integral_schedule(g, table_one());
    auto x = schedule_point(p, r.schedule);
    EXPECT_TRUE(satisfies(p.lp, x));
    EXPECT_TRUE(is_integral(x));
}

TEST(Polytope, InfeasibleTableHasFarkas) {
    // the same partition every day: the pairs inside a side never play
    const auto g = complete_graph(4);
    HapTable h = HapTable::from_rows({"HHAA", "HHAA", "HHAA"});
    PolytopeInstance p = build_polytope(g, h);
    FractionalResult fr = fractional_feasible(p);
    ASSERT_FALSE(fr.feasible);
    EXPECT_TRUE(is_farkas_certificate(p.lp, fr.farkas));
}

TEST(DoubleCover, TableOne) {
    const auto g = complete_graph(4);
    ProblemVector v = vector_of(g, table_one());
    DoubleCoverResult dc = find_double_cover(v);
    ASSERT_EQ(dc.status, SearchStatus::Found);
    EXPECT_TRUE(verify_double_cover(v, dc.generators));
    EXPECT_EQ(dc.generators.size(), 6u);
    auto broken = dc.generators;
    broken.pop_back();
    EXPECT_FALSE(verify_double_cover(v, broken));
}

TEST(Budget, ExhaustionIsUndecided) {
    const auto g = complete_graph(6);
    auto parts = enumerate_partitions(TeamSet(6));
    HapTable hap(6, {parts[0], parts[1], parts[2], parts[3], parts[4]});
    ScheduleResult r = find_integral_schedule(g, hap, Budget::nodes(0));
    EXPECT_EQ(r.status, SearchStatus::Undecided);
}
