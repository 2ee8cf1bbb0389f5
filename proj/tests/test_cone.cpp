#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "hapmono/cone.hpp"

using namespace hapmono;

namespace {

// Integral membership by trying every multiset of generators with the
// right number per partition.
bool brute_monoid(const ProblemVector& v, const std::vector<PMGenerator>& gens) {
    std::vector<PMGenerator> usable;
    for (const auto& g : gens) {
        bool ok = v.ha(g.partition()) > 0;
        for (const Pair& p : g.matching()) ok = ok && v.edge(p) > 0;
        if (ok) usable.push_back(g);
    }
    ProblemVector acc(v.teams());
    auto rec = [&](auto&& self, std::size_t from) -> bool {
        if (acc == v) return true;
        if (!acc.leq(v)) return false;
        for (std::size_t i = from; i < usable.size(); ++i) {
            ProblemVector keep = acc;
            acc += usable[i].to_vector();
            bool ok = acc.leq(v) && self(self, i);
            acc = keep;
            if (ok) return true;
        }
        return false;
    };
    return rec(rec, 0);
}

ProblemVector random_vector(int n, std::mt19937& rng) {
    auto parts = enumerate_partitions(TeamSet(n));
    auto pairs = enumerate_pairs(TeamSet(n));
    ProblemVector v(n);
    for (const auto& p : pairs)
        if (rng() % 3) v.set_edge(p, 1);
    const int days = static_cast<int>(v.edge_sum()) / (n / 2);
    for (int d = 0; d < days; ++d) v.add_ha(parts[rng() % parts.size()], 1);
    return v;
}

}  // namespace

TEST(Cone, GeneratorsAreMembers) {
    auto gens = enumerate_pm(TeamSet(4));
    for (const auto& g : gens) {
        ConeResult r = cone_member(g.to_vector(), gens);
        ASSERT_TRUE(r.member);
        EXPECT_TRUE(verify_decomposition(g.to_vector(), r.decomposition));
    }
    EXPECT_TRUE(cone_member(ProblemVector(4), gens).member);
}

TEST(Cone, CertificatesOnRandomVectors) {
    std::mt19937 rng(13);
    auto gens = enumerate_pm(TeamSet(6));
    int in = 0, out = 0;
    for (int trial = 0; trial < 80; ++trial) {
        ProblemVector v = random_vector(6, rng);
        if (v.is_zero()) continue;
        ConeResult r = cone_member(v, gens);
        if (r.member) {
            EXPECT_TRUE(verify_decomposition(v, r.decomposition));
            ++in;
        } else {
            EXPECT_TRUE(verify_separation(v, gens, r.hyperplane));
            ++out;
        }
    }
    EXPECT_GT(out, 0);
}

TEST(Cone, DecompositionVerifierRejectsTampering) {
    auto gens = enumerate_pm(TeamSet(4));
    ProblemVector v = gens[0].to_vector() + gens[5].to_vector();
    ConeResult r = cone_member(v, gens);
    ASSERT_TRUE(r.member);
    auto bad = r.decomposition;
    bad.terms.front().coeff += 1;
    EXPECT_FALSE(verify_decomposition(v, bad));
    bad = r.decomposition;
    bad.scale = 0;
    EXPECT_FALSE(verify_decomposition(v, bad));
}

TEST(Monoid, AgreesWithBruteForce) {
    std::mt19937 rng(17);
    auto gens = enumerate_pm(TeamSet(6));
    int found = 0;
    for (int trial = 0; trial < 60; ++trial) {
        ProblemVector v = random_vector(6, rng);
        if (trial % 2) {
            // a sum of edge-disjoint generators is a member by construction
            v = ProblemVector(6);
            std::vector<PMGenerator> pool = gens;
            std::shuffle(pool.begin(), pool.end(), rng);
            for (const auto& g : pool) {
                bool free = true;
                for (const Pair& p : g.matching()) free = free && v.edge(p) == 0;
                if (free) v += g.to_vector();
            }
        }
        MonoidResult r = monoid_member(v, gens);
        ASSERT_NE(r.status, SearchStatus::Undecided);
        EXPECT_EQ(r.status == SearchStatus::Found, brute_monoid(v, gens)) << format_vector(v);
        if (r.status == SearchStatus::Found) {
            EXPECT_TRUE(verify_decomposition(v, r.decomposition));
            ++found;
        }
    }
    EXPECT_GT(found, 0);
}

TEST(Monoid, RestrictedGeneratorsRespectSupport) {
    // 4-cycle: decompositions must not borrow the diagonals
    auto c4 = RegularGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    auto gens = restricted_generators(c4);
    for (const auto& g : gens)
        for (const Pair& p : g.matching()) EXPECT_TRUE(c4.has_edge(p));
    ProblemVector v = c4.indicator();
    v.set_ha(EqualPartition(4, 0b0011), 1);
    v.set_ha(EqualPartition(4, 0b0101), 1);
    MonoidResult r = monoid_member(v, enumerate_pm(TeamSet(4)));
    ASSERT_EQ(r.status, SearchStatus::Found);
    EXPECT_TRUE(verify_decomposition(v, r.decomposition));
}

TEST(Monoid, RejectsLargeEdgeComponents) {
    auto gens = enumerate_pm(TeamSet(4));
    ProblemVector v = gens[0].to_vector().scaled(2);
    EXPECT_THROW(monoid_member(v, gens), precondition_violated);
}

TEST(HilbertBasis, FourTeamsHasNoAdditional) {
    auto gens = enumerate_pm(TeamSet(4));
    auto hb = hilbert_basis(gens);
    ASSERT_TRUE(hb.complete);
    EXPECT_EQ(hb.basis.size(), 6u);
    EXPECT_TRUE(hb.additional.empty());
    EXPECT_THROW(hilbert_basis({}), invalid_input);
}

TEST(HilbertBasis, FormatRoundTrip) {
    auto hb = hilbert_basis(enumerate_pm(TeamSet(4)));
    std::size_t add = 99;
    auto back = parse_hilbert(format_hilbert(hb), &add);
    EXPECT_EQ(back, hb.basis);
    EXPECT_EQ(add, 0u);
}

TEST(Decomposition, FormatRoundTrip) {
    auto gens = enumerate_pm(TeamSet(6));
    ProblemVector v = gens[2].to_vector() + gens[40].to_vector();
    ConeResult r = cone_member(v, gens);
    ASSERT_TRUE(r.member);
    auto back = parse_decomposition(format_decomposition(r.decomposition), 6);
    EXPECT_TRUE(verify_decomposition(v, back));
    EXPECT_EQ(back.scale, r.decomposition.scale);
}
