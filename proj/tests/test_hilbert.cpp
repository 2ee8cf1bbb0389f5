#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hapmono/hilbert.hpp"
#include "hapmono/lp.hpp"

using namespace hapmono;

namespace {

bool in_cone(const std::vector<IntVec>& gens, const IntVec& x) {
    LinearProgram lp(x.size(), gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < x.size(); ++i) lp.a[i][j] = gens[j][i];
    for (std::size_t i = 0; i < x.size(); ++i) lp.b[i] = x[i];
    return solve_lp(lp).status == LpStatus::Optimal;
}

// Irreducible lattice points of the cone inside the box below the sum of
// the generators, which contains every parallelepiped point.
std::set<IntVec> brute_basis(const std::vector<IntVec>& gens) {
    const std::size_t d = gens.front().size();
    IntVec top(d, 0);
    for (const auto& g : gens)
        for (std::size_t i = 0; i < d; ++i) top[i] += g[i];
    std::vector<IntVec> members;
    IntVec x(d, 0);
    while (true) {
        if (std::any_of(x.begin(), x.end(), [](auto v) { return v != 0; }) && in_cone(gens, x)) members.push_back(x);
        std::size_t i = 0;
        while (i < d && x[i] == top[i]) x[i++] = 0;
        if (i == d) break;
        ++x[i];
    }
    std::set<IntVec> all(members.begin(), members.end()), out;
    for (const auto& m : members) {
        bool reducible = false;
        for (const auto& y : members) {
            if (y == m) continue;
            IntVec z(d);
            bool nonneg = true;
            for (std::size_t i = 0; i < d; ++i) {
                z[i] = m[i] - y[i];
                nonneg = nonneg && z[i] >= 0;
            }
            if (nonneg && all.count(z)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) out.insert(m);
    }
    return out;
}

}  // namespace

TEST(Hilbert, ClassicTwoDimensional) {
    // cone over (1,0) and (1,3): basis (1,0),(1,1),(1,2),(1,3)
    auto hc = compute_hilbert_basis({{1, 0}, {1, 3}}, {1, 1});
    ASSERT_TRUE(hc.complete);
    std::vector<IntVec> want = {{1, 0}, {1, 1}, {1, 2}, {1, 3}};
    EXPECT_EQ(hc.basis, want);
}

TEST(Hilbert, RandomConesAgainstBruteForce) {
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> coef(0, 2);
    int checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t d = 3 + trial % 2;
        std::vector<IntVec> gens;
        for (int k = 0; k < 4 + trial % 2; ++k) {
            IntVec g(d);
            for (auto& x : g) x = coef(rng);
            if (std::all_of(g.begin(), g.end(), [](auto v) { return v == 0; })) g[0] = 1;
            gens.push_back(g);
        }
        auto hc = compute_hilbert_basis(gens, IntVec(d, 1));
        ASSERT_TRUE(hc.complete);
        std::set<IntVec> got(hc.basis.begin(), hc.basis.end());
        EXPECT_EQ(got, brute_basis(gens)) << "trial " << trial;
        ++checked;
    }
    EXPECT_EQ(checked, 25);
}

TEST(Hilbert, UpperBoundKeepsExactlyTheSmallElements) {
    std::vector<IntVec> gens = {{1, 0, 2}, {0, 1, 2}, {1, 1, 0}, {2, 0, 1}};
    auto full = compute_hilbert_basis(gens, {1, 1, 1});
    auto cut = compute_hilbert_basis(gens, {1, 1, 1}, Budget::unlimited(), IntVec{1, 1, 100});
    ASSERT_TRUE(full.complete && cut.complete);
    std::vector<IntVec> want;
    for (const auto& v : full.basis)
        if (v[0] <= 1 && v[1] <= 1) want.push_back(v);
    EXPECT_EQ(cut.basis, want);
}

TEST(Hilbert, RejectsNegativeGenerators) {
    EXPECT_THROW(compute_hilbert_basis({{1, -1}}, {1, 1}), invalid_input);
    EXPECT_THROW(compute_hilbert_basis({{1, 1}}, {1}), dimension_mismatch);
}

TEST(Hilbert, BudgetExhaustionIsIncomplete) {
    std::vector<IntVec> gens = {{1, 0, 0, 5}, {0, 1, 0, 7}, {0, 0, 1, 3}, {1, 1, 1, 1}};
    HilbertComputation hc;
    try {
        hc = compute_hilbert_basis(gens, {1, 1, 1, 0}, Budget::nodes(1));
    } catch (const budget_exceeded&) {
        hc.complete = false;
    }
    EXPECT_FALSE(hc.complete);
}
