#include <gtest/gtest.h>

#include <optional>
#include <random>

#include "hapmono/lp.hpp"

using namespace hapmono;

namespace {

// Solves the square system B x = b by Gauss-Jordan; nullopt if singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m, std::vector<Rational> b) {
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(m[p], m[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (std::size_t k = 0; k < n; ++k) m[r][k] -= f * m[c][k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t r = 0; r < n; ++r) b[r] /= m[r][r];
    return b;
}

// Minimum over all basic feasible solutions (rows assumed independent).
std::optional<Rational> brute_min(const LinearProgram& lp) {
    const std::size_t m = lp.rows, k = lp.cols;
    std::optional<Rational> best;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != m) continue;
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < k; ++j)
            if (mask >> j & 1) cols.push_back(j);
        std::vector<std::vector<Rational>> sq(m, std::vector<Rational>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) sq[i][j] = lp.a[i][cols[j]];
        auto xb = solve_square(sq, lp.b);
        if (!xb) continue;
        bool feasible = true;
        Rational v = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if ((*xb)[j] < 0) feasible = false;
            v += lp.c[cols[j]] * (*xb)[j];
        }
        if (feasible && (!best || v < *best)) best = v;
    }
    return best;
}

}  // namespace

TEST(Simplex, TinyOptimum) {
    // min -x0 - x1  s.t. x0 + x2 = 2, x1 + x3 = 3
    LinearProgram lp(2, 4);
    lp.a[0][0] = 1;
    lp.a[0][2] = 1;
    lp.a[1][1] = 1;
    lp.a[1][3] = 1;
    lp.b = {2, 3};
    lp.c = {-1, -1, 0, 0};
    LpResult r = solve_lp(lp);
    ASSERT_EQ(r.status, LpStatus::Optimal);
    EXPECT_EQ(r.value, -5);
    EXPECT_TRUE(satisfies(lp, r.x));
}

TEST(Simplex, InfeasibleHasFarkas) {
    // x0 + x1 = 1 and x0 + x1 = 2
    LinearProgram lp(2, 2);
    lp.a = {{1, 1}, {1, 1}};
    lp.b = {1, 2};
    LpResult r = solve_lp(lp);
    ASSERT_EQ(r.status, LpStatus::Infeasible);
    EXPECT_TRUE(is_farkas_certificate(lp, r.farkas));
    EXPECT_FALSE(is_farkas_certificate(lp, {Rational(1), Rational(1)}));
}

TEST(Simplex, Unbounded) {
    LinearProgram lp(1, 2);
    lp.a = {{1, -1}};
    lp.b = {0};
    lp.c = {-1, 0};
    EXPECT_EQ(solve_lp(lp).status, LpStatus::Unbounded);
}

TEST(Simplex, RandomAgainstBasisEnumeration) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-3, 4);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 2 + trial % 2, k = 5;
        LinearProgram lp(m, k);
        for (auto& row : lp.a)
            for (auto& x : row) x = coef(rng);
        for (auto& x : lp.b) x = coef(rng);
        lp.c.resize(k);
        // keep it bounded: nonnegative costs
        for (auto& x : lp.c) x = std::abs(coef(rng));
        // skip rank-deficient systems; the oracle assumes independent rows
        bool full = false;
        for (unsigned mask = 0; mask < 32 && !full; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != m) continue;
            std::vector<std::vector<Rational>> sq(m, std::vector<Rational>(m));
            std::size_t col = 0;
            for (std::size_t j = 0; j < k; ++j)
                if (mask >> j & 1) {
                    for (std::size_t i = 0; i < m; ++i) sq[i][col] = lp.a[i][j];
                    ++col;
                }
            full = solve_square(sq, std::vector<Rational>(m, 0)).has_value();
        }
        if (!full) continue;
        auto expect = brute_min(lp);
        LpResult r = solve_lp(lp);
        if (expect) {
            ASSERT_EQ(r.status, LpStatus::Optimal);
            EXPECT_EQ(r.value, *expect);
            EXPECT_TRUE(satisfies(lp, r.x));
        } else {
            ASSERT_EQ(r.status, LpStatus::Infeasible);
            EXPECT_TRUE(is_farkas_certificate(lp, r.farkas));
        }
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(Simplex, BudgetExhaustionThrows) {
    LinearProgram lp(2, 4);
    lp.a = {{1, 1, 1, 0}, {1, -1, 0, 1}};
    lp.b = {4, 1};
    lp.c = {-1, -2, 0, 0};
    EXPECT_THROW(solve_lp(lp, Budget::nodes(0)), budget_exceeded);
}
