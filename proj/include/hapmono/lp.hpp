#ifndef HAPMONO_LP_HPP
#define HAPMONO_LP_HPP

// Exact two-phase simplex over GMP rationals for
//
//     minimize c.x  subject to  A x = b,  x >= 0.
//
// Bland's rule guarantees termination.  Infeasibility comes with a Farkas
// vector y such that y.A >= 0 componentwise and y.b < 0.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hapmono/budget.hpp"

namespace hapmono {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

struct LinearProgram {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<Rational>> a;  // rows x cols
    std::vector<Rational> b;               // rows
    std::vector<Rational> c;               // cols; empty means pure feasibility

    LinearProgram() = default;
    LinearProgram(std::size_t m, std::size_t k)
        : rows(m), cols(k), a(m, std::vector<Rational>(k)), b(m) {}
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> x;       // Optimal: a basic optimal solution
    Rational value;                // Optimal: c.x
    std::vector<Rational> farkas;  // Infeasible: y with y.A >= 0, y.b < 0
};

namespace detail {

class Tableau {
public:
    // Columns: structural 0..k-1, artificial k..k+m-1, then the rhs.
    Tableau(const LinearProgram& lp, Budget& budget)
        : m_(lp.rows), k_(lp.cols), budget_(budget), sign_(m_, 1) {
        t_.assign(m_, std::vector<Rational>(k_ + m_ + 1));
        for (std::size_t i = 0; i < m_; ++i) {
            if (lp.b[i] < 0) sign_[i] = -1;
            for (std::size_t j = 0; j < k_; ++j)
                if (lp.a[i][j] != 0) t_[i][j] = sign_[i] * lp.a[i][j];
            t_[i][k_ + i] = 1;
            t_[i][k_ + m_] = sign_[i] * lp.b[i];
        }
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) basis_[i] = k_ + i;
        blocked_.assign(k_ + m_, false);
    }

    // Phase 1: minimize the sum of artificials.  Returns true if feasible,
    // otherwise fills `farkas`.
    bool phase1(std::vector<Rational>& farkas) {
        std::vector<Rational> cost(k_ + m_);
        for (std::size_t i = 0; i < m_; ++i) cost[k_ + i] = 1;
        set_objective(cost);
        run();
        if (obj_[k_ + m_] == 0) {
            // rhs cell holds -(objective value)
            drive_out_artificials();
            for (std::size_t j = k_; j < k_ + m_; ++j) blocked_[j] = true;
            return true;
        }
        // Duals for the sign-flipped system: y_i = cost(a_i) - rc(a_i).
        farkas.assign(m_, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            Rational y = 1 - obj_[k_ + i];
            farkas[i] = -sign_[i] * y;
        }
        return false;
    }

    // Phase 2 on the structural objective; false when unbounded.
    bool phase2(const std::vector<Rational>& c) {
        std::vector<Rational> cost(k_ + m_);
        for (std::size_t j = 0; j < k_ && j < c.size(); ++j) cost[j] = c[j];
        set_objective(cost);
        return run();
    }

    std::vector<Rational> solution() const {
        std::vector<Rational> x(k_);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < k_) x[basis_[i]] = t_[i][k_ + m_];
        return x;
    }

private:
    void set_objective(const std::vector<Rational>& cost) {
        obj_.assign(k_ + m_ + 1, 0);
        for (std::size_t j = 0; j < k_ + m_; ++j) obj_[j] = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= k_ + m_; ++j)
                if (t_[i][j] != 0) obj_[j] -= cb * t_[i][j];
        }
    }

    void pivot(std::size_t r, std::size_t col) {
        budget_.spend(1, "simplex");
        std::vector<Rational>& pr = t_[r];
        Rational inv = 1 / pr[col];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j <= k_ + m_; ++j)
            if (pr[j] != 0) {
                pr[j] *= inv;
                nz.push_back(j);
            }
        auto eliminate = [&](std::vector<Rational>& row) {
            if (row[col] == 0) return;
            Rational f = row[col];
            for (std::size_t j : nz) row[j] -= f * pr[j];
        };
        for (std::size_t i = 0; i < m_; ++i)
            if (i != r) eliminate(t_[i]);
        eliminate(obj_);
        basis_[r] = col;
    }

    // Bland's rule.  Returns false on unboundedness.
    bool run() {
        while (true) {
            std::size_t enter = k_ + m_;
            for (std::size_t j = 0; j < k_ + m_; ++j)
                if (!blocked_[j] && obj_[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == k_ + m_) return true;
            std::size_t leave = m_;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_[i][enter] <= 0) continue;
                Rational ratio = t_[i][k_ + m_] / t_[i][enter];
                if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < k_) continue;
            for (std::size_t j = 0; j < k_; ++j)
                if (t_[i][j] != 0) {
                    pivot(i, j);
                    break;
                }
            // Otherwise the row is redundant; its artificial stays basic at 0
            // and no structural column can ever touch the row again.
        }
    }

    std::size_t m_, k_;
    Budget& budget_;
    std::vector<int> sign_;
    std::vector<std::vector<Rational>> t_;
    std::vector<Rational> obj_;
    std::vector<std::size_t> basis_;
    std::vector<bool> blocked_;
};

}  // namespace detail

inline LpResult solve_lp(const LinearProgram& lp, Budget budget = Budget::unlimited()) {
    detail::Tableau tab(lp, budget);
    LpResult res;
    if (!tab.phase1(res.farkas)) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    if (!lp.c.empty() && !tab.phase2(lp.c)) {
        res.status = LpStatus::Unbounded;
        return res;
    }
    res.status = LpStatus::Optimal;
    res.x = tab.solution();
    res.value = 0;
    for (std::size_t j = 0; j < lp.c.size(); ++j) res.value += lp.c[j] * res.x[j];
    return res;
}

// Exact re-checks, independent of the solver.
inline bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
    if (x.size() != lp.cols) return false;
    for (const Rational& v : x)
        if (v < 0) return false;
    for (std::size_t i = 0; i < lp.rows; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < lp.cols; ++j)
            if (lp.a[i][j] != 0) s += lp.a[i][j] * x[j];
        if (s != lp.b[i]) return false;
    }
    return true;
}

inline bool is_farkas_certificate(const LinearProgram& lp, const std::vector<Rational>& y) {
    if (y.size() != lp.rows) return false;
    for (std::size_t j = 0; j < lp.cols; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < lp.rows; ++i)
            if (lp.a[i][j] != 0) s += y[i] * lp.a[i][j];
        if (s < 0) return false;
    }
    Rational s = 0;
    for (std::size_t i = 0; i < lp.rows; ++i) s += y[i] * lp.b[i];
    return s < 0;
}

}  // namespace hapmono

#endif
