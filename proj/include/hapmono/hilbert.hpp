#ifndef HAPMONO_HILBERT_HPP
#define HAPMONO_HILBERT_HPP

// Hilbert basis of the monoid  cone(G) ∩ Z^d  for a finite set G of
// nonnegative integer vectors, by the primal algorithm:
//
//   1. pass to the lattice L = span(G) ∩ Z^d, where the cone is full
//      dimensional;
//   2. add the generators one by one, updating the support hyperplanes;
//      each generator that sees a facet from height > 1 spans a pyramid
//      over it, and only those pyramids are triangulated (a height-1
//      pyramid adds no lattice points that are not sums of older ones);
//   3. collect the lattice points of every simplicial parallelepiped;
//   4. keep the irreducible ones.
//
// An optional componentwise upper bound restricts the output to basis
// elements below the bound.  Such a set of vectors is closed under taking
// summands inside the orthant, so the restricted output is exactly the
// basis elements under the bound.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <bit>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hapmono/budget.hpp"
#include "hapmono/errors.hpp"

namespace hapmono {

using IntVec = std::vector<std::int64_t>;

struct HilbertStats {
    std::size_t rank = 0;
    std::size_t simplices = 0;
    std::size_t support_hyperplanes = 0;
    std::size_t parallelepiped_points = 0;
    std::size_t candidates = 0;
    std::size_t pyramids = 0;  // pyramids of height > 1, the only ones triangulated
};

struct HilbertComputation {
    bool complete = false;
    std::vector<IntVec> basis;  // sorted lexicographically
    HilbertStats stats;
};

namespace detail {

inline std::int64_t to_i64(const mpz_class& z) {
    if (!z.fits_slong_p()) throw budget_exceeded("integer overflow in lattice arithmetic");
    return z.get_si();
}

inline std::int64_t narrow(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw budget_exceeded("integer overflow in simplex update");
    return static_cast<std::int64_t>(v);
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

// Integer kernel basis of the m x d matrix `m` (rows), via unimodular
// column operations.  Returns d - rank columns, each of length d.
inline std::vector<std::vector<mpz_class>> integer_kernel(std::vector<std::vector<mpz_class>> m,
                                                          std::size_t d) {
    std::vector<std::vector<mpz_class>> u(d, std::vector<mpz_class>(d, 0));
    for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;
    auto col_op = [&](std::size_t a, std::size_t b, const mpz_class& p, const mpz_class& q,
                      const mpz_class& r, const mpz_class& s) {
        // (col_a, col_b) <- (p col_a + q col_b, r col_a + s col_b)
        for (auto& row : m) {
            mpz_class x = p * row[a] + q * row[b], y = r * row[a] + s * row[b];
            row[a] = x;
            row[b] = y;
        }
        for (auto& row : u) {
            mpz_class x = p * row[a] + q * row[b], y = r * row[a] + s * row[b];
            row[a] = x;
            row[b] = y;
        }
    };
    std::size_t piv = 0;
    for (std::size_t i = 0; i < m.size() && piv < d; ++i) {
        for (std::size_t j = piv + 1; j < d; ++j) {
            if (m[i][j] == 0) continue;
            if (m[i][piv] == 0) {
                col_op(piv, j, 0, 1, 1, 0);
                continue;
            }
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m[i][piv].get_mpz_t(),
                       m[i][j].get_mpz_t());
            mpz_class a = m[i][piv] / g, b = m[i][j] / g;
            // [s  -b]
            // [t   a]  has determinant s a + t b = 1.
            col_op(piv, j, s, t, -b, a);
        }
        if (m[i][piv] != 0) ++piv;
    }
    std::vector<std::vector<mpz_class>> ker;
    for (std::size_t j = piv; j < d; ++j) {
        std::vector<mpz_class> c(d);
        for (std::size_t r = 0; r < d; ++r) c[r] = u[r][j];
        ker.push_back(std::move(c));
    }
    return ker;
}

// Rational nullspace of the rows of `a` (k x d), scaled to integer rows.
inline std::vector<std::vector<mpz_class>> rational_nullspace(const std::vector<IntVec>& a,
                                                              std::size_t d) {
    std::vector<std::vector<mpq_class>> m;
    for (const auto& row : a) {
        std::vector<mpq_class> r(d);
        for (std::size_t j = 0; j < d; ++j) r[j] = row[j];
        m.push_back(std::move(r));
    }
    std::vector<std::size_t> pivcol;
    std::size_t row = 0;
    for (std::size_t c = 0; c < d && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        mpq_class inv = 1 / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][c] == 0) continue;
            mpq_class f = m[i][c];
            for (std::size_t j = c; j < d; ++j) m[i][j] -= f * m[row][j];
        }
        pivcol.push_back(c);
        ++row;
    }
    std::vector<bool> is_piv(d, false);
    for (auto c : pivcol) is_piv[c] = true;
    std::vector<std::vector<mpz_class>> out;
    for (std::size_t f = 0; f < d; ++f) {
        if (is_piv[f]) continue;
        std::vector<mpq_class> y(d);
        y[f] = 1;
        for (std::size_t i = 0; i < pivcol.size(); ++i) y[pivcol[i]] = -m[i][f];
        mpz_class l = 1;
        for (auto& q : y) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        std::vector<mpz_class> z(d);
        for (std::size_t j = 0; j < d; ++j) z[j] = mpz_class(y[j] * l);
        out.push_back(std::move(z));
    }
    return out;
}

// Basis of a saturated lattice in column echelon form: column j has its
// first nonzero entry at row pivot[j] (> 0), pivots strictly increasing.
struct LatticeBasis {
    std::size_t dim = 0;   // ambient
    std::size_t rank = 0;
    std::vector<IntVec> cols;  // rank columns of length dim
    std::vector<std::size_t> pivot;

    IntVec coordinates(const IntVec& x) const {
        IntVec c(rank);
        for (std::size_t j = 0; j < rank; ++j) {
            __int128 rest = x[pivot[j]];
            for (std::size_t i = 0; i < j; ++i) rest -= static_cast<__int128>(c[i]) * cols[i][pivot[j]];
            if (rest % cols[j][pivot[j]] != 0) throw error("vector is not in the lattice");
            c[j] = narrow(rest / cols[j][pivot[j]]);
        }
        return c;
    }

    IntVec embed(const IntVec& c) const {
        std::vector<__int128> acc(dim, 0);
        for (std::size_t j = 0; j < rank; ++j)
            if (c[j] != 0)
                for (std::size_t r = pivot[j]; r < dim; ++r) acc[r] += static_cast<__int128>(c[j]) * cols[j][r];
        IntVec x(dim);
        for (std::size_t r = 0; r < dim; ++r) x[r] = narrow(acc[r]);
        return x;
    }
};

inline LatticeBasis saturated_lattice(const std::vector<IntVec>& gens, std::size_t d) {
    auto ortho = rational_nullspace(gens, d);
    std::vector<std::vector<mpz_class>> basis;
    if (ortho.empty()) {
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<mpz_class> e(d, 0);
            e[j] = 1;
            basis.push_back(std::move(e));
        }
    } else {
        basis = integer_kernel(ortho, d);
    }
    // Column echelon form with reduced off-pivot entries.
    const std::size_t r = basis.size();
    std::size_t done = 0;
    std::vector<std::size_t> piv;
    for (std::size_t row = 0; row < d && done < r; ++row) {
        for (std::size_t j = done + 1; j < r; ++j) {
            while (basis[j][row] != 0) {
                if (basis[done][row] == 0) {
                    std::swap(basis[done], basis[j]);
                    continue;
                }
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), basis[j][row].get_mpz_t(), basis[done][row].get_mpz_t());
                for (std::size_t t = 0; t < d; ++t) basis[j][t] -= q * basis[done][t];
                if (basis[j][row] != 0) std::swap(basis[done], basis[j]);
            }
        }
        if (basis[done][row] == 0) continue;
        if (basis[done][row] < 0)
            for (auto& x : basis[done]) x = -x;
        for (std::size_t i = 0; i < done; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), basis[i][row].get_mpz_t(), basis[done][row].get_mpz_t());
            if (q != 0)
                for (std::size_t t = 0; t < d; ++t) basis[i][t] -= q * basis[done][t];
        }
        piv.push_back(row);
        ++done;
    }
    LatticeBasis lb;
    lb.dim = d;
    lb.rank = r;
    lb.pivot = piv;
    for (auto& c : basis) {
        IntVec v(d);
        for (std::size_t t = 0; t < d; ++t) v[t] = to_i64(c[t]);
        lb.cols.push_back(std::move(v));
    }
    return lb;
}

// Simplicial cone on generator indices `verts` with integer normals n_i
// (row i at normals[i*r]) satisfying n_i . s_j = det * delta_ij.
struct Simplex {
    std::vector<int> verts;
    std::int64_t det = 0;
    IntVec normals;
};

struct BoundaryFacet {
    std::shared_ptr<Simplex> owner;
    int opposite = 0;  // facet = owner->verts without position `opposite`
};

inline std::int64_t dot(const std::int64_t* a, const IntVec& b) {
    __int128 s = 0;
    for (std::size_t i = 0; i < b.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
    return narrow(s);
}

inline std::shared_ptr<Simplex> initial_simplex(const std::vector<IntVec>& g, const std::vector<int>& verts) {
    const std::size_t r = verts.size();
    // Columns are the generators; invert exactly.
    std::vector<std::vector<mpq_class>> a(r, std::vector<mpq_class>(2 * r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) a[i][j] = g[verts[j]][i];
        a[i][r + i] = 1;
    }
    mpq_class det = 1;
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t p = c;
        while (a[p][c] == 0) ++p;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        mpq_class inv = 1 / a[c][c];
        for (auto& x : a[c]) x *= inv;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == c || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (std::size_t j = 0; j < 2 * r; ++j) a[i][j] -= f * a[c][j];
        }
    }
    mpq_class ad = abs(det);
    auto s = std::make_shared<Simplex>();
    s->verts = verts;
    s->det = to_i64(mpz_class(ad));
    s->normals.resize(r * r);
    // Inverse rows are the dual basis; scale by |det|.
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            mpq_class v = a[i][r + j] * ad;
            if (v.get_den() != 1) throw error("non-integral adjugate");
            s->normals[i * r + j] = to_i64(v.get_num());
        }
    return s;
}

// Replaces vertex u of s by generator g (which lies strictly beyond the
// facet opposite u).  mu = N_s g.
inline std::shared_ptr<Simplex> exchange(const Simplex& s, int u, int gi, const IntVec& mu) {
    const std::size_t r = s.verts.size();
    auto t = std::make_shared<Simplex>();
    t->verts = s.verts;
    t->verts[u] = gi;
    const std::int64_t mu_u = mu[u];
    t->det = -mu_u;
    t->normals.resize(r * r);
    const std::int64_t* nu = &s.normals[u * r];
    for (std::size_t i = 0; i < r; ++i) {
        std::int64_t* out = &t->normals[i * r];
        if (static_cast<int>(i) == u) {
            for (std::size_t j = 0; j < r; ++j) out[j] = -nu[j];
            continue;
        }
        const std::int64_t* ni = &s.normals[i * r];
        for (std::size_t j = 0; j < r; ++j) {
            __int128 v = -static_cast<__int128>(mu_u) * ni[j] + static_cast<__int128>(mu[i]) * nu[j];
            if (v % s.det != 0) throw error("inexact simplex update");
            out[j] = narrow(v / s.det);
        }
    }
    return t;
}

struct VecHash {
    std::size_t operator()(const IntVec& v) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : v) {
            h ^= static_cast<std::uint64_t>(x);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

// Placing triangulation of the cone over gl, starting from the independent
// generators `first`.  Every simplex is passed to `visit` exactly once.
template <class Visit>
void triangulate(const std::vector<IntVec>& gl, const std::vector<int>& first, Budget& budget, Visit&& visit) {
    const std::size_t r = first.size();
    std::vector<BoundaryFacet> boundary;
    {
        auto s0 = initial_simplex(gl, first);
        visit(s0);
        for (std::size_t i = 0; i < r; ++i) boundary.push_back({s0, static_cast<int>(i)});
    }
    std::vector<bool> placed(gl.size(), false);
    for (int i : first) placed[i] = true;

    struct Pending {
        std::shared_ptr<Simplex> s;
        int opp;
        int count;
    };
    const std::size_t words = (gl.size() + 63) / 64;
    for (std::size_t gi = 0; gi < gl.size(); ++gi) {
        if (placed[gi]) continue;
        const IntVec& x = gl[gi];
        std::vector<std::size_t> visible;
        for (std::size_t f = 0; f < boundary.size(); ++f) {
            const auto& bf = boundary[f];
            if (dot(&bf.owner->normals[bf.opposite * r], x) < 0) visible.push_back(f);
        }
        budget.spend(1 + boundary.size() / 64, "triangulation");
        placed[gi] = true;
        if (visible.empty()) continue;  // already inside
        // New facets keyed by their vertex set as a bitset over generators;
        // the ones created once lie on the new boundary.
        std::unordered_map<IntVec, Pending, VecHash> fresh;
        const Simplex* last_owner = nullptr;
        IntVec mu;
        IntVec key(words);
        for (std::size_t f : visible) {
            const auto& bf = boundary[f];
            if (bf.owner.get() != last_owner) {
                last_owner = bf.owner.get();
                mu.assign(r, 0);
                for (std::size_t k = 0; k < r; ++k) mu[k] = dot(&bf.owner->normals[k * r], x);
            }
            auto t = exchange(*bf.owner, bf.opposite, static_cast<int>(gi), mu);
            visit(t);
            budget.spend(r, "triangulation");
            std::fill(key.begin(), key.end(), 0);
            for (int v : t->verts) key[v / 64] |= std::int64_t{1} << (v % 64);
            for (std::size_t k = 0; k < r; ++k) {
                if (static_cast<int>(k) == bf.opposite) continue;
                const int v = t->verts[k];
                key[v / 64] &= ~(std::int64_t{1} << (v % 64));
                auto [it, ins] = fresh.try_emplace(key, Pending{t, static_cast<int>(k), 0});
                ++it->second.count;
                key[v / 64] |= std::int64_t{1} << (v % 64);
            }
        }
        std::vector<bool> drop(boundary.size(), false);
        for (std::size_t f : visible) drop[f] = true;
        std::vector<BoundaryFacet> next;
        next.reserve(boundary.size() + fresh.size());
        for (std::size_t f = 0; f < boundary.size(); ++f)
            if (!drop[f]) next.push_back(std::move(boundary[f]));
        for (auto& [k, p] : fresh)
            if (p.count == 1) next.push_back({p.s, p.opp});
        boundary = std::move(next);
    }

}

inline void make_primitive(IntVec& v) {
    std::int64_t g = 0;
    for (auto x : v) g = gcd64(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
}

// Greedy maximal linearly independent subset, at most `want` vectors.
inline std::vector<int> independent_subset(const std::vector<IntVec>& vs, std::size_t want) {
    std::vector<int> chosen;
    if (vs.empty()) return chosen;
    const std::size_t dim = vs.front().size();
    std::vector<std::vector<mpq_class>> ech;
    std::vector<std::size_t> pc;
    for (std::size_t i = 0; i < vs.size() && chosen.size() < want; ++i) {
        std::vector<mpq_class> v(vs[i].begin(), vs[i].end());
        for (std::size_t k = 0; k < ech.size(); ++k)
            if (v[pc[k]] != 0) {
                mpq_class f = v[pc[k]] / ech[k][pc[k]];
                for (std::size_t j = 0; j < dim; ++j) v[j] -= f * ech[k][j];
            }
        std::size_t p = 0;
        while (p < dim && v[p] == 0) ++p;
        if (p == dim) continue;
        ech.push_back(std::move(v));
        pc.push_back(p);
        chosen.push_back(static_cast<int>(i));
    }
    return chosen;
}

using Bits = IntVec;

inline bool test_bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
inline void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::int64_t{1} << (i % 64); }

struct Facet {
    IntVec normal;  // primitive, nonnegative on the cone
    Bits inc;       // generators lying on the facet
};

// The part of the cone added with `apex` over a facet of the cone built so
// far, when the apex sits at lattice height > 1.  Height-1 pyramids add no
// lattice points beyond (face points) + N apex, so they are never recorded.
struct Pyramid {
    int apex = 0;
    IntVec normal;
    Bits base;
};

// Beneath-beyond over gl in order, keeping support hyperplanes with their
// incidences (double description with the combinatorial adjacency test).
inline std::vector<Facet> incremental_facets(const std::vector<IntVec>& gl, const std::shared_ptr<Simplex>& s0,
                                             Budget& budget, std::vector<Pyramid>& pyramids) {
    const std::size_t r = s0->verts.size();
    const std::size_t words = (gl.size() + 63) / 64;
    std::vector<Facet> facets;
    for (std::size_t i = 0; i < r; ++i) {
        Facet f{IntVec(s0->normals.begin() + i * r, s0->normals.begin() + (i + 1) * r), Bits(words, 0)};
        make_primitive(f.normal);
        for (std::size_t j = 0; j < r; ++j)
            if (j != i) set_bit(f.inc, s0->verts[j]);
        facets.push_back(std::move(f));
    }
    std::vector<bool> placed(gl.size(), false);
    for (int v : s0->verts) placed[v] = true;
    auto popcount = [&](const Bits& b) {
        std::size_t c = 0;
        for (auto w : b) c += std::popcount(static_cast<std::uint64_t>(w));
        return c;
    };
    for (std::size_t gi = 0; gi < gl.size(); ++gi) {
        if (placed[gi]) continue;
        placed[gi] = true;
        const IntVec& x = gl[gi];
        IntVec val(facets.size());
        std::vector<std::size_t> pos, neg, zero;
        for (std::size_t f = 0; f < facets.size(); ++f) {
            val[f] = dot(facets[f].normal.data(), x);
            (val[f] > 0 ? pos : val[f] < 0 ? neg : zero).push_back(f);
        }
        budget.spend(1 + facets.size(), "support hyperplanes");
        if (neg.empty()) {
            for (auto f : zero) set_bit(facets[f].inc, gi);
            continue;
        }
        for (auto q : neg)
            if (val[q] < -1) pyramids.push_back({static_cast<int>(gi), facets[q].normal, facets[q].inc});
        std::vector<Facet> next;
        for (auto p : pos)
            for (auto q : neg) {
                Bits common(words);
                for (std::size_t w = 0; w < words; ++w) common[w] = facets[p].inc[w] & facets[q].inc[w];
                if (r >= 2 && popcount(common) < r - 2) continue;
                budget.spend(1 + facets.size() / 16, "support hyperplanes");
                bool adjacent = true;
                for (std::size_t h = 0; h < facets.size() && adjacent; ++h) {
                    if (h == p || h == q) continue;
                    bool sub = true;
                    for (std::size_t w = 0; w < words && sub; ++w) sub = (common[w] & ~facets[h].inc[w]) == 0;
                    if (sub) adjacent = false;
                }
                if (!adjacent) continue;
                Facet nf{IntVec(r), std::move(common)};
                for (std::size_t j = 0; j < r; ++j)
                    nf.normal[j] = narrow(static_cast<__int128>(val[p]) * facets[q].normal[j] -
                                          static_cast<__int128>(val[q]) * facets[p].normal[j]);
                make_primitive(nf.normal);
                set_bit(nf.inc, gi);
                next.push_back(std::move(nf));
            }
        for (auto f : zero) set_bit(facets[f].inc, gi);
        for (auto p : pos) next.push_back(std::move(facets[p]));
        for (auto f : zero) next.push_back(std::move(facets[f]));
        facets = std::move(next);
    }
    return facets;
}

}  // namespace detail

// `gens`: generators in Z^d (nonnegative).  `grading`: integer linear form
// positive on every generator.  `upper`: optional componentwise bound.
inline HilbertComputation compute_hilbert_basis(const std::vector<IntVec>& gens_in, const IntVec& grading,
                                                Budget budget = Budget::unlimited(),
                                                const std::optional<IntVec>& upper = std::nullopt) {
    using namespace detail;
    HilbertComputation out;
    if (gens_in.empty()) {
        out.complete = true;
        return out;
    }
    const std::size_t dfull = gens_in.front().size();
    for (const auto& g : gens_in) {
        if (g.size() != dfull) throw dimension_mismatch("generators differ in length");
        for (auto x : g)
            if (x < 0) throw invalid_input("generators must be nonnegative");
    }
    if (grading.size() != dfull) throw dimension_mismatch("grading has wrong length");

    // Deduplicate and drop zero generators; keep input order otherwise.
    std::vector<IntVec> gfull;
    {
        std::unordered_set<IntVec, VecHash> seen;
        for (const auto& g : gens_in) {
            if (std::all_of(g.begin(), g.end(), [](auto x) { return x == 0; })) continue;
            if (seen.insert(g).second) gfull.push_back(g);
        }
    }
    if (gfull.empty()) {
        out.complete = true;
        return out;
    }
    auto degree_full = [&](const IntVec& x) {
        __int128 s = 0;
        for (std::size_t i = 0; i < dfull; ++i) s += static_cast<__int128>(grading[i]) * x[i];
        return narrow(s);
    };
    for (const auto& g : gfull)
        if (degree_full(g) <= 0) throw invalid_input("grading must be positive on the generators");

    // Active coordinates.
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < dfull; ++j)
        if (std::any_of(gfull.begin(), gfull.end(), [&](const IntVec& g) { return g[j] != 0; }))
            active.push_back(j);
    const std::size_t d = active.size();
    std::vector<IntVec> g;  // projected
    for (const auto& x : gfull) {
        IntVec y(d);
        for (std::size_t j = 0; j < d; ++j) y[j] = x[active[j]];
        g.push_back(std::move(y));
    }
    IntVec deg(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) deg[i] = degree_full(gfull[i]);
    IntVec ub;
    if (upper) {
        if (upper->size() != dfull) throw dimension_mismatch("bound has wrong length");
        ub.resize(d);
        for (std::size_t j = 0; j < d; ++j) ub[j] = (*upper)[active[j]];
    }
    auto under_bound = [&](const IntVec& x) {
        if (ub.empty()) return true;
        for (std::size_t j = 0; j < d; ++j)
            if (x[j] > ub[j]) return false;
        return true;
    };

    LatticeBasis lat = saturated_lattice(g, d);
    const std::size_t r = lat.rank;
    out.stats.rank = r;
    std::vector<IntVec> gl;  // lattice coordinates
    for (const auto& x : g) gl.push_back(lat.coordinates(x));

    // ---- support hyperplanes and pyramids ---------------------------------
    const auto s0 = initial_simplex(gl, independent_subset(gl, r));
    std::vector<Pyramid> pyramids;
    std::vector<IntVec> hyper;
    try {
        for (auto& f : incremental_facets(gl, s0, budget, pyramids)) hyper.push_back(std::move(f.normal));
    } catch (const budget_exceeded&) {
        out.complete = false;
        return out;
    }
    out.stats.pyramids = pyramids.size();
    const std::size_t nf = hyper.size();
    out.stats.support_hyperplanes = nf;
    // facet values of generators: fv[gen][facet]
    std::vector<IntVec> fv(gl.size(), IntVec(nf));
    for (std::size_t i = 0; i < gl.size(); ++i)
        for (std::size_t f = 0; f < nf; ++f) fv[i][f] = dot(hyper[f].data(), gl[i]);

    // Sparse generators for fast reconstruction in projected coordinates.
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> sparse(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (g[i][j] != 0) sparse[i].push_back({j, g[i][j]});

    // ---- parallelepipeds ------------------------------------------------
    std::unordered_set<IntVec, VecHash> survivors;
    IntVec xacc(d), fcache(nf);
    std::vector<char> fknown(nf);
    bool finished = true;
    auto enumerate = [&](const std::shared_ptr<Simplex>& sp) {
        {
            const std::int64_t D = sp->det;
            if (D == 1) return;
            if (D > std::numeric_limits<std::int32_t>::max())
                throw budget_exceeded("simplex determinant too large");
            // Group generated by the columns of N mod D.
            std::vector<std::int32_t> elems(r, 0);
            std::unordered_set<IntVec, VecHash> member;  // holds residues
            member.insert(IntVec(r, 0));
            std::size_t count = 1;
            IntVec c(r), cur(r), tmp(r);
            for (std::size_t k = 0; k < r && count < static_cast<std::size_t>(D); ++k) {
                for (std::size_t i = 0; i < r; ++i) {
                    std::int64_t v = sp->normals[i * r + k] % D;
                    c[i] = v < 0 ? v + D : v;
                }
                if (member.count(c)) continue;
                const std::size_t base = count;
                cur = c;
                while (!member.count(cur)) {
                    for (std::size_t e = 0; e < base; ++e) {
                        for (std::size_t i = 0; i < r; ++i) {
                            std::int64_t v = elems[e * r + i] + cur[i];
                            tmp[i] = v >= D ? v - D : v;
                        }
                        member.insert(tmp);
                        elems.insert(elems.end(), tmp.begin(), tmp.end());
                        ++count;
                    }
                    budget.spend(base, "parallelepiped enumeration");
                    for (std::size_t i = 0; i < r; ++i) {
                        std::int64_t v = cur[i] + c[i];
                        cur[i] = v >= D ? v - D : v;
                    }
                }
            }
            member.clear();
            if (count != static_cast<std::size_t>(D)) throw error("parallelepiped group has wrong order");
            out.stats.parallelepiped_points += count - 1;

            for (std::size_t e = 1; e < count; ++e) {
                const std::int32_t* res = &elems[e * r];
                // degree
                __int128 dsum = 0;
                for (std::size_t i = 0; i < r; ++i) dsum += static_cast<__int128>(res[i]) * deg[sp->verts[i]];
                const std::int64_t xdeg = narrow(dsum / D);
                // point in projected coordinates
                std::fill(xacc.begin(), xacc.end(), 0);
                for (std::size_t i = 0; i < r; ++i)
                    if (res[i])
                        for (auto [j, v] : sparse[sp->verts[i]]) xacc[j] += static_cast<std::int64_t>(res[i]) * v;
                bool bad = false;
                for (std::size_t j = 0; j < d; ++j) {
                    xacc[j] /= D;
                    if (!ub.empty() && xacc[j] > ub[j]) bad = true;
                }
                if (bad) continue;
                // Reducible by a generator?
                std::fill(fknown.begin(), fknown.end(), 0);
                auto facet_value = [&](std::size_t f) {
                    if (!fknown[f]) {
                        __int128 s = 0;
                        for (std::size_t i = 0; i < r; ++i)
                            if (res[i]) s += static_cast<__int128>(res[i]) * fv[sp->verts[i]][f];
                        fcache[f] = narrow(s / D);
                        fknown[f] = 1;
                    }
                    return fcache[f];
                };
                bool reducible = false;
                for (std::size_t h = 0; h < g.size() && !reducible; ++h) {
                    if (deg[h] >= xdeg) continue;
                    bool le = true;
                    for (auto [j, v] : sparse[h])
                        if (xacc[j] < v) {
                            le = false;
                            break;
                        }
                    if (!le) continue;
                    bool inside = true;
                    for (std::size_t f = 0; f < nf; ++f)
                        if (facet_value(f) < fv[h][f]) {
                            inside = false;
                            break;
                        }
                    reducible = inside;
                }
                budget.spend(1, "parallelepiped enumeration");
                if (!reducible) survivors.insert(xacc);
            }
        }
    };
    try {
        ++out.stats.simplices;
        enumerate(s0);
        for (const auto& py : pyramids) {
            // Triangulate the base after dropping a coordinate the facet
            // normal does not vanish on; that projection is injective there.
            std::size_t drop = 0;
            while (py.normal[drop] == 0) ++drop;
            std::vector<int> base;
            std::vector<IntVec> proj;
            for (std::size_t i = 0; i < gl.size(); ++i) {
                if (!test_bit(py.base, i)) continue;
                base.push_back(static_cast<int>(i));
                IntVec y;
                y.reserve(r - 1);
                for (std::size_t j = 0; j < r; ++j)
                    if (j != drop) y.push_back(gl[i][j]);
                proj.push_back(std::move(y));
            }
            triangulate(proj, independent_subset(proj, r - 1), budget, [&](const std::shared_ptr<Simplex>& sigma) {
                std::vector<int> verts;
                for (int v : sigma->verts) verts.push_back(base[v]);
                verts.push_back(py.apex);
                ++out.stats.simplices;
                enumerate(initial_simplex(gl, verts));
            });
        }
    } catch (const budget_exceeded&) {
        finished = false;
    }

    // ---- global reduction -----------------------------------------------
    struct Cand {
        std::int64_t degree;
        IntVec x;       // projected coordinates
        IntVec facets;  // support hyperplane values
    };
    std::vector<Cand> cands;
    auto make_cand = [&](const IntVec& x) {
        IntVec xl = lat.coordinates(x);
        IntVec fvals(nf);
        for (std::size_t f = 0; f < nf; ++f) fvals[f] = dot(hyper[f].data(), xl);
        IntVec full(dfull, 0);
        for (std::size_t j = 0; j < d; ++j) full[active[j]] = x[j];
        return Cand{degree_full(full), x, std::move(fvals)};
    };
    for (const auto& x : g)
        if (under_bound(x)) cands.push_back(make_cand(x));
    for (const auto& x : survivors)
        if (std::find(g.begin(), g.end(), x) == g.end()) cands.push_back(make_cand(x));
    out.stats.candidates = cands.size();
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.x < b.x;
    });
    std::vector<const Cand*> irred;
    for (const auto& c : cands) {
        bool reducible = false;
        for (const Cand* h : irred) {
            if (h->degree >= c.degree) break;
            bool ok = true;
            for (std::size_t j = 0; j < d && ok; ++j) ok = h->x[j] <= c.x[j];
            for (std::size_t f = 0; f < nf && ok; ++f) ok = h->facets[f] <= c.facets[f];
            if (ok) {
                reducible = true;
                break;
            }
        }
        if (!reducible) irred.push_back(&c);
    }
    for (const Cand* c : irred) {
        IntVec full(dfull, 0);
        for (std::size_t j = 0; j < d; ++j) full[active[j]] = c->x[j];
        out.basis.push_back(std::move(full));
    }
    std::sort(out.basis.begin(), out.basis.end());
    out.complete = finished;
    return out;
}

}  // namespace hapmono

#endif
