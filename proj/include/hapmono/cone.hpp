#ifndef HAPMONO_CONE_HPP
#define HAPMONO_CONE_HPP

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hapmono/budget.hpp"
#include "hapmono/combinat.hpp"
#include "hapmono/graphs.hpp"
#include "hapmono/hilbert.hpp"
#include "hapmono/lp.hpp"
#include "hapmono/schedule.hpp"

namespace hapmono {

struct DecompositionTerm {
    PMGenerator gen;
    Rational coeff;
};

// scale * target == sum of coeff * gen.
struct MatchingDecomposition {
    std::vector<DecompositionTerm> terms;
    Integer scale = 1;
};

inline bool verify_decomposition(const ProblemVector& v, const MatchingDecomposition& dec) {
    if (dec.scale <= 0) return false;
    std::map<Pair, Rational> edges;
    std::map<EqualPartition, Rational> has;
    for (const auto& t : dec.terms) {
        if (t.coeff <= 0 || t.gen.teams() != v.teams()) return false;
        for (const Pair& p : t.gen.matching()) edges[p] += t.coeff;
        has[t.gen.partition()] += t.coeff;
    }
    for (auto& [p, x] : v.edges()) edges[p] -= Rational(dec.scale) * x;
    for (auto& [c, x] : v.has()) has[c] -= Rational(dec.scale) * x;
    for (auto& [p, q] : edges)
        if (q != 0) return false;
    for (auto& [c, q] : has)
        if (q != 0) return false;
    return true;
}

// h.g >= 0 for every generator and h.v < 0; h is dense in the global
// coordinate order.
inline bool verify_separation(const ProblemVector& v, const std::vector<PMGenerator>& gens,
                              const std::vector<Rational>& h) {
    const Coordinates& co = coordinates(v.teams());
    if (h.size() != co.dimension()) return false;
    auto value = [&](const ProblemVector& x) {
        Rational s = 0;
        for (auto& [p, k] : x.edges()) s += h[co.index(p)] * k;
        for (auto& [c, k] : x.has()) s += h[co.index(c)] * k;
        return s;
    };
    for (const auto& g : gens)
        if (value(g.to_vector()) < 0) return false;
    return value(v) < 0;
}

struct ConeResult {
    bool member = false;
    MatchingDecomposition decomposition;  // member: integer coefficients, scale = lcm
    std::vector<Rational> hyperplane;     // not a member: separating form
};

inline ConeResult cone_member(const ProblemVector& v, const std::vector<PMGenerator>& gens,
                              Budget budget = Budget::unlimited()) {
    for (const auto& g : gens)
        if (g.teams() != v.teams()) throw dimension_mismatch("generator and vector team counts differ");
    ConeResult res;
    if (v.is_zero()) {
        res.member = true;
        return res;
    }
    const Coordinates& co = coordinates(v.teams());
    // Only generators supported inside supp(v) can take part.
    std::vector<std::size_t> rows;
    for (auto& [p, x] : v.edges()) rows.push_back(co.index(p));
    for (auto& [c, x] : v.has()) rows.push_back(co.index(c));
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        const auto& g = gens[j];
        bool inside = v.ha(g.partition()) > 0;
        for (const Pair& p : g.matching()) inside = inside && v.edge(p) > 0;
        if (inside) cols.push_back(j);
    }
    LinearProgram lp(rows.size(), cols.size());
    std::map<std::size_t, std::size_t> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const auto& g = gens[cols[j]];
        for (const Pair& p : g.matching()) lp.a[row_of[co.index(p)]][j] = 1;
        lp.a[row_of[co.index(g.partition())]][j] = 1;
    }
    {
        std::size_t i = 0;
        for (auto& [p, x] : v.edges()) lp.b[i++] = x;
        for (auto& [c, x] : v.has()) lp.b[i++] = x;
    }
    LpResult r = solve_lp(lp, budget);
    if (r.status == LpStatus::Optimal) {
        res.member = true;
        mpz_class l = 1;
        for (const auto& q : r.x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        res.decomposition.scale = l;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (r.x[j] != 0) res.decomposition.terms.push_back({gens[cols[j]], r.x[j] * l});
        return res;
    }
    // Extend the Farkas vector by a large weight M off the support of v.
    res.hyperplane.assign(co.dimension(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) res.hyperplane[rows[i]] = r.farkas[i];
    Rational big = 0;
    for (const auto& g : gens) {
        Rational on = 0;
        bool off = false;
        auto acc = [&](std::size_t k) {
            auto it = row_of.find(k);
            if (it == row_of.end())
                off = true;
            else
                on += r.farkas[it->second];
        };
        for (const Pair& p : g.matching()) acc(co.index(p));
        acc(co.index(g.partition()));
        if (off && -on > big) big = -on;
    }
    big += 1;
    for (std::size_t k = 0; k < co.dimension(); ++k)
        if (!row_of.count(k)) res.hyperplane[k] = big;
    return res;
}

struct MonoidResult {
    SearchStatus status = SearchStatus::NotFound;
    MatchingDecomposition decomposition;  // Found: 0/1 coefficients, scale 1
    std::uint64_t nodes = 0;
};

// Integral membership for vectors with all edge components <= 1.  Every
// decomposition then uses each generator at most once and exactly v(c)
// generators on partition c, so it is an exact-cover search.
inline MonoidResult monoid_member(const ProblemVector& v, const std::vector<PMGenerator>& gens,
                                  Budget budget = Budget::unlimited()) {
    for (auto& [p, x] : v.edges())
        if (x > 1) throw precondition_violated("monoid_member needs edge components <= 1");
    for (const auto& g : gens)
        if (g.teams() != v.teams()) throw dimension_mismatch("generator and vector team counts differ");
    MonoidResult res;
    if (v.is_zero()) {
        res.status = SearchStatus::Found;
        return res;
    }
    std::vector<Pair> edges = support_graph(v);
    std::map<EqualPartition, std::vector<std::vector<Pair>>> by_part;
    for (const auto& g : gens)
        if (v.ha(g.partition()) > 0) by_part[g.partition()].push_back(g.matching());
    std::vector<detail::SlotSpec> slots;
    for (auto& [c, k] : v.has()) {
        auto& list = by_part[c];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        for (ProblemVector::Value i = 0; i < k; ++i) slots.push_back({c, list});
    }
    CoverResult cr = detail::cover_slots(edges, 1, slots, budget);
    res.status = cr.status;
    res.nodes = cr.nodes;
    if (cr.status == SearchStatus::Found)
        for (std::size_t s = 0; s < slots.size(); ++s)
            res.decomposition.terms.push_back(
                {PMGenerator(slots[s].matchings[cr.choice[s]], slots[s].partition), 1});
    return res;
}

// PM(V) generators whose matching uses only edges of G.
inline std::vector<PMGenerator> restricted_generators(const RegularGraph& g) {
    std::vector<PMGenerator> out;
    for (const auto& c : enumerate_partitions(TeamSet(g.vertex_count())))
        for (auto& m : compatible_matchings(g, c)) out.emplace_back(std::move(m), c);
    return out;
}

struct HilbertBasisResult {
    bool complete = false;
    std::vector<ProblemVector> basis;       // global coordinate order
    std::vector<ProblemVector> additional;  // basis elements that are not generators
    std::size_t generator_count = 0;
    HilbertStats stats;
};

// Hilbert basis of the lattice points of cone(gens).  With
// `edge_bound_one`, only basis elements with all edge components <= 1 are
// produced (exactly those; see compute_hilbert_basis).
inline HilbertBasisResult hilbert_basis(const std::vector<PMGenerator>& gens,
                                        Budget budget = Budget::unlimited(),
                                        bool edge_bound_one = false) {
    if (gens.empty()) throw invalid_input("hilbert_basis needs at least one generator");
    const int n = gens.front().teams();
    const Coordinates& co = coordinates(n);
    std::vector<IntVec> dense;
    for (const auto& g : gens) {
        if (g.teams() != n) throw dimension_mismatch("generators differ in team count");
        dense.push_back(co.dense(g.to_vector()));
    }
    IntVec grading(co.dimension(), 0);
    for (std::size_t i = co.pair_count(); i < co.dimension(); ++i) grading[i] = 1;
    std::optional<IntVec> bound;
    if (edge_bound_one) {
        IntVec u(co.dimension(), std::numeric_limits<std::int64_t>::max());
        for (std::size_t i = 0; i < co.pair_count(); ++i) u[i] = 1;
        bound = u;
    }
    HilbertComputation hc = compute_hilbert_basis(dense, grading, budget, bound);
    HilbertBasisResult out;
    out.complete = hc.complete;
    out.stats = hc.stats;
    out.generator_count = gens.size();
    std::sort(dense.begin(), dense.end());
    for (const auto& x : hc.basis) {
        ProblemVector v = co.sparse(x);
        if (!std::binary_search(dense.begin(), dense.end(), x)) out.additional.push_back(v);
        out.basis.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Certificate formats
//
//   hilbert <count> <additional-count>
//   <vec block>
//   <blank line>
//   ...
//
//   scale <k>
//   gen <index> <num>/<den>      index in enumerate_pm order

inline std::string format_hilbert(const HilbertBasisResult& h) {
    std::ostringstream os;
    os << "hilbert " << h.basis.size() << " " << h.additional.size() << "\n";
    for (std::size_t i = 0; i < h.basis.size(); ++i) {
        if (i) os << "\n";
        os << format_vector(h.basis[i]);
    }
    return os.str();
}

inline std::vector<ProblemVector> parse_hilbert(const std::string& text, std::size_t* additional = nullptr) {
    auto lines = detail::split_lines(text);
    std::size_t i = 0;
    while (i < lines.size() && detail::split_ws(lines[i]).empty()) ++i;
    if (i == lines.size()) throw parse_error(1, "missing 'hilbert' header");
    auto head = detail::split_ws(lines[i]);
    const int hl = static_cast<int>(i) + 1;
    if (head.size() != 3 || head[0] != "hilbert")
        throw parse_error(hl, "expected 'hilbert <count> <additional-count>'");
    long long count = detail::parse_int(head[1], hl);
    long long add = detail::parse_int(head[2], hl);
    if (count < 0 || add < 0 || add > count) throw parse_error(hl, "bad counts");
    if (additional) *additional = static_cast<std::size_t>(add);
    std::vector<ProblemVector> out;
    ++i;
    for (long long k = 0; k < count; ++k) {
        ProblemVector v;
        i = parse_vector_lines(lines, i, v);
        out.push_back(std::move(v));
    }
    for (; i < lines.size(); ++i)
        if (!detail::split_ws(lines[i]).empty())
            throw parse_error(static_cast<int>(i) + 1, "trailing content after Hilbert basis");
    return out;
}

inline std::string format_decomposition(const MatchingDecomposition& d) {
    std::ostringstream os;
    os << "scale " << d.scale.get_str() << "\n";
    for (const auto& t : d.terms) os << "gen " << pm_rank(t.gen) << " " << to_string(t.coeff) << "\n";
    return os.str();
}

inline MatchingDecomposition parse_decomposition(const std::string& text, int n) {
    MatchingDecomposition d;
    auto lines = detail::split_lines(text);
    bool have_scale = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto tok = detail::split_ws(lines[i]);
        const int ln = static_cast<int>(i) + 1;
        if (tok.empty()) continue;
        if (tok[0] == "scale" && tok.size() == 2 && !have_scale) {
            d.scale = Integer(static_cast<long>(detail::parse_int(tok[1], ln)));
            if (d.scale <= 0) throw parse_error(ln, "scale must be positive");
            have_scale = true;
        } else if (tok[0] == "gen" && tok.size() == 3 && have_scale) {
            long long idx = detail::parse_int(tok[1], ln);
            if (idx < 0) throw parse_error(ln, "negative generator index");
            Rational q;
            try {
                q = Rational(tok[2]);
            } catch (const std::exception&) {
                throw parse_error(ln, "bad coefficient '" + tok[2] + "'");
            }
            q.canonicalize();
            PMGenerator g;
            try {
                g = pm_unrank(n, static_cast<std::uint64_t>(idx));
            } catch (const invalid_input& e) {
                throw parse_error(ln, e.what());
            }
            d.terms.push_back({g, q});
        } else {
            throw parse_error(ln, "expected 'scale <k>' then 'gen <index> <num>/<den>' lines");
        }
    }
    if (!have_scale) throw parse_error(1, "missing 'scale' line");
    return d;
}

}  // namespace hapmono

#endif
