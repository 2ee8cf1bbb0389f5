#ifndef HAPMONO_SCHEDULE_HPP
#define HAPMONO_SCHEDULE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hapmono/budget.hpp"
#include "hapmono/combinat.hpp"
#include "hapmono/graphs.hpp"
#include "hapmono/lp.hpp"
#include "hapmono/matching.hpp"

namespace hapmono {

// Day d (0-based) is played on partition days[d].
struct HapTable {
    int n = 0;
    std::vector<EqualPartition> days;

    HapTable() = default;
    HapTable(int teams, std::vector<EqualPartition> d) : n(TeamSet(teams).size()), days(std::move(d)) {
        if (days.empty()) throw invalid_input("a HAP table needs at least one day");
        for (const auto& c : days)
            if (c.teams() != n) throw team_count_mismatch("HAP day has a different team count");
    }

    int day_count() const noexcept { return static_cast<int>(days.size()); }

    // Builds a table from rows of 'H'/'A' characters, one row per day.
    static HapTable from_rows(const std::vector<std::string>& rows) {
        if (rows.empty()) throw invalid_input("a HAP table needs at least one day");
        const int n = static_cast<int>(rows.front().size());
        std::vector<EqualPartition> d;
        for (const std::string& row : rows) {
            if (static_cast<int>(row.size()) != n) throw invalid_input("HAP rows differ in length");
            Mask home = 0;
            for (int t = 0; t < n; ++t) {
                if (row[t] == 'H')
                    home |= Mask{1} << t;
                else if (row[t] != 'A')
                    throw invalid_input("HAP rows use only 'H' and 'A'");
            }
            d.emplace_back(n, home);
        }
        return HapTable(n, std::move(d));
    }

    friend bool operator==(const HapTable&, const HapTable&) = default;
};

// ---------------------------------------------------------------------------
// HAP text format
//
//   hap <n> <r>
//   r rows of n characters over {H, A}; row d is day d, column t is team t.
//
// Rows are written with team 0 at home.

inline std::string format_hap(const HapTable& h) {
    std::ostringstream os;
    os << "hap " << h.n << " " << h.day_count() << "\n";
    for (const auto& c : h.days) {
        for (int t = 0; t < h.n; ++t) os << (c.is_home(t) ? 'H' : 'A');
        os << "\n";
    }
    return os.str();
}

inline HapTable parse_hap(const std::string& text) {
    using detail::parse_int;
    auto lines = detail::split_lines(text);
    std::size_t i = 0;
    while (i < lines.size() && detail::split_ws(lines[i]).empty()) ++i;
    if (i == lines.size()) throw parse_error(1, "missing 'hap' header");
    auto head = detail::split_ws(lines[i]);
    const int hl = static_cast<int>(i) + 1;
    if (head.size() != 3 || head[0] != "hap") throw parse_error(hl, "expected 'hap <n> <r>'");
    long long n = parse_int(head[1], hl), r = parse_int(head[2], hl);
    if (n < 2 || n % 2 != 0 || n > kMaxTeams) throw parse_error(hl, "bad team count");
    if (r < 1) throw parse_error(hl, "bad day count");
    std::vector<EqualPartition> days;
    for (++i; i < lines.size(); ++i) {
        auto tok = detail::split_ws(lines[i]);
        const int ln = static_cast<int>(i) + 1;
        if (tok.empty()) continue;
        if (tok.size() != 1 || static_cast<long long>(tok[0].size()) != n)
            throw parse_error(ln, "expected a row of " + std::to_string(n) + " H/A characters");
        Mask home = 0;
        for (int t = 0; t < n; ++t) {
            char ch = tok[0][t];
            if (ch == 'H')
                home |= Mask{1} << t;
            else if (ch != 'A')
                throw parse_error(ln, "unexpected character '" + std::string(1, ch) + "'");
        }
        if (std::popcount(home) != n / 2) throw parse_error(ln, "row is not an equal partition");
        days.emplace_back(static_cast<int>(n), home);
    }
    if (static_cast<long long>(days.size()) != r)
        throw parse_error(static_cast<int>(lines.size()),
                          "header announces " + std::to_string(r) + " days, found " +
                              std::to_string(days.size()));
    return HapTable(static_cast<int>(n), std::move(days));
}

// ---------------------------------------------------------------------------
// Vector <-> (graph, table)

inline ProblemVector vector_of(const RegularGraph& g, const HapTable& hap) {
    if (g.vertex_count() != hap.n) throw team_count_mismatch("graph and HAP table team counts differ");
    ProblemVector v = g.indicator();
    for (const auto& c : hap.days) v.add_ha(c, 1);
    return v;
}

// Days in partition order, each partition repeated v(c) times.
inline HapTable hap_of(const ProblemVector& v) {
    Diagnosis d = is_problem_vector(v);
    if (!d) throw not_a_problem_vector(d.reason);
    std::vector<EqualPartition> days;
    for (auto& [c, k] : v.has())
        for (ProblemVector::Value i = 0; i < k; ++i) days.push_back(c);
    return HapTable(v.teams(), std::move(days));
}

inline RegularGraph support_regular_graph(const ProblemVector& v) {
    return RegularGraph::from_edges(v.teams(), support_graph(v));
}

// ---------------------------------------------------------------------------
// The polytope P(G, HA)

struct PolytopeVariable {
    Pair edge;
    int day = 0;
};

// Variables x_{e,d} for pairs e of G that cross day d's partition; the
// others are fixed to 0 by the compatibility condition and never created.
// Rows: one per edge (each pair plays once), then one per (day, team) (each
// team plays once per day).  Box constraints follow from these.
struct PolytopeInstance {
    RegularGraph graph;
    HapTable hap;
    std::vector<PolytopeVariable> variables;
    LinearProgram lp;

    std::size_t edge_row(std::size_t edge_index) const { return edge_index; }
    std::size_t team_row(int day, int team) const {
        return graph.edge_count() + static_cast<std::size_t>(day) * hap.n + team;
    }
    std::size_t raw_variable_count() const { return graph.edge_count() * hap.day_count(); }
};

inline PolytopeInstance build_polytope(const RegularGraph& g, const HapTable& hap) {
    if (g.vertex_count() != hap.n) throw team_count_mismatch("graph and HAP table team counts differ");
    if (hap.day_count() != g.degree())
        throw day_count_mismatch("HAP table has " + std::to_string(hap.day_count()) +
                                 " days but the graph is " + std::to_string(g.degree()) +
                                 "-regular");
    PolytopeInstance p;
    p.graph = g;
    p.hap = hap;
    for (int d = 0; d < hap.day_count(); ++d)
        for (const Pair& e : g.edges())
            if (hap.days[d].crosses(e)) p.variables.push_back({e, d});
    const std::size_t rows = g.edge_count() + static_cast<std::size_t>(hap.day_count()) * hap.n;
    p.lp = LinearProgram(rows, p.variables.size());
    std::map<Pair, std::size_t> eidx;
    for (std::size_t e = 0; e < g.edge_count(); ++e) eidx[g.edges()[e]] = e;
    for (std::size_t j = 0; j < p.variables.size(); ++j) {
        const auto& var = p.variables[j];
        p.lp.a[p.edge_row(eidx[var.edge])][j] = 1;
        p.lp.a[p.team_row(var.day, var.edge.a)][j] = 1;
        p.lp.a[p.team_row(var.day, var.edge.b)][j] = 1;
    }
    for (std::size_t i = 0; i < rows; ++i) p.lp.b[i] = 1;
    return p;
}

struct FractionalResult {
    bool feasible = false;
    std::vector<Rational> point;   // aligned with PolytopeInstance::variables
    std::vector<Rational> farkas;  // aligned with the LP rows
};

inline FractionalResult fractional_feasible(const PolytopeInstance& p,
                                            Budget budget = Budget::unlimited()) {
    LpResult r = solve_lp(p.lp, budget);
    FractionalResult out;
    out.feasible = r.status == LpStatus::Optimal;
    if (out.feasible)
        out.point = std::move(r.x);
    else
        out.farkas = std::move(r.farkas);
    return out;
}

inline bool is_integral(const std::vector<Rational>& x) {
    return std::all_of(x.begin(), x.end(), [](const Rational& q) { return q.get_den() == 1; });
}

// ---------------------------------------------------------------------------
// Exact cover search
//
// Each slot s must receive one matching drawn from its candidate list so
// that every edge e ends up covered exactly cap[e] times.  Both integral
// schedules (one slot per day, cap 1) and double covers (two slots per day,
// cap 2) are instances.

struct CoverProblem {
    int edge_count = 0;
    std::vector<int> cap;                               // per edge
    std::vector<std::vector<std::vector<int>>> cands;   // slot -> candidate -> edge indices
    std::vector<int> group;                             // interchangeable slots share a group
};

enum class SearchStatus { Found, NotFound, Undecided };

struct CoverResult {
    SearchStatus status = SearchStatus::NotFound;
    std::vector<int> choice;  // slot -> candidate index
    std::uint64_t nodes = 0;
};

inline CoverResult solve_cover(const CoverProblem& pb, Budget budget) {
    const int slots = static_cast<int>(pb.cands.size());
    CoverResult res;
    res.choice.assign(slots, -1);

    // Quick balance check: every slot covers the same number of edges as its
    // candidates have, so the caps must add up.
    {
        long long need = 0, have = 0;
        for (int c : pb.cap) need += c;
        for (const auto& cs : pb.cands) {
            if (cs.empty()) return res;
            have += static_cast<long long>(cs.front().size());
        }
        if (need != have) return res;
    }

    std::vector<int> cap = pb.cap;
    std::vector<int> last_in_group(slots, -1);  // indexed by group id
    std::vector<int> count(pb.edge_count);
    auto compatible = [&](const std::vector<int>& m) {
        for (int e : m)
            if (cap[e] == 0) return false;
        return true;
    };

    auto rec = [&](auto&& self, int filled) -> bool {
        budget.spend(1, "schedule search");
        if (filled == slots) return true;
        // Pick the open slot with the fewest live candidates; collect edge
        // reachability for the capacity bound at the same time.
        std::fill(count.begin(), count.end(), 0);
        int best = -1;
        std::size_t best_live = 0;
        std::vector<char> seen_group(slots, 0);
        std::vector<char> reach(pb.edge_count);
        for (int s = 0; s < slots; ++s) {
            if (res.choice[s] >= 0) continue;
            std::fill(reach.begin(), reach.end(), 0);
            std::size_t live = 0;
            const int lo = std::max(0, last_in_group[pb.group[s]]);
            for (int i = 0; i < static_cast<int>(pb.cands[s].size()); ++i) {
                const auto& m = pb.cands[s][i];
                if (!compatible(m)) continue;
                for (int e : m) reach[e] = 1;
                if (i >= lo) ++live;
            }
            if (live == 0) return false;
            for (int e = 0; e < pb.edge_count; ++e) count[e] += reach[e];
            // Within a group only the first open slot is branched on.
            if (seen_group[pb.group[s]]) continue;
            seen_group[pb.group[s]] = 1;
            if (best < 0 || live < best_live) {
                best = s;
                best_live = live;
            }
        }
        for (int e = 0; e < pb.edge_count; ++e)
            if (cap[e] > count[e]) return false;

        const int g = pb.group[best];
        const int saved = last_in_group[g];
        for (int i = std::max(0, saved); i < static_cast<int>(pb.cands[best].size()); ++i) {
            const auto& m = pb.cands[best][i];
            if (!compatible(m)) continue;
            for (int e : m) --cap[e];
            res.choice[best] = i;
            last_in_group[g] = i;
            if (self(self, filled + 1)) return true;
            res.choice[best] = -1;
            for (int e : m) ++cap[e];
        }
        last_in_group[g] = saved;
        return false;
    };

    try {
        bool found = rec(rec, 0);
        res.status = found ? SearchStatus::Found : SearchStatus::NotFound;
        if (!found) res.choice.assign(slots, -1);
    } catch (const budget_exceeded&) {
        res.status = SearchStatus::Undecided;
        res.choice.assign(slots, -1);
    }
    res.nodes = budget.used();
    return res;
}

// ---------------------------------------------------------------------------
// Integral schedules

// Day d's perfect matching, pairs sorted.
using Schedule = std::vector<std::vector<Pair>>;

struct ScheduleResult {
    SearchStatus status = SearchStatus::NotFound;
    Schedule schedule;
    std::uint64_t nodes = 0;
};

namespace detail {

struct SlotSpec {
    EqualPartition partition;
    std::vector<std::vector<Pair>> matchings;
};

// Builds and solves the cover problem for slots over graph edges `edges`
// with uniform capacity `mult`.
inline CoverResult cover_slots(const std::vector<Pair>& edges, int mult,
                               const std::vector<SlotSpec>& slots, Budget budget) {
    std::map<Pair, int> eidx;
    for (std::size_t i = 0; i < edges.size(); ++i) eidx[edges[i]] = static_cast<int>(i);
    CoverProblem pb;
    pb.edge_count = static_cast<int>(edges.size());
    pb.cap.assign(edges.size(), mult);
    std::map<EqualPartition, int> gid;
    std::vector<std::vector<int>> orig;  // filtered candidate -> index in s.matchings
    for (const auto& s : slots) {
        std::vector<std::vector<int>> cs;
        orig.emplace_back();
        for (std::size_t k = 0; k < s.matchings.size(); ++k) {
            const auto& m = s.matchings[k];
            std::vector<int> idx;
            bool inside = true;
            for (const Pair& p : m) {
                auto it = eidx.find(p);
                if (it == eidx.end()) {
                    inside = false;
                    break;
                }
                idx.push_back(it->second);
            }
            if (inside) {
                cs.push_back(std::move(idx));
                orig.back().push_back(static_cast<int>(k));
            }
        }
        pb.cands.push_back(std::move(cs));
        auto [it, fresh] = gid.emplace(s.partition, static_cast<int>(gid.size()));
        pb.group.push_back(it->second);
    }
    CoverResult res = solve_cover(pb, budget);
    if (res.status == SearchStatus::Found)
        for (std::size_t s = 0; s < res.choice.size(); ++s) res.choice[s] = orig[s][res.choice[s]];
    return res;
}

}  // namespace detail

inline std::vector<std::vector<Pair>> compatible_matchings(const RegularGraph& g,
                                                           const EqualPartition& c) {
    return perfect_matchings(crossing_adjacency(g.adjacency(), c), TeamSet(g.vertex_count()).all());
}

inline ScheduleResult find_integral_schedule(const RegularGraph& g, const HapTable& hap,
                                             Budget budget = Budget::unlimited()) {
    if (g.vertex_count() != hap.n) throw team_count_mismatch("graph and HAP table team counts differ");
    if (hap.day_count() != g.degree())
        throw day_count_mismatch("HAP table has " + std::to_string(hap.day_count()) +
                                 " days but the graph is " + std::to_string(g.degree()) +
                                 "-regular");
    std::map<EqualPartition, std::vector<std::vector<Pair>>> memo;
    std::vector<detail::SlotSpec> slots;
    for (const auto& c : hap.days) {
        auto it = memo.find(c);
        if (it == memo.end()) it = memo.emplace(c, compatible_matchings(g, c)).first;
        slots.push_back({c, it->second});
    }
    CoverResult cr = detail::cover_slots(g.edges(), 1, slots, budget);
    ScheduleResult out;
    out.status = cr.status;
    out.nodes = cr.nodes;
    if (cr.status == SearchStatus::Found)
        for (std::size_t d = 0; d < slots.size(); ++d)
            out.schedule.push_back(slots[d].matchings[cr.choice[d]]);
    return out;
}

// Independent audit of a schedule: day d's matching is perfect, uses edges
// of G crossing day d's partition, and the days partition E.
inline Diagnosis check_schedule(const RegularGraph& g, const HapTable& hap, const Schedule& s) {
    if (static_cast<int>(s.size()) != hap.day_count()) return {false, "wrong number of days"};
    std::map<Pair, int> used;
    for (int d = 0; d < hap.day_count(); ++d) {
        Mask covered = 0;
        for (const Pair& p : s[d]) {
            if (!g.has_edge(p)) return {false, "day " + std::to_string(d + 1) + " uses a non-edge"};
            if (!hap.days[d].crosses(p))
                return {false, "day " + std::to_string(d + 1) + " pairs two teams on one side"};
            Mask m = (Mask{1} << p.a) | (Mask{1} << p.b);
            if (covered & m) return {false, "day " + std::to_string(d + 1) + " is not a matching"};
            covered |= m;
            ++used[p];
        }
        if (covered != TeamSet(hap.n).all())
            return {false, "day " + std::to_string(d + 1) + " is not a perfect matching"};
    }
    for (const Pair& p : g.edges())
        if (used[p] != 1) return {false, "an edge is not played exactly once"};
    return {true, {}};
}

// The 0/1 polytope point induced by a schedule, aligned with p.variables.
inline std::vector<Rational> schedule_point(const PolytopeInstance& p, const Schedule& s) {
    std::vector<Rational> x(p.variables.size());
    for (std::size_t j = 0; j < p.variables.size(); ++j) {
        const auto& day = s[p.variables[j].day];
        if (std::find(day.begin(), day.end(), p.variables[j].edge) != day.end()) x[j] = 1;
    }
    return x;
}

// ---------------------------------------------------------------------------
// Schedule text format: "day <d>: {a,b} {c,d} ..." with 1-based days.

inline std::string format_schedule(const Schedule& s) {
    std::ostringstream os;
    for (std::size_t d = 0; d < s.size(); ++d) {
        os << "day " << d + 1 << ":";
        std::vector<Pair> m = s[d];
        std::sort(m.begin(), m.end());
        for (const Pair& p : m) os << " {" << p.a << "," << p.b << "}";
        os << "\n";
    }
    return os.str();
}

inline Schedule parse_schedule(const std::string& text) {
    Schedule s;
    auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int ln = static_cast<int>(i) + 1;
        auto tok = detail::split_ws(lines[i]);
        if (tok.empty()) continue;
        if (tok.size() < 2 || tok[0] != "day" || tok[1].back() != ':')
            throw parse_error(ln, "expected 'day <d>: {a,b} ...'");
        long long d = detail::parse_int(tok[1].substr(0, tok[1].size() - 1), ln);
        if (d != static_cast<long long>(s.size()) + 1) throw parse_error(ln, "days must be consecutive from 1");
        std::vector<Pair> m;
        for (std::size_t k = 2; k < tok.size(); ++k) {
            const std::string& t = tok[k];
            auto comma = t.find(',');
            if (t.size() < 5 || t.front() != '{' || t.back() != '}' || comma == std::string::npos)
                throw parse_error(ln, "expected '{a,b}'");
            long long a = detail::parse_int(t.substr(1, comma - 1), ln);
            long long b = detail::parse_int(t.substr(comma + 1, t.size() - comma - 2), ln);
            if (a < 0 || b < 0 || a == b || a >= kMaxTeams || b >= kMaxTeams)
                throw parse_error(ln, "bad pair");
            m.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
        s.push_back(std::move(m));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Double covers and the intersection-graph obstruction

inline ProblemVector sum_of(int n, const std::vector<PMGenerator>& gens) {
    ProblemVector s(n);
    for (const auto& g : gens) {
        if (g.teams() != n) throw dimension_mismatch("generator team count differs");
        s += g.to_vector();
    }
    return s;
}

// True iff the generators add up to exactly 2v.
inline bool verify_double_cover(const ProblemVector& v, const std::vector<PMGenerator>& gens) {
    return sum_of(v.teams(), gens) == v.scaled(2);
}

struct DoubleCoverResult {
    SearchStatus status = SearchStatus::NotFound;
    std::vector<PMGenerator> generators;  // two per day of hap_of(v)
};

// Searches for 2v as a sum of compatible generators, two per day.  With
// `allowed` nonempty, only those generators may be used.
inline DoubleCoverResult find_double_cover(const ProblemVector& v, Budget budget = Budget::unlimited(),
                                           const std::vector<PMGenerator>& allowed = {}) {
    HapTable hap = hap_of(v);
    RegularGraph g = support_regular_graph(v);
    std::map<EqualPartition, std::vector<std::vector<Pair>>> memo;
    for (const auto& c : hap.days) {
        if (memo.count(c)) continue;
        if (allowed.empty()) {
            memo[c] = compatible_matchings(g, c);
        } else {
            auto& list = memo[c];
            for (const auto& p : allowed)
                if (p.partition() == c) list.push_back(p.matching());
            std::sort(list.begin(), list.end());
        }
    }
    std::vector<detail::SlotSpec> slots;
    for (const auto& c : hap.days) {
        slots.push_back({c, memo[c]});
        slots.push_back({c, memo[c]});
    }
    CoverResult cr = detail::cover_slots(g.edges(), 2, slots, budget);
    DoubleCoverResult out;
    out.status = cr.status;
    if (cr.status == SearchStatus::Found)
        for (std::size_t s = 0; s < slots.size(); ++s)
            out.generators.emplace_back(slots[s].matchings[cr.choice[s]], slots[s].partition);
    return out;
}

// A generator together with the day it is meant for.
struct TaggedGenerator {
    PMGenerator gen;
    int day = 0;
};

// Adjacency matrix: two candidates conflict if they share a pair or a day.
inline std::vector<std::vector<bool>> intersection_graph(const std::vector<TaggedGenerator>& cands) {
    const std::size_t k = cands.size();
    std::vector<std::vector<bool>> adj(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            bool conflict = cands[i].day == cands[j].day;
            if (!conflict)
                for (const Pair& p : cands[i].gen.matching()) {
                    const auto& m = cands[j].gen.matching();
                    if (std::find(m.begin(), m.end(), p) != m.end()) {
                        conflict = true;
                        break;
                    }
                }
            adj[i][j] = adj[j][i] = conflict;
        }
    return adj;
}

// Is there a stable set of size r in the intersection graph?  Since
// candidates of one day are pairwise adjacent, such a set picks one
// candidate for each of r distinct days.
inline bool has_disjoint_system(const std::vector<TaggedGenerator>& cands, int r,
                                Budget budget = Budget::unlimited()) {
    auto adj = intersection_graph(cands);
    const int k = static_cast<int>(cands.size());
    std::vector<int> chosen;
    auto rec = [&](auto&& self, int start) -> bool {
        budget.spend(1, "stable set search");
        if (static_cast<int>(chosen.size()) == r) return true;
        for (int i = start; i < k; ++i) {
            bool ok = true;
            for (int j : chosen)
                if (adj[i][j]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(i);
            if (self(self, i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return rec(rec, 0);
}

// All compatible perfect matchings of each day, tagged by day.
inline std::vector<TaggedGenerator> day_candidates(const RegularGraph& g, const HapTable& hap) {
    std::vector<TaggedGenerator> out;
    for (int d = 0; d < hap.day_count(); ++d)
        for (auto& m : compatible_matchings(g, hap.days[d]))
            out.push_back({PMGenerator(m, hap.days[d]), d});
    return out;
}

}  // namespace hapmono

#endif
