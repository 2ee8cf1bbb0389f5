#ifndef HAPMONO_BFACTOR_HPP
#define HAPMONO_BFACTOR_HPP

// B-factorizability verdicts, the antiprism counterexamples and the scripted
// scenario runs behind `verify-paper`.

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hapmono/budget.hpp"
#include "hapmono/combinat.hpp"
#include "hapmono/cone.hpp"
#include "hapmono/graphs.hpp"
#include "hapmono/schedule.hpp"

namespace hapmono {

enum class Verdict { BFactorizable, NotBFactorizable, Undecided };
// HapScan enumerates every HAP table of the graph; it decides the
// definition directly when the Hilbert basis alone cannot.
enum class VerdictMethod { HilbertScan, HapScan, DirectWitness };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::BFactorizable: return "BFactorizable";
        case Verdict::NotBFactorizable: return "NotBFactorizable";
        default: return "Undecided";
    }
}

inline const char* to_string(VerdictMethod m) {
    switch (m) {
        case VerdictMethod::HilbertScan: return "HilbertScan";
        case VerdictMethod::HapScan: return "HapScan";
        default: return "DirectWitness";
    }
}

struct BFactorVerdict {
    RegularGraph graph;
    Verdict verdict = Verdict::Undecided;
    std::optional<ProblemVector> witness;  // v in N-bar \ N with E(v) = E
    VerdictMethod method = VerdictMethod::HilbertScan;
    std::size_t additional = 0;            // additional basis elements with 0/1 edges
    std::vector<std::vector<Pair>> obstruction_supports;  // E(v') of additional problem vectors
    std::string note;
};

// The witness triple, checked through certificates: support equals E, a
// rational decomposition that verify_decomposition accepts, and no
// r-stable set in the intersection graph of compatible matchings.
inline Diagnosis check_witness(const RegularGraph& g, const ProblemVector& v, Budget budget = Budget::unlimited()) {
    if (v.teams() != g.vertex_count()) return {false, "team counts differ"};
    if (auto d = is_problem_vector(v); !d.ok) return d;
    if (support_graph(v) != g.edges()) return {false, "support is not the graph"};
    HapTable hap = hap_of(v);
    if (hap.day_count() != g.degree()) return {false, "day count differs from the degree"};
    ConeResult cr = cone_member(v, restricted_generators(g), budget);
    if (!cr.member) return {false, "not in the rational cone"};
    if (!verify_decomposition(v, cr.decomposition)) return {false, "cone decomposition does not re-verify"};
    if (has_disjoint_system(day_candidates(g, hap), hap.day_count(), budget))
        return {false, "a compatible edge colouring exists"};
    return {true, {}};
}

// Every multiset of r partitions with at least one compatible matching is
// tried: no schedule but in the cone means a witness.
// A nonzero seed shuffles the scan order; the verdict does not depend on it.
inline BFactorVerdict hap_scan(const RegularGraph& g, Budget budget = Budget::unlimited(), std::uint64_t seed = 0) {
    BFactorVerdict out;
    out.graph = g;
    out.method = VerdictMethod::HapScan;
    const int n = g.vertex_count();
    const int r = g.degree();
    auto gens = restricted_generators(g);
    std::vector<EqualPartition> parts;
    for (const auto& c : enumerate_partitions(TeamSet(n)))
        if (has_crossing_perfect_matching(g.adjacency(), c)) parts.push_back(c);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::shuffle(parts.begin(), parts.end(), rng);
    }
    out.verdict = Verdict::BFactorizable;
    if (r == 0 || parts.empty()) return out;
    std::vector<std::size_t> idx(r, 0);
    try {
        while (true) {
            budget.spend(1, "HAP scan");
            std::vector<EqualPartition> days;
            for (auto i : idx) days.push_back(parts[i]);
            HapTable hap(n, days);
            ScheduleResult sr = find_integral_schedule(g, hap, budget);
            if (sr.status == SearchStatus::Undecided) throw budget_exceeded("HAP scan");
            if (sr.status == SearchStatus::NotFound) {
                ProblemVector v = vector_of(g, hap);
                if (cone_member(v, gens, budget).member) {
                    out.verdict = Verdict::NotBFactorizable;
                    out.witness = v;
                    return out;
                }
            }
            int k = r - 1;
            while (k >= 0 && idx[k] + 1 == parts.size()) --k;
            if (k < 0) break;
            ++idx[k];
            for (int j = k + 1; j < r; ++j) idx[j] = idx[k];
        }
    } catch (const budget_exceeded&) {
        out.verdict = Verdict::Undecided;
        out.note = "budget exhausted during the HAP scan";
    }
    return out;
}

// Exact decomposition of 2v over PM(V).  Precondition: v in the cone.
inline DoubleCoverResult double_cover_search(const ProblemVector& v, Budget budget = Budget::unlimited()) {
    const int n = v.teams();
    auto all = enumerate_pm(TeamSet(n));
    if (!cone_member(v, all, budget).member) throw precondition_violated("double_cover_search needs v in the cone");
    std::vector<Pair> edges;
    std::map<Pair, int> eidx;
    CoverProblem pb;
    for (auto& [p, x] : v.edges()) {
        eidx[p] = static_cast<int>(edges.size());
        edges.push_back(p);
        pb.cap.push_back(static_cast<int>(2 * x));
    }
    pb.edge_count = static_cast<int>(edges.size());
    std::vector<PMGenerator> slot_gen;
    std::vector<std::vector<PMGenerator>> slot_options;
    int gid = 0;
    for (auto& [c, k] : v.has()) {
        std::vector<PMGenerator> options;
        std::vector<std::vector<int>> cands;
        for (const auto& g : all) {
            if (g.partition() != c) continue;
            std::vector<int> idx;
            bool inside = true;
            for (const Pair& p : g.matching()) {
                auto it = eidx.find(p);
                if (it == eidx.end()) {
                    inside = false;
                    break;
                }
                idx.push_back(it->second);
            }
            if (!inside) continue;
            options.push_back(g);
            cands.push_back(std::move(idx));
        }
        for (ProblemVector::Value i = 0; i < 2 * k; ++i) {
            pb.cands.push_back(cands);
            pb.group.push_back(gid);
            slot_options.push_back(options);
        }
        ++gid;
    }
    CoverResult cr = solve_cover(pb, budget);
    DoubleCoverResult out;
    out.status = cr.status;
    if (cr.status == SearchStatus::Found)
        for (std::size_t s = 0; s < slot_options.size(); ++s) out.generators.push_back(slot_options[s][cr.choice[s]]);
    return out;
}

// 2v as a decomposition with scale 2, so verify_decomposition audits it.
inline MatchingDecomposition as_decomposition(const std::vector<PMGenerator>& gens, int scale) {
    std::map<PMGenerator, Rational> coeff;
    for (const auto& g : gens) coeff[g] += 1;
    MatchingDecomposition d;
    d.scale = scale;
    for (auto& [g, c] : coeff) d.terms.push_back({g, c});
    return d;
}

// ---------------------------------------------------------------------------
// Antiprisms

// twists[d] lists i for the outer pairs {i, i+1 mod n} swapped on day d.
struct TwistSchedule {
    int n = 0;
    std::vector<std::vector<int>> twists;

    friend bool operator==(const TwistSchedule&, const TwistSchedule&) = default;
};

inline int pair_distance(int n, int i, int j) {
    int d = ((i - j) % n + n) % n;
    return std::min(d, n - d);
}

inline Diagnosis check_twists(const TwistSchedule& t) {
    if (t.twists.size() != 4) return {false, "four days are needed"};
    std::vector<int> seen(t.n, 0);
    for (const auto& day : t.twists) {
        for (int i : day) {
            if (i < 0 || i >= t.n) return {false, "twist index out of range"};
            ++seen[i];
        }
        for (std::size_t a = 0; a < day.size(); ++a)
            for (std::size_t b = a + 1; b < day.size(); ++b)
                if (pair_distance(t.n, day[a], day[b]) < 3) return {false, "two twists of one day are too close"};
    }
    for (int s : seen)
        if (s != 1) return {false, "an outer pair is not twisted exactly once"};
    return {true, {}};
}

// Alternating H/A (even teams at home), then each day's twists swapped.
inline HapTable twist_table(const TwistSchedule& t) {
    std::vector<EqualPartition> days;
    for (const auto& day : t.twists) {
        std::vector<bool> home(t.n);
        for (int i = 0; i < t.n; ++i) home[i] = i % 2 == 0;
        for (int i : day) {
            const int j = (i + 1) % t.n;
            std::swap(home[i], home[j]);
        }
        Mask m = 0;
        for (int i = 0; i < t.n; ++i)
            if (home[i]) m |= Mask{1} << i;
        days.emplace_back(t.n, m);
    }
    return HapTable(t.n, std::move(days));
}

// The stated construction: the 8- and 10-vertex tables, extended by four
// vertices at a time by repeating the last block of four outer pairs.
inline std::pair<HapTable, TwistSchedule> antiprism_hap(int n) {
    if (n < 8 || n % 2 != 0) throw invalid_input("antiprism_hap needs an even n >= 8");
    const bool mult4 = n % 4 == 0;
    const std::vector<std::vector<int>> base = mult4 ? std::vector<std::vector<int>>{{1, 4}, {0, 5}, {2, 6}, {3, 7}}
                                                     : std::vector<std::vector<int>>{{0, 3, 6}, {1, 5, 8}, {2, 7}, {4, 9}};
    const int block = mult4 ? 4 : 6;
    const int copies = (n - (mult4 ? 8 : 10)) / 4;
    TwistSchedule t{n, {}};
    for (const auto& day : base) {
        std::vector<int> out;
        for (int p : day) {
            if (p < block)
                out.push_back(p);
            else
                for (int j = 0; j <= copies; ++j) out.push_back(p + 4 * j);
        }
        std::sort(out.begin(), out.end());
        t.twists.push_back(std::move(out));
    }
    return {twist_table(t), t};
}

struct AntiprismCounterexample {
    int n = 0;
    HapTable hap;
    std::optional<TwistSchedule> twists;
    ProblemVector v;
    std::vector<PMGenerator> double_cover;  // two per day
    bool double_cover_ok = false;           // verify_double_cover
    bool no_schedule = false;               // find_integral_schedule says NotFound
    bool no_disjoint_system = false;        // has_disjoint_system(., 4) is false
    bool undecided = false;
    std::string source;
    std::vector<std::string> notes;

    bool valid() const { return double_cover_ok && no_schedule && no_disjoint_system; }
};

namespace detail {

inline AntiprismCounterexample certify_antiprism(const RegularGraph& g, const HapTable& hap, Budget budget) {
    AntiprismCounterexample c;
    c.n = g.vertex_count();
    c.hap = hap;
    c.v = vector_of(g, hap);
    DoubleCoverResult dc = find_double_cover(c.v, budget);
    ScheduleResult sr = find_integral_schedule(g, hap, budget);
    c.undecided = dc.status == SearchStatus::Undecided || sr.status == SearchStatus::Undecided;
    if (dc.status == SearchStatus::Found) {
        c.double_cover = dc.generators;
        c.double_cover_ok = verify_double_cover(c.v, c.double_cover);
    }
    c.no_schedule = sr.status == SearchStatus::NotFound;
    try {
        c.no_disjoint_system = !has_disjoint_system(day_candidates(g, hap), hap.day_count(), budget);
    } catch (const budget_exceeded&) {
        c.undecided = true;
    }
    return c;
}

}  // namespace detail

// Twist assignments in increasing pair order with days labelled by first
// use; per-day counts differ by at most one.  Returns the first certified
// one.
inline std::optional<AntiprismCounterexample> twist_search(int n, Budget budget = Budget::unlimited()) {
    if (n < 8 || n % 2 != 0) throw invalid_input("twist_search needs an even n >= 8");
    const RegularGraph g = antiprism(n);
    std::vector<int> a(n, -1);
    std::optional<AntiprismCounterexample> found;
    auto fits = [&](int i, int d) {
        for (int j = 0; j < i; ++j)
            if (a[j] == d && pair_distance(n, i, j) < 3) return false;
        return true;
    };
    auto rec = [&](auto&& self, int i, int used) -> bool {
        budget.spend(1, "twist search");
        if (i == n) {
            std::vector<int> cnt(4, 0);
            for (int d : a) ++cnt[d];
            if (*std::max_element(cnt.begin(), cnt.end()) - *std::min_element(cnt.begin(), cnt.end()) > 1)
                return false;
            TwistSchedule t{n, std::vector<std::vector<int>>(4)};
            for (int k = 0; k < n; ++k) t.twists[a[k]].push_back(k);
            HapTable hap = twist_table(t);
            ScheduleResult sr = find_integral_schedule(g, hap, budget);
            if (sr.status != SearchStatus::NotFound) return false;
            auto c = detail::certify_antiprism(g, hap, budget);
            if (!c.valid()) return false;
            c.twists = t;
            found = std::move(c);
            return true;
        }
        for (int d = 0; d < std::min(used + 1, 4); ++d)
            if (fits(i, d)) {
                a[i] = d;
                if (self(self, i + 1, std::max(used, d + 1))) return true;
                a[i] = -1;
            }
        return false;
    };
    try {
        rec(rec, 0, 0);
    } catch (const budget_exceeded&) {
        return std::nullopt;
    }
    return found;
}

inline AntiprismCounterexample antiprism_counterexample(int n, Budget budget = Budget::unlimited()) {
    if (n < 6 || n % 2 != 0) throw invalid_input("antiprism counterexamples need an even n >= 6");
    const RegularGraph g = antiprism(n);
    if (n == 6) {
        HilbertBasisResult hb = hilbert_basis(restricted_generators(g), budget, true);
        for (const auto& v : hb.additional) {
            if (!is_problem_vector(v).ok || support_graph(v) != g.edges()) continue;
            auto c = detail::certify_antiprism(g, hap_of(v), budget);
            c.source = "additional generator of the restricted monoid";
            return c;
        }
        AntiprismCounterexample none;
        none.n = 6;
        none.undecided = !hb.complete;
        none.source = "restricted Hilbert basis";
        none.notes.push_back("no additional generator with full support");
        return none;
    }
    auto [hap, twists] = antiprism_hap(n);
    auto c = detail::certify_antiprism(g, hap, budget);
    c.twists = twists;
    c.source = "stated twist table";
    if (c.valid()) return c;
    std::vector<std::string> notes;
    if (!c.no_schedule) notes.push_back("stated twist table admits a compatible 4-edge-colouring");
    if (!c.double_cover_ok) notes.push_back("stated twist table has no double cover");
    if (auto s = twist_search(n, budget)) {
        s->source = "twist search";
        s->notes = std::move(notes);
        return *s;
    }
    c.notes = std::move(notes);
    c.notes.push_back("twist search found nothing within budget");
    c.undecided = true;
    return c;
}

// Antiprisms on 8 or more vertices: the certified counterexample, mapped
// through an isomorphism and re-checked as a witness.
inline std::optional<ProblemVector> antiprism_witness(const RegularGraph& g, Budget budget) {
    const int n = g.vertex_count();
    if (n < 8 || g.degree() != 4) return std::nullopt;
    auto sigma = find_isomorphism(antiprism(n), g);
    if (!sigma) return std::nullopt;
    AntiprismCounterexample c = antiprism_counterexample(n, budget);
    if (!c.valid()) return std::nullopt;
    ProblemVector v = permute_vector(c.v, *sigma);
    if (!check_witness(g, v, budget).ok) return std::nullopt;
    return v;
}

// Hilbert basis of the restricted monoid, cut to 0/1 edge components: no
// additional problem vector means B-factorizable; one with support E is a
// witness; anything else is settled by the HAP scan.
inline BFactorVerdict decide_bfactor(const RegularGraph& g, Budget budget = Budget::unlimited(),
                                     std::uint64_t seed = 0) {
    BFactorVerdict out;
    out.graph = g;
    if (auto direct = antiprism_witness(g, budget)) {
        out.verdict = Verdict::NotBFactorizable;
        out.method = VerdictMethod::DirectWitness;
        out.witness = *direct;
        out.note = "antiprism counterexample relabelled onto the graph";
        return out;
    }
    auto gens = restricted_generators(g);
    if (gens.empty()) {
        // Only v = 0 can be a nonnegative combination, and it is in N.
        out.verdict = Verdict::BFactorizable;
        out.note = "no compatible perfect matchings";
        return out;
    }
    HilbertBasisResult hb;
    try {
        hb = hilbert_basis(gens, budget, true);
    } catch (const budget_exceeded&) {
        hb.complete = false;
    }
    if (!hb.complete) {
        out.note = "budget exhausted during the Hilbert basis computation";
        return out;
    }
    out.additional = hb.additional.size();
    std::vector<ProblemVector> obstructions;
    for (const auto& v : hb.additional)
        if (is_problem_vector(v).ok) obstructions.push_back(v);
    for (const auto& v : obstructions) out.obstruction_supports.push_back(support_graph(v));
    if (obstructions.empty()) {
        out.verdict = Verdict::BFactorizable;
        return out;
    }
    for (const auto& v : obstructions)
        if (support_graph(v) == g.edges() && check_witness(g, v, budget).ok) {
            out.verdict = Verdict::NotBFactorizable;
            out.witness = v;
            return out;
        }
    BFactorVerdict scan = hap_scan(g, budget, seed);
    scan.additional = out.additional;
    scan.obstruction_supports = out.obstruction_supports;
    return scan;
}

// ---------------------------------------------------------------------------
// Scenario reports
//
//   == <scenario> ==
//   free-form lines
//   RESULT <scenario> <PASS|FAIL|UNDECIDED>
//   certificate blocks (vec / schedule / decomposition formats)

enum class Outcome { Pass, Fail, Undecided };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "PASS";
        case Outcome::Fail: return "FAIL";
        default: return "UNDECIDED";
    }
}

struct Report {
    Report() = default;
    explicit Report(std::string name) : scenario(std::move(name)) {}

    std::string scenario;
    Outcome outcome = Outcome::Pass;
    std::vector<std::string> lines;
    std::string certificates;
    std::size_t certificates_checked = 0;
    std::size_t certificates_failed = 0;

    void say(const std::string& s) { lines.push_back(s); }
    void fail(const std::string& s) {
        lines.push_back("FAIL: " + s);
        outcome = Outcome::Fail;
    }
    void undecided(const std::string& s) {
        lines.push_back("UNDECIDED: " + s);
        if (outcome == Outcome::Pass) outcome = Outcome::Undecided;
    }
    // Records an independent certificate re-check.
    void audit(bool ok, const std::string& what) {
        ++certificates_checked;
        if (!ok) {
            ++certificates_failed;
            fail("certificate does not re-verify: " + what);
        }
    }
    void expect(bool ok, const std::string& what) {
        if (ok)
            say("ok: " + what);
        else
            fail(what);
    }
    void attach(const std::string& title, const std::string& block) {
        certificates += "# " + title + "\n" + block;
        if (!block.empty() && block.back() != '\n') certificates += "\n";
    }
};

inline std::string format_report(const Report& r) {
    std::ostringstream os;
    os << "== " << r.scenario << " ==\n";
    for (const auto& l : r.lines) os << l << "\n";
    os << "certificates re-verified: " << r.certificates_checked - r.certificates_failed << "/"
       << r.certificates_checked << "\n";
    os << "RESULT " << r.scenario << " " << to_string(r.outcome) << "\n";
    os << r.certificates;
    return os.str();
}

namespace detail {

inline bool is_octahedron(const std::vector<Pair>& edges) {
    if (edges.size() != 12) return false;
    // 4-regular on 6 vertices: the complement is a perfect matching, and
    // that graph is unique up to relabelling.
    try {
        return RegularGraph::from_edges(6, edges).degree() == 4;
    } catch (const error&) {
        return false;
    }
}

}  // namespace detail

// |C| and |PM(V)| for n = 4 and 6.
inline Report scenario_counting(Budget = Budget::unlimited()) {
    Report r{"counting"};
    const std::size_t c6 = enumerate_partitions(TeamSet(6)).size();
    const std::size_t pm6 = enumerate_pm(TeamSet(6)).size();
    const std::size_t pm4 = enumerate_pm(TeamSet(4)).size();
    r.expect(c6 == 10, "n=6 equal partitions: " + std::to_string(c6));
    r.expect(pm6 == 60, "n=6 |PM(V)|: " + std::to_string(pm6));
    r.expect(pm4 == 6, "n=4 |PM(V)|: " + std::to_string(pm4));
    // closed forms: C(n, n/2)/2 partitions, (n/2)! matchings across each
    r.audit(c6 == binomial(6, 3) / 2, "partition count closed form");
    r.audit(pm6 == c6 * factorial(3) && pm4 == 3 * factorial(2), "generator count closed form");
    return r;
}

inline Report scenario_hilbert4(Budget budget = Budget::unlimited()) {
    Report r{"hilbert4"};
    auto gens = enumerate_pm(TeamSet(4));
    auto hb = hilbert_basis(gens, budget);
    if (!hb.complete) {
        r.undecided("Hilbert basis incomplete");
        return r;
    }
    std::set<ProblemVector, decltype(&coordinate_less)> want(&coordinate_less), got(&coordinate_less);
    for (const auto& g : gens) want.insert(g.to_vector());
    for (const auto& v : hb.basis) got.insert(v);
    r.expect(hb.additional.empty(), "additional generators: " + std::to_string(hb.additional.size()));
    r.expect(want == got, "basis equals the " + std::to_string(gens.size()) + " generators");
    // each basis element is a generator
    for (const auto& v : hb.basis) r.audit(want.count(v) == 1, "basis element is a generator");
    r.attach("hilbert basis", format_hilbert(hb));
    return r;
}

// The additional generators of the n=6 monoid and their orbit count.
struct Six {
    HilbertBasisResult hb;
    std::vector<ProblemVector> classes;  // canonical forms
};

inline Six six_basis(Budget budget) {
    Six s;
    s.hb = hilbert_basis(enumerate_pm(TeamSet(6)), budget);
    std::set<ProblemVector, decltype(&coordinate_less)> seen(&coordinate_less);
    for (const auto& v : s.hb.additional) seen.insert(canonical_form(v));
    s.classes.assign(seen.begin(), seen.end());
    return s;
}

inline Report scenario_hilbert6(Budget budget = Budget::unlimited()) {
    Report r{"hilbert6"};
    Six s = six_basis(budget);
    if (!s.hb.complete) {
        r.undecided("Hilbert basis incomplete");
        return r;
    }
    r.say("basis size " + std::to_string(s.hb.basis.size()) + ", rank " + std::to_string(s.hb.stats.rank) +
          ", support hyperplanes " + std::to_string(s.hb.stats.support_hyperplanes));
    r.expect(s.hb.additional.size() == 90, "additional generators: " + std::to_string(s.hb.additional.size()));
    r.expect(s.classes.size() == 1, "isomorphism classes: " + std::to_string(s.classes.size()));
    auto all = enumerate_pm(TeamSet(6));
    std::size_t good = 0;
    for (const auto& v : s.hb.additional) {
        bool ok = is_problem_vector(v).ok && detail::is_octahedron(support_graph(v)) && v.ha_sum() == 4;
        good += ok;
    }
    r.expect(good == s.hb.additional.size(),
             "problem vectors on an octahedron with HA weight 4: " + std::to_string(good));
    // Each additional generator lies in the cone: re-checked by decomposition.
    for (const auto& v : s.hb.additional) {
        ConeResult cr = cone_member(v, all, budget);
        r.audit(cr.member && verify_decomposition(v, cr.decomposition), "cone decomposition of an additional generator");
    }
    if (!s.classes.empty()) r.attach("class representative", format_vector(s.hb.additional.front()));
    return r;
}

// The representative plus one day: all ten extensions are schedulable on K6.
inline Report scenario_nocount6(Budget budget = Budget::unlimited()) {
    Report r{"nocount6"};
    Six s = six_basis(budget);
    if (!s.hb.complete) {
        r.undecided("Hilbert basis incomplete");
        return r;
    }
    r.expect(s.hb.additional.size() == 90 && s.classes.size() == 1,
             "precheck: " + std::to_string(s.hb.additional.size()) + " additional generators in " +
                 std::to_string(s.classes.size()) + " class");
    if (s.hb.additional.empty()) return r;
    const ProblemVector& rep = s.hb.additional.front();
    HapTable base = hap_of(rep);
    const RegularGraph k6 = complete_graph(6);
    int ok = 0;
    for (const auto& c : enumerate_partitions(TeamSet(6))) {
        std::vector<EqualPartition> days = base.days;
        days.push_back(c);
        HapTable hap(6, days);
        ScheduleResult sr = find_integral_schedule(k6, hap, budget);
        if (sr.status == SearchStatus::Undecided) {
            r.undecided("extension search ran out of budget");
            continue;
        }
        if (sr.status != SearchStatus::Found) {
            r.fail("extension without an integral schedule");
            r.attach("unschedulable extension", format_hap(hap));
            continue;
        }
        r.audit(check_schedule(k6, hap, sr.schedule).ok, "extension schedule");
        ++ok;
        r.attach("extension " + std::to_string(ok), format_hap(hap) + format_schedule(sr.schedule));
    }
    r.expect(ok == 10, "extensions with an integral 5-day schedule: " + std::to_string(ok) + "/10");
    return r;
}

// The half-integral point built from the representative's double cover,
// with the complementary matching on a fifth day.
struct HalfIntegralPoint {
    HapTable hap;
    PolytopeInstance polytope;
    std::vector<Rational> point;
    bool feasible = false;
    bool integral = true;
    bool rigid = false;
};

inline HalfIntegralPoint half_integral_point(const ProblemVector& rep, Budget budget = Budget::unlimited()) {
    HalfIntegralPoint h;
    const RegularGraph oct = support_regular_graph(rep);
    const RegularGraph k6 = complete_graph(6);
    std::vector<Pair> rest;
    for (const Pair& p : k6.edges())
        if (!oct.has_edge(p)) rest.push_back(p);
    DoubleCoverResult dc = find_double_cover(rep, budget);
    if (dc.status != SearchStatus::Found) return h;
    HapTable base = hap_of(rep);
    std::optional<EqualPartition> fifth;
    for (const auto& c : enumerate_partitions(TeamSet(6)))
        if (std::all_of(rest.begin(), rest.end(), [&](const Pair& p) { return c.crosses(p); })) {
            fifth = c;
            break;
        }
    if (!fifth) return h;
    std::vector<EqualPartition> days = base.days;
    days.push_back(*fifth);
    h.hap = HapTable(6, days);
    h.polytope = build_polytope(k6, h.hap);
    const auto& vars = h.polytope.variables;
    h.point.assign(vars.size(), 0);
    // Day d of the base gets the two covering matchings of partition d;
    // repeated partitions share their matchings in order.
    std::map<EqualPartition, std::vector<const PMGenerator*>> pool;
    for (const auto& g : dc.generators) pool[g.partition()].push_back(&g);
    for (int d = 0; d < base.day_count(); ++d) {
        auto& list = pool[base.days[d]];
        for (int k = 0; k < 2 && !list.empty(); ++k) {
            const PMGenerator* g = list.front();
            list.erase(list.begin());
            for (const Pair& p : g->matching())
                for (std::size_t i = 0; i < vars.size(); ++i)
                    if (vars[i].day == d && vars[i].edge == p) h.point[i] += Rational(1, 2);
        }
    }
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].day == 4 && std::find(rest.begin(), rest.end(), vars[i].edge) != rest.end()) h.point[i] = 1;
    h.feasible = satisfies(h.polytope.lp, h.point);
    h.integral = is_integral(h.point);
    // Rigidity: with day-5 values fixed, every coordinate has equal min and max.
    LinearProgram fixed = h.polytope.lp;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].day != 4) continue;
        std::vector<Rational> row(fixed.cols, 0);
        row[i] = 1;
        fixed.a.push_back(row);
        fixed.b.push_back(h.point[i]);
        ++fixed.rows;
    }
    h.rigid = true;
    for (std::size_t i = 0; i < vars.size() && h.rigid; ++i) {
        for (int sgn : {1, -1}) {
            LinearProgram lp = fixed;
            lp.c.assign(lp.cols, 0);
            lp.c[i] = sgn;
            LpResult res = solve_lp(lp, budget);
            if (res.status != LpStatus::Optimal || res.value != sgn * h.point[i]) {
                h.rigid = false;
                break;
            }
        }
    }
    return h;
}

inline Report scenario_proposition(Budget budget = Budget::unlimited()) {
    Report r{"proposition"};
    Six s = six_basis(budget);
    if (!s.hb.complete || s.hb.additional.empty()) {
        r.undecided("no representative available");
        return r;
    }
    HalfIntegralPoint h = half_integral_point(s.hb.additional.front(), budget);
    if (h.point.empty()) {
        r.fail("could not build the half-integral point");
        return r;
    }
    r.expect(h.feasible, "point satisfies the polytope system exactly");
    r.audit(satisfies(h.polytope.lp, h.point), "polytope point");
    r.expect(!h.integral, "point is non-integral");
    r.expect(h.rigid, "point is the only solution once day-5 values are fixed");
    std::ostringstream os;
    os << format_hap(h.hap);
    for (std::size_t i = 0; i < h.point.size(); ++i)
        if (h.point[i] != 0)
            os << "x day " << h.polytope.variables[i].day + 1 << " {" << h.polytope.variables[i].edge.a << ","
               << h.polytope.variables[i].edge.b << "} " << to_string(h.point[i]) << "\n";
    r.attach("half-integral point", os.str());
    return r;
}

inline Report scenario_antiprism(Budget budget = Budget::unlimited(), std::vector<int> sizes = {6, 8, 10, 12, 14}) {
    Report r{"antiprism"};
    for (int n : sizes) {
        AntiprismCounterexample c = antiprism_counterexample(n, budget);
        std::string tag = "n=" + std::to_string(n) + " (" + c.source + ")";
        for (const auto& note : c.notes) r.say(tag + ": " + note);
        if (c.undecided && !c.valid()) {
            r.undecided(tag + ": budget exhausted");
            continue;
        }
        r.expect(c.double_cover_ok, tag + ": double cover 2v in N");
        r.expect(c.no_schedule, tag + ": no compatible 4-edge-colouring");
        r.expect(c.no_disjoint_system, tag + ": no stable 4-set in the intersection graph");
        if (!c.valid()) continue;
        // Independent re-checks: the cover as a scale-2 decomposition, and
        // the vector's shape.
        r.audit(verify_decomposition(c.v, as_decomposition(c.double_cover, 2)), tag + " double cover");
        r.audit(support_graph(c.v) == antiprism(n).edges() && is_problem_vector(c.v).ok, tag + " support");
        if (c.twists) r.audit(check_twists(*c.twists).ok, tag + " twist invariants");
        std::ostringstream os;
        os << format_vector(c.v) << "\n" << format_decomposition(as_decomposition(c.double_cover, 2));
        r.attach("antiprism " + std::to_string(n), format_hap(c.hap) + os.str());
    }
    return r;
}

inline Report scenario_bfactor(Budget budget = Budget::unlimited()) {
    Report r{"bfactor"};
    const std::vector<std::pair<std::string, RegularGraph>> graphs = {
        {"3-cube", prism(4)}, {"pentagonal prism", prism(5)}, {"K3,3", complete_bipartite(3)}};
    for (const auto& [name, g] : graphs) {
        auto gens = restricted_generators(g);
        HilbertBasisResult hb = hilbert_basis(gens, budget);
        if (!hb.complete) {
            r.undecided(name + ": Hilbert basis incomplete");
            continue;
        }
        BFactorVerdict v = decide_bfactor(g, budget);
        r.say(name + ": " + std::to_string(gens.size()) + " generators, rank " + std::to_string(hb.stats.rank) +
              ", basis " + std::to_string(hb.basis.size()));
        r.expect(hb.additional.empty(), name + ": additional generators " + std::to_string(hb.additional.size()));
        r.expect(v.verdict == Verdict::BFactorizable, name + ": verdict " + to_string(v.verdict));
        // Every basis element must be a generator of the monoid.
        std::set<ProblemVector, decltype(&coordinate_less)> gs(&coordinate_less);
        for (const auto& x : gens) gs.insert(x.to_vector());
        bool all = std::all_of(hb.basis.begin(), hb.basis.end(), [&](const ProblemVector& x) { return gs.count(x); });
        r.audit(all && hb.basis.size() == gs.size(), name + " basis equals the generators");
    }
    return r;
}

// Petersen: 3-day tables built from pairings of its six perfect matchings.
struct PetersenFindings {
    std::size_t tables_tried = 0;
    std::size_t no_schedule = 0;
    std::size_t undecided = 0;
    std::optional<HapTable> table;  // first with a verified double cover
    std::vector<PMGenerator> cover;
};

inline PetersenFindings petersen_tables(Budget budget = Budget::unlimited()) {
    PetersenFindings f;
    const RegularGraph g = petersen();
    auto pms = perfect_matchings(g.adjacency(), TeamSet(10).all());
    auto parts = enumerate_partitions(TeamSet(10));
    auto common = [&](const std::vector<Pair>& m1, const std::vector<Pair>& m2) -> std::optional<EqualPartition> {
        for (const auto& c : parts) {
            auto crosses = [&](const std::vector<Pair>& m) {
                return std::all_of(m.begin(), m.end(), [&](const Pair& p) { return c.crosses(p); });
            };
            if (crosses(m1) && crosses(m2)) return c;
        }
        return std::nullopt;
    };
    // Pairings of the matchings into three days.
    std::vector<int> rest(pms.size());
    for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = static_cast<int>(i);
    std::vector<std::pair<int, int>> pairing;
    auto rec = [&](auto&& self, std::vector<int> left) -> void {
        if (left.empty()) {
            std::vector<EqualPartition> days;
            for (auto [a, b] : pairing) {
                auto c = common(pms[a], pms[b]);
                if (!c) return;
                days.push_back(*c);
            }
            HapTable hap(10, days);
            ++f.tables_tried;
            ScheduleResult sr = find_integral_schedule(g, hap, budget);
            if (sr.status == SearchStatus::NotFound) ++f.no_schedule;
            if (sr.status == SearchStatus::Undecided) ++f.undecided;
            if (!f.table) {
                ProblemVector v = vector_of(g, hap);
                std::vector<PMGenerator> cover;
                for (std::size_t d = 0; d < pairing.size(); ++d) {
                    cover.emplace_back(pms[pairing[d].first], days[d]);
                    cover.emplace_back(pms[pairing[d].second], days[d]);
                }
                if (verify_double_cover(v, cover)) {
                    f.table = hap;
                    f.cover = cover;
                }
            }
            return;
        }
        if (left.size() % 2 != 0) return;
        const int a = left.front();
        for (std::size_t k = 1; k < left.size(); ++k) {
            std::vector<int> next;
            for (std::size_t j = 1; j < left.size(); ++j)
                if (j != k) next.push_back(left[j]);
            pairing.push_back({a, left[k]});
            self(self, next);
            pairing.pop_back();
        }
    };
    if (pms.size() % 2 == 0) rec(rec, rest);
    return f;
}

inline Report scenario_petersen(Budget budget = Budget::unlimited()) {
    Report r{"petersen"};
    const RegularGraph g = petersen();
    r.expect(!is_edge_colorable(g), "Petersen graph has no 3-edge-colouring");
    PetersenFindings f = petersen_tables(budget);
    r.say("3-day tables tried: " + std::to_string(f.tables_tried));
    if (f.undecided) r.undecided("schedule search ran out of budget");
    r.expect(f.tables_tried > 0 && f.no_schedule == f.tables_tried,
             "no schedule for any table tried: " + std::to_string(f.no_schedule) + "/" +
                 std::to_string(f.tables_tried));
    r.expect(f.table.has_value(), "a table with a double cover");
    if (!f.table) return r;
    const ProblemVector v2 = vector_of(g, *f.table);
    r.audit(verify_decomposition(v2, as_decomposition(f.cover, 2)), "Petersen double cover");
    r.attach("Petersen table", format_hap(*f.table) + format_decomposition(as_decomposition(f.cover, 2)));

    // Plus a complementary matching on a fourth day that forces it.
    const RegularGraph plus = petersen_plus_matching();
    const std::vector<Pair> m = first_complement_matching(g);
    std::optional<HapTable> hap4;
    for (const auto& c : enumerate_partitions(TeamSet(10))) {
        if (!std::all_of(m.begin(), m.end(), [&](const Pair& p) { return c.crosses(p); })) continue;
        std::vector<EqualPartition> days = f.table->days;
        days.push_back(c);
        HapTable h(10, days);
        ScheduleResult sr = find_integral_schedule(plus, h, budget);
        if (sr.status == SearchStatus::NotFound) {
            hap4 = h;
            break;
        }
    }
    r.expect(hap4.has_value(), "a fourth day with no compatible 4-edge-colouring of the extended graph");
    if (!hap4) return r;
    const ProblemVector v = vector_of(plus, *hap4);
    ProblemVector v1(10);
    for (const Pair& p : m) v1.set_edge(p, 1);
    v1.set_ha(hap4->days.back(), 1);
    ProblemVector sum = v1;
    sum += v2;
    r.expect(sum == v, "v = v1 + v2");
    auto all = enumerate_pm(TeamSet(10));
    auto restricted = restricted_generators(plus);
    for (auto [name, x] : {std::pair<std::string, ProblemVector>{"v", v}, {"v1", v1}, {"v2", v2}}) {
        ConeResult cr = cone_member(x, restricted, budget);
        r.expect(cr.member, name + " is in the rational cone");
        if (cr.member) r.audit(verify_decomposition(x, cr.decomposition), name + " cone decomposition");
    }
    MonoidResult mr = monoid_member(v, restricted, budget);
    r.expect(mr.status == SearchStatus::NotFound, "v is not in the monoid");
    r.audit(!has_disjoint_system(day_candidates(plus, *hap4), 4, budget), "no stable 4-set for v");
    r.attach("extended table", format_hap(*hap4) + format_vector(v));
    return r;
}

// Fractional vs cone and integral vs monoid on every small instance.
inline Report scenario_lemmas(Budget budget = Budget::unlimited()) {
    Report r{"lemmas"};
    const auto parts = enumerate_partitions(TeamSet(4));
    const auto gens = enumerate_pm(TeamSet(4));
    std::vector<RegularGraph> graphs = {complete_graph(4)};
    // 2-regular subgraphs of K4: the three 4-cycles.
    for (const auto& cyc : std::vector<std::vector<int>>{{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}}) {
        std::vector<Pair> e;
        for (int i = 0; i < 4; ++i) e.emplace_back(cyc[i], cyc[(i + 1) % 4]);
        graphs.push_back(RegularGraph::from_edges(4, e));
    }
    std::size_t total = 0, agree_frac = 0, agree_int = 0;
    for (const auto& g : graphs) {
        const int r_days = g.degree();
        std::vector<std::size_t> idx(r_days, 0);
        while (true) {
            std::vector<EqualPartition> days;
            for (auto i : idx) days.push_back(parts[i]);
            HapTable hap(4, days);
            ProblemVector v = vector_of(g, hap);
            PolytopeInstance p = build_polytope(g, hap);
            FractionalResult fr = fractional_feasible(p, budget);
            ConeResult cr = cone_member(v, gens, budget);
            ScheduleResult sr = find_integral_schedule(g, hap, budget);
            MonoidResult mr = monoid_member(v, gens, budget);
            ++total;
            agree_frac += fr.feasible == cr.member;
            agree_int += (sr.status == SearchStatus::Found) == (mr.status == SearchStatus::Found);
            if (fr.feasible)
                r.audit(satisfies(p.lp, fr.point), "polytope point");
            else
                r.audit(is_farkas_certificate(p.lp, fr.farkas), "Farkas certificate");
            if (cr.member)
                r.audit(verify_decomposition(v, cr.decomposition), "cone decomposition");
            else
                r.audit(verify_separation(v, gens, cr.hyperplane), "separating hyperplane");
            if (sr.status == SearchStatus::Found) r.audit(check_schedule(g, hap, sr.schedule).ok, "schedule");
            if (mr.status == SearchStatus::Found) r.audit(verify_decomposition(v, mr.decomposition), "monoid decomposition");
            int k = r_days - 1;
            while (k >= 0 && idx[k] + 1 == parts.size()) --k;
            if (k < 0) break;
            ++idx[k];
            for (int j = k + 1; j < r_days; ++j) idx[j] = 0;
        }
    }
    r.say("instances: " + std::to_string(total));
    r.expect(agree_frac == total, "fractional feasibility agrees with cone membership: " + std::to_string(agree_frac) +
                                      "/" + std::to_string(total));
    r.expect(agree_int == total, "integral schedule agrees with monoid membership: " + std::to_string(agree_int) + "/" +
                                     std::to_string(total));
    return r;
}

// K4,4 with sides {0..3} and {4..7}, h = home teams in {0..3}.  Type 1:
// even split (h = 2); type 2: h = 1 or 3, where the lone home team of one
// side meets the lone away team of the other in every compatible matching;
// type 3: h = 0 or 4, one side entirely at home.
inline int k44_type(const EqualPartition& c) {
    int h = 0;
    for (int t = 0; t < 4; ++t) h += c.is_home(t);
    if (h == 2) return 1;
    return h == 1 || h == 3 ? 2 : 3;
}

// Checkpoint lines: "<case> <generators> <basis> <additional problem vectors>".
inline std::map<std::string, std::vector<std::size_t>> read_checkpoint(const std::string& path) {
    std::map<std::string, std::vector<std::size_t>> out;
    if (path.empty()) return out;
    std::ifstream in(path);
    std::string key;
    std::size_t a, b, c;
    while (in >> key >> a >> b >> c) out[key] = {a, b, c};
    return out;
}

inline Report scenario_k44(Budget budget = Budget::unlimited(), const std::string& checkpoint = {}) {
    Report r{"k44"};
    const RegularGraph g = complete_bipartite(4);
    auto gens = restricted_generators(g);
    std::map<int, std::size_t> per_type;
    bool forced_ok = true;
    for (const auto& c : enumerate_partitions(TeamSet(8))) {
        auto ms = compatible_matchings(g, c);
        if (ms.empty()) continue;
        per_type[k44_type(c)] += ms.size();
        if (k44_type(c) == 2) {
            std::map<Pair, std::size_t> cnt;
            for (const auto& m : ms)
                for (const Pair& p : m) ++cnt[p];
            forced_ok = forced_ok && std::any_of(cnt.begin(), cnt.end(), [&](auto& kv) { return kv.second == ms.size(); });
        }
    }
    for (auto [t, k] : per_type) r.say("type " + std::to_string(t) + ": " + std::to_string(k) + " generators");
    r.expect(forced_ok, "every type-2 partition forces an edge");
    // Case A: a type-2 day is present, so its forced edge {0,4} (up to
    // symmetry) is used by that day alone and dropped from the rest.
    // Case B: no type-2 day at all.
    std::vector<PMGenerator> case_a, case_b;
    const Pair forced(0, 4);
    for (const auto& x : gens) {
        const auto& m = x.matching();
        if (std::find(m.begin(), m.end(), forced) == m.end()) case_a.push_back(x);
        if (k44_type(x.partition()) != 2) case_b.push_back(x);
    }
    auto done = read_checkpoint(checkpoint);
    for (auto [key, gs] : {std::pair<std::string, std::vector<PMGenerator>*>{"A", &case_a}, {"B", &case_b}}) {
        const std::string name = "case " + key;
        std::size_t basis = 0, pv = 0;
        if (auto it = done.find(key); it != done.end() && it->second[0] == gs->size()) {
            basis = it->second[1];
            pv = it->second[2];
            r.say(name + ": resumed from checkpoint");
        } else {
            HilbertBasisResult hb = hilbert_basis(*gs, budget, true);
            if (!hb.complete) {
                r.undecided(name + ": Hilbert basis incomplete within budget");
                continue;
            }
            basis = hb.basis.size();
            for (const auto& v : hb.additional) pv += is_problem_vector(v).ok;
            if (!checkpoint.empty()) {
                std::ofstream out(checkpoint, std::ios::app);
                out << key << " " << gs->size() << " " << basis << " " << pv << "\n";
            }
        }
        r.say(name + ": " + std::to_string(gs->size()) + " generators, basis " + std::to_string(basis) +
              " with 0/1 edges");
        r.expect(pv == 0, name + ": additional problem vectors " + std::to_string(pv));
    }
    return r;
}

struct ScenarioOptions {
    std::string checkpoint;  // used by long runs only
};

struct Scenario {
    std::string name;
    bool slow = false;
    std::function<Report(Budget, const ScenarioOptions&)> run;
};

inline const std::vector<Scenario>& scenarios() {
    using O = const ScenarioOptions&;
    static const std::vector<Scenario> list = {
        {"counting", false, [](Budget b, O) { return scenario_counting(b); }},
        {"hilbert4", false, [](Budget b, O) { return scenario_hilbert4(b); }},
        {"hilbert6", false, [](Budget b, O) { return scenario_hilbert6(b); }},
        {"nocount6", false, [](Budget b, O) { return scenario_nocount6(b); }},
        {"proposition", false, [](Budget b, O) { return scenario_proposition(b); }},
        {"antiprism", false, [](Budget b, O) { return scenario_antiprism(b); }},
        {"bfactor", false, [](Budget b, O) { return scenario_bfactor(b); }},
        {"petersen", false, [](Budget b, O) { return scenario_petersen(b); }},
        {"lemmas", false, [](Budget b, O) { return scenario_lemmas(b); }},
        {"k44", true, [](Budget b, O o) { return scenario_k44(b, o.checkpoint); }},
    };
    return list;
}

inline const Scenario* find_scenario(const std::string& name) {
    for (const auto& s : scenarios())
        if (s.name == name) return &s;
    return nullptr;
}

// Runs one scenario, mapping an escaped budget exception to UNDECIDED.
inline Report run_scenario(const Scenario& s, Budget budget, const ScenarioOptions& opt = {}) {
    try {
        return s.run(budget, opt);
    } catch (const budget_exceeded& e) {
        Report r{s.name};
        r.undecided(e.what());
        return r;
    } catch (const error& e) {
        Report r{s.name};
        r.fail(e.what());
        return r;
    }
}

}  // namespace hapmono

#endif
