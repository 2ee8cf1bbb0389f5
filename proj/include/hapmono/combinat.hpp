#ifndef HAPMONO_COMBINAT_HPP
#define HAPMONO_COMBINAT_HPP

// Ground sets of the scheduling problem on n teams: team pairs K, equal
// partitions C, the vectors of N^{K u C}, and the perfect-matching
// generators PM(V).  Coordinates are globally ordered: all pairs in
// lexicographic order, then all canonical partitions ordered by their home
// side.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "hapmono/errors.hpp"

namespace hapmono {

using Mask = std::uint64_t;

inline constexpr int kMaxTeams = 62;

class TeamSet {
public:
    explicit TeamSet(int n) : n_(n) {
        if (n < 2 || n % 2 != 0 || n > kMaxTeams)
            throw invalid_input("team count must be even and in [2, " +
                                std::to_string(kMaxTeams) + "], got " + std::to_string(n));
    }
    int size() const noexcept { return n_; }
    int half() const noexcept { return n_ / 2; }
    Mask all() const noexcept { return n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1; }

private:
    int n_;
};

struct Pair {
    int a = 0;
    int b = 0;

    Pair() = default;
    Pair(int x, int y) : a(std::min(x, y)), b(std::max(x, y)) {}

    friend bool operator==(const Pair&, const Pair&) = default;
    friend auto operator<=>(const Pair&, const Pair&) = default;
};

// Unordered split of the teams into two halves, stored by the side that
// contains team 0.
class EqualPartition {
public:
    EqualPartition() = default;

    // `side` may be either half; the result is canonical.
    EqualPartition(int n, Mask side) : n_(n) {
        TeamSet ts(n);
        if ((side & ~ts.all()) != 0 || std::popcount(side) != ts.half())
            throw invalid_input("an equal partition needs exactly n/2 teams on one side");
        home_ = (side & 1) ? side : (ts.all() & ~side);
    }

    static EqualPartition from_side(int n, const std::vector<int>& side) {
        Mask m = 0;
        for (int t : side) {
            if (t < 0 || t >= n) throw invalid_input("team index out of range");
            if (m & (Mask{1} << t)) throw invalid_input("team listed twice in partition");
            m |= Mask{1} << t;
        }
        return EqualPartition(n, m);
    }

    int teams() const noexcept { return n_; }
    Mask home_mask() const noexcept { return home_; }
    Mask away_mask() const noexcept { return TeamSet(n_).all() & ~home_; }
    bool is_home(int t) const noexcept { return (home_ >> t) & 1; }
    bool crosses(int a, int b) const noexcept { return is_home(a) != is_home(b); }
    bool crosses(const Pair& p) const noexcept { return crosses(p.a, p.b); }

    std::vector<int> home_side() const {
        std::vector<int> out;
        for (int t = 0; t < n_; ++t)
            if (is_home(t)) out.push_back(t);
        return out;
    }

    friend bool operator==(const EqualPartition& x, const EqualPartition& y) {
        return x.n_ == y.n_ && x.home_ == y.home_;
    }

    // Lexicographic on the ascending home side.  For two sets of equal size
    // the lowest differing element decides.
    friend bool operator<(const EqualPartition& x, const EqualPartition& y) {
        if (x.n_ != y.n_) return x.n_ < y.n_;
        Mask diff = x.home_ ^ y.home_;
        if (diff == 0) return false;
        Mask low = diff & (~diff + 1);
        return (x.home_ & low) != 0;
    }
    friend bool operator!=(const EqualPartition& x, const EqualPartition& y) { return !(x == y); }
    friend bool operator>(const EqualPartition& x, const EqualPartition& y) { return y < x; }

private:
    int n_ = 0;
    Mask home_ = 0;
};

// Sparse nonnegative integer vector over K u C.  Zero entries are never
// stored, so defaulted equality is componentwise equality.
class ProblemVector {
public:
    using Value = std::int64_t;

    ProblemVector() = default;
    explicit ProblemVector(int n) : n_(TeamSet(n).size()) {}

    int teams() const noexcept { return n_; }

    Value edge(const Pair& p) const {
        auto it = edges_.find(p);
        return it == edges_.end() ? 0 : it->second;
    }
    Value ha(const EqualPartition& c) const {
        auto it = ha_.find(c);
        return it == ha_.end() ? 0 : it->second;
    }

    void set_edge(const Pair& p, Value v) {
        if (p.a < 0 || p.b >= n_ || p.a == p.b) throw invalid_input("pair out of range");
        if (v < 0) throw invalid_input("vector components are nonnegative");
        if (v == 0)
            edges_.erase(p);
        else
            edges_[p] = v;
    }
    void set_ha(const EqualPartition& c, Value v) {
        if (c.teams() != n_) throw dimension_mismatch("partition team count differs from vector");
        if (v < 0) throw invalid_input("vector components are nonnegative");
        if (v == 0)
            ha_.erase(c);
        else
            ha_[c] = v;
    }
    void add_edge(const Pair& p, Value v) { set_edge(p, edge(p) + v); }
    void add_ha(const EqualPartition& c, Value v) { set_ha(c, ha(c) + v); }

    const std::map<Pair, Value>& edges() const noexcept { return edges_; }
    const std::map<EqualPartition, Value>& has() const noexcept { return ha_; }

    bool is_zero() const noexcept { return edges_.empty() && ha_.empty(); }

    Value edge_sum() const {
        Value s = 0;
        for (auto& [p, v] : edges_) s += v;
        return s;
    }
    Value ha_sum() const {
        Value s = 0;
        for (auto& [c, v] : ha_) s += v;
        return s;
    }

    ProblemVector& operator+=(const ProblemVector& o) {
        if (o.n_ != n_) throw dimension_mismatch("adding vectors over different team sets");
        for (auto& [p, v] : o.edges_) add_edge(p, v);
        for (auto& [c, v] : o.ha_) add_ha(c, v);
        return *this;
    }
    friend ProblemVector operator+(ProblemVector x, const ProblemVector& y) { return x += y; }

    ProblemVector scaled(Value k) const {
        if (k < 0) throw invalid_input("negative scale");
        ProblemVector out(n_);
        if (k == 0) return out;
        for (auto& [p, v] : edges_) out.edges_[p] = v * k;
        for (auto& [c, v] : ha_) out.ha_[c] = v * k;
        return out;
    }

    // Componentwise <=.
    bool leq(const ProblemVector& o) const {
        if (o.n_ != n_) return false;
        for (auto& [p, v] : edges_)
            if (o.edge(p) < v) return false;
        for (auto& [c, v] : ha_)
            if (o.ha(c) < v) return false;
        return true;
    }

    friend bool operator==(const ProblemVector&, const ProblemVector&) = default;

private:
    int n_ = 0;
    std::map<Pair, Value> edges_;
    std::map<EqualPartition, Value> ha_;
};

class PMGenerator {
public:
    PMGenerator() = default;

    PMGenerator(std::vector<Pair> matching, EqualPartition partition)
        : matching_(std::move(matching)), partition_(partition) {
        const int n = partition_.teams();
        std::sort(matching_.begin(), matching_.end());
        if (static_cast<int>(matching_.size()) != n / 2)
            throw invalid_input("a perfect matching on n teams has n/2 pairs");
        Mask seen = 0;
        for (const Pair& p : matching_) {
            if (p.a < 0 || p.b >= n || p.a == p.b) throw invalid_input("pair out of range");
            if ((seen >> p.a) & 1 || (seen >> p.b) & 1)
                throw invalid_input("matching covers a team twice");
            seen |= (Mask{1} << p.a) | (Mask{1} << p.b);
            if (!partition_.crosses(p))
                throw invalid_input("matching pair does not cross the partition");
        }
    }

    const std::vector<Pair>& matching() const noexcept { return matching_; }
    const EqualPartition& partition() const noexcept { return partition_; }
    int teams() const noexcept { return partition_.teams(); }

    ProblemVector to_vector() const {
        ProblemVector v(teams());
        for (const Pair& p : matching_) v.set_edge(p, 1);
        v.set_ha(partition_, 1);
        return v;
    }

    friend bool operator==(const PMGenerator&, const PMGenerator&) = default;
    friend bool operator<(const PMGenerator& x, const PMGenerator& y) {
        if (x.partition_ != y.partition_) return x.partition_ < y.partition_;
        return x.matching_ < y.matching_;
    }

private:
    std::vector<Pair> matching_;
    EqualPartition partition_;
};

// ---------------------------------------------------------------------------
// Enumeration

inline std::vector<Pair> enumerate_pairs(const TeamSet& ts) {
    std::vector<Pair> out;
    const int n = ts.size();
    out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) out.emplace_back(a, b);
    return out;
}

inline std::vector<EqualPartition> enumerate_partitions(const TeamSet& ts) {
    const int n = ts.size();
    const int h = ts.half();
    std::vector<EqualPartition> out;
    // Choose the other h-1 home teams among 1..n-1 in lexicographic order.
    std::vector<int> pick(h - 1);
    std::iota(pick.begin(), pick.end(), 1);
    while (true) {
        Mask m = 1;
        for (int t : pick) m |= Mask{1} << t;
        out.emplace_back(n, m);
        int i = h - 2;
        while (i >= 0 && pick[i] == n - (h - 1) + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < h - 1; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

namespace detail {

// Perfect matchings of the bipartite graph between the two sides of `c`,
// restricted to pairs allowed by `allowed` (adjacency masks, may be empty
// for the complete graph).  Lexicographic order: the lowest free team is
// matched first, partners ascending.
template <class F>
void for_each_crossing_matching(const EqualPartition& c, const std::vector<Mask>& allowed,
                                F&& visit) {
    const int n = c.teams();
    const Mask home = c.home_mask();
    const Mask away = c.away_mask();
    std::vector<Pair> cur;
    cur.reserve(n / 2);
    auto rec = [&](auto&& self, Mask free) -> bool {
        if (free == 0) return visit(static_cast<const std::vector<Pair>&>(cur));
        int a = std::countr_zero(free);
        Mask cand = ((home >> a) & 1 ? away : home) & free;
        if (!allowed.empty()) cand &= allowed[a];
        while (cand) {
            int b = std::countr_zero(cand);
            cand &= cand - 1;
            cur.emplace_back(a, b);
            bool go_on = self(self, free & ~(Mask{1} << a) & ~(Mask{1} << b));
            cur.pop_back();
            if (!go_on) return false;
        }
        return true;
    };
    rec(rec, TeamSet(n).all());
}

}  // namespace detail

inline std::vector<PMGenerator> enumerate_pm(const TeamSet& ts) {
    std::vector<PMGenerator> out;
    for (const EqualPartition& c : enumerate_partitions(ts)) {
        detail::for_each_crossing_matching(c, {}, [&](const std::vector<Pair>& m) {
            out.emplace_back(m, c);
            return true;
        });
    }
    return out;
}

inline std::uint64_t factorial(int k) {
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

// Position of a canonical partition in enumerate_partitions order, computed
// combinatorially (colex ranking of the non-zero home teams).
inline std::uint64_t partition_rank(const EqualPartition& c) {
    const int n = c.teams();
    const int h = n / 2;
    std::vector<int> side = c.home_side();  // side[0] == 0
    std::uint64_t rank = 0;
    int prev = 0;
    for (int i = 1; i < h; ++i) {
        for (int t = prev + 1; t < side[i]; ++t) rank += binomial(n - 1 - t, h - 1 - i);
        prev = side[i];
    }
    return rank;
}

// Position of a generator in enumerate_pm order.
inline std::uint64_t pm_rank(const PMGenerator& g) {
    const int n = g.teams();
    const int h = n / 2;
    std::vector<int> partner(n, -1);
    for (const Pair& p : g.matching()) {
        partner[p.a] = p.b;
        partner[p.b] = p.a;
    }
    const EqualPartition& c = g.partition();
    Mask free = TeamSet(n).all();
    std::uint64_t r = 0;
    for (int remaining = h; remaining > 0; --remaining) {
        int a = std::countr_zero(free);
        Mask cand = (c.is_home(a) ? c.away_mask() : c.home_mask()) & free;
        int b = partner[a];
        int pos = std::popcount(cand & ((Mask{1} << b) - 1));
        r += static_cast<std::uint64_t>(pos) * factorial(remaining - 1);
        free &= ~(Mask{1} << a) & ~(Mask{1} << b);
    }
    return partition_rank(c) * factorial(h) + r;
}

inline EqualPartition partition_unrank(int n, std::uint64_t rank) {
    const int h = TeamSet(n).half();
    if (rank >= binomial(n - 1, h - 1)) throw invalid_input("partition rank out of range");
    Mask m = 1;
    int prev = 0;
    for (int i = 1; i < h; ++i) {
        int t = prev + 1;
        while (true) {
            std::uint64_t block = binomial(n - 1 - t, h - 1 - i);
            if (rank < block) break;
            rank -= block;
            ++t;
        }
        m |= Mask{1} << t;
        prev = t;
    }
    return EqualPartition(n, m);
}

inline PMGenerator pm_unrank(int n, std::uint64_t rank) {
    const int h = TeamSet(n).half();
    const std::uint64_t per = factorial(h);
    EqualPartition c = partition_unrank(n, rank / per);
    std::uint64_t r = rank % per;
    Mask free = TeamSet(n).all();
    std::vector<Pair> m;
    for (int remaining = h; remaining > 0; --remaining) {
        int a = std::countr_zero(free);
        Mask cand = (c.is_home(a) ? c.away_mask() : c.home_mask()) & free;
        std::uint64_t f = factorial(remaining - 1);
        std::uint64_t pos = r / f;
        r %= f;
        for (std::uint64_t k = 0; k < pos; ++k) cand &= cand - 1;
        int b = std::countr_zero(cand);
        m.emplace_back(a, b);
        free &= ~(Mask{1} << a) & ~(Mask{1} << b);
    }
    return PMGenerator(std::move(m), c);
}

// ---------------------------------------------------------------------------
// Dense coordinates

// Global coordinate system for n teams.  Built once per n and shared.
class Coordinates {
public:
    explicit Coordinates(const TeamSet& ts)
        : n_(ts.size()), pairs_(enumerate_pairs(ts)), parts_(enumerate_partitions(ts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) part_index_[parts_[i].home_mask()] = i;
    }

    int teams() const noexcept { return n_; }
    std::size_t pair_count() const noexcept { return pairs_.size(); }
    std::size_t partition_count() const noexcept { return parts_.size(); }
    std::size_t dimension() const noexcept { return pairs_.size() + parts_.size(); }
    const std::vector<Pair>& pairs() const noexcept { return pairs_; }
    const std::vector<EqualPartition>& partitions() const noexcept { return parts_; }

    std::size_t index(const Pair& p) const {
        return static_cast<std::size_t>(p.a) * (2 * n_ - p.a - 1) / 2 + (p.b - p.a - 1);
    }
    std::size_t index(const EqualPartition& c) const {
        return pairs_.size() + part_index_.at(c.home_mask());
    }

    std::vector<std::int64_t> dense(const ProblemVector& v) const {
        if (v.teams() != n_) throw dimension_mismatch("vector team count differs");
        std::vector<std::int64_t> out(dimension(), 0);
        for (auto& [p, x] : v.edges()) out[index(p)] = x;
        for (auto& [c, x] : v.has()) out[index(c)] = x;
        return out;
    }

    ProblemVector sparse(const std::vector<std::int64_t>& d) const {
        if (d.size() != dimension()) throw dimension_mismatch("dense vector has wrong length");
        ProblemVector v(n_);
        for (std::size_t i = 0; i < pairs_.size(); ++i)
            if (d[i] != 0) v.set_edge(pairs_[i], d[i]);
        for (std::size_t i = 0; i < parts_.size(); ++i)
            if (d[pairs_.size() + i] != 0) v.set_ha(parts_[i], d[pairs_.size() + i]);
        return v;
    }

private:
    int n_;
    std::vector<Pair> pairs_;
    std::vector<EqualPartition> parts_;
    std::unordered_map<Mask, std::size_t> part_index_;
};

// Shared coordinate system; the partition table grows as C(n, n/2)/2, so
// dense coordinates are limited to n <= 20.
inline const Coordinates& coordinates(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Coordinates>> cache;
    if (n > 20) throw budget_exceeded("dense coordinates limited to 20 teams");
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Coordinates>(TeamSet(n));
    return *slot;
}

// Lexicographic comparison in the global coordinate order.  Avoids building
// dense vectors: walks both sparse maps in coordinate order.
inline bool coordinate_less(const ProblemVector& x, const ProblemVector& y) {
    auto ex = x.edges().begin(), ey = y.edges().begin();
    while (ex != x.edges().end() || ey != y.edges().end()) {
        if (ey == y.edges().end() || (ex != x.edges().end() && ex->first < ey->first))
            return false;  // x nonzero where y is zero
        if (ex == x.edges().end() || ey->first < ex->first) return true;
        if (ex->second != ey->second) return ex->second < ey->second;
        ++ex;
        ++ey;
    }
    auto cx = x.has().begin(), cy = y.has().begin();
    while (cx != x.has().end() || cy != y.has().end()) {
        if (cy == y.has().end() || (cx != x.has().end() && cx->first < cy->first)) return false;
        if (cx == x.has().end() || cy->first < cx->first) return true;
        if (cx->second != cy->second) return cx->second < cy->second;
        ++cx;
        ++cy;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Predicates and transformations

struct Diagnosis {
    bool ok = true;
    std::string reason;
    explicit operator bool() const noexcept { return ok; }
};

inline std::vector<Pair> support_graph(const ProblemVector& v) {
    std::vector<Pair> out;
    for (auto& [p, x] : v.edges())
        if (x == 1) out.push_back(p);
    return out;
}

inline Diagnosis is_problem_vector(const ProblemVector& v) {
    const int n = v.teams();
    for (auto& [p, x] : v.edges())
        if (x > 1) {
            std::ostringstream os;
            os << "edge component {" << p.a << "," << p.b << "} = " << x << " exceeds 1";
            return {false, os.str()};
        }
    std::vector<int> deg(n, 0);
    for (const Pair& p : support_graph(v)) {
        ++deg[p.a];
        ++deg[p.b];
    }
    for (int t = 1; t < n; ++t)
        if (deg[t] != deg[0]) {
            std::ostringstream os;
            os << "support graph is not regular: team 0 has degree " << deg[0] << ", team " << t
               << " has degree " << deg[t];
            return {false, os.str()};
        }
    if (v.ha_sum() * (n / 2) != v.edge_sum()) {
        std::ostringstream os;
        os << "balance fails: " << v.ha_sum() << " days * " << n / 2 << " games != "
           << v.edge_sum() << " edges";
        return {false, os.str()};
    }
    return {true, {}};
}

using Permutation = std::vector<int>;

inline void check_permutation(const Permutation& sigma, int n) {
    if (static_cast<int>(sigma.size()) != n) throw invalid_input("permutation has wrong length");
    Mask seen = 0;
    for (int x : sigma) {
        if (x < 0 || x >= n || ((seen >> x) & 1)) throw invalid_input("not a permutation");
        seen |= Mask{1} << x;
    }
}

inline EqualPartition permute_partition(const EqualPartition& c, const Permutation& sigma) {
    Mask m = 0;
    for (int t = 0; t < c.teams(); ++t)
        if (c.is_home(t)) m |= Mask{1} << sigma[t];
    return EqualPartition(c.teams(), m);
}

inline ProblemVector permute_vector(const ProblemVector& v, const Permutation& sigma) {
    check_permutation(sigma, v.teams());
    ProblemVector out(v.teams());
    for (auto& [p, x] : v.edges()) out.set_edge(Pair(sigma[p.a], sigma[p.b]), x);
    for (auto& [c, x] : v.has()) out.set_ha(permute_partition(c, sigma), x);
    return out;
}

inline PMGenerator permute_generator(const PMGenerator& g, const Permutation& sigma) {
    std::vector<Pair> m;
    for (const Pair& p : g.matching()) m.emplace_back(sigma[p.a], sigma[p.b]);
    return PMGenerator(std::move(m), permute_partition(g.partition(), sigma));
}

inline constexpr int kMaxCanonicalTeams = 8;

// Lexicographically smallest relabeling over all n! permutations.
inline ProblemVector canonical_form(const ProblemVector& v) {
    const int n = v.teams();
    if (n > kMaxCanonicalTeams)
        throw budget_exceeded("canonical_form scans n! relabelings; limited to n <= 8");
    const Coordinates& co = coordinates(n);
    const std::vector<std::int64_t> base = co.dense(v);
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < base.size(); ++i)
        if (base[i] != 0) nz.push_back(i);

    Permutation sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<std::int64_t> best, cur(base.size());
    do {
        std::fill(cur.begin(), cur.end(), 0);
        for (std::size_t i : nz) {
            std::size_t j;
            if (i < co.pair_count()) {
                const Pair& p = co.pairs()[i];
                j = co.index(Pair(sigma[p.a], sigma[p.b]));
            } else {
                j = co.index(permute_partition(co.partitions()[i - co.pair_count()], sigma));
            }
            cur[j] = base[i];
        }
        // Smallest in coordinate order, where a nonzero leading entry is
        // larger than a zero one.
        if (best.empty() || cur < best) best = cur;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return co.sparse(best);
}

// ---------------------------------------------------------------------------
// Text format
//
//   vec <n>
//   edge <a> <b> <value>
//   part <i1>,<i2>,...,<i_{n/2}> <value>
//
// Zero coordinates are omitted; lines appear in global coordinate order.

inline std::string format_vector(const ProblemVector& v) {
    std::ostringstream os;
    os << "vec " << v.teams() << "\n";
    for (auto& [p, x] : v.edges()) os << "edge " << p.a << " " << p.b << " " << x << "\n";
    for (auto& [c, x] : v.has()) {
        os << "part ";
        auto side = c.home_side();
        for (std::size_t i = 0; i < side.size(); ++i) os << (i ? "," : "") << side[i];
        os << " " << x << "\n";
    }
    return os.str();
}

namespace detail {

inline long long parse_int(const std::string& tok, int line) {
    if (tok.empty()) throw parse_error(line, "expected an integer");
    std::size_t pos = 0;
    long long x;
    try {
        x = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw parse_error(line, "expected an integer, got '" + tok + "'");
    }
    if (pos != tok.size()) throw parse_error(line, "expected an integer, got '" + tok + "'");
    return x;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace detail

// Parses one vector from `lines[first..]`; stops at the first blank line.
// Returns the index one past the last consumed line.
inline std::size_t parse_vector_lines(const std::vector<std::string>& lines, std::size_t first,
                                      ProblemVector& out, int line_offset = 0) {
    using detail::parse_int;
    std::size_t i = first;
    while (i < lines.size() && detail::split_ws(lines[i]).empty()) ++i;
    if (i >= lines.size()) throw parse_error(static_cast<int>(i) + line_offset, "missing 'vec' header");
    auto head = detail::split_ws(lines[i]);
    const int hl = static_cast<int>(i) + 1 + line_offset;
    if (head.size() != 2 || head[0] != "vec") throw parse_error(hl, "expected 'vec <n>'");
    long long n = parse_int(head[1], hl);
    if (n < 2 || n % 2 != 0 || n > kMaxTeams) throw parse_error(hl, "bad team count");
    ProblemVector v(static_cast<int>(n));
    std::map<Pair, bool> seen_e;
    std::map<EqualPartition, bool> seen_c;
    for (++i; i < lines.size(); ++i) {
        auto tok = detail::split_ws(lines[i]);
        const int ln = static_cast<int>(i) + 1 + line_offset;
        if (tok.empty()) break;
        if (tok[0] == "edge") {
            if (tok.size() != 4) throw parse_error(ln, "expected 'edge <a> <b> <value>'");
            long long a = parse_int(tok[1], ln), b = parse_int(tok[2], ln),
                      x = parse_int(tok[3], ln);
            if (a < 0 || b >= n || a >= b) throw parse_error(ln, "edge needs 0 <= a < b < n");
            if (x < 0) throw parse_error(ln, "negative value");
            Pair p(static_cast<int>(a), static_cast<int>(b));
            if (seen_e[p]) throw parse_error(ln, "duplicate edge coordinate");
            seen_e[p] = true;
            v.set_edge(p, x);
        } else if (tok[0] == "part") {
            if (tok.size() != 3) throw parse_error(ln, "expected 'part <i1>,...,<ik> <value>'");
            std::vector<int> side;
            std::string item;
            std::istringstream ss(tok[1]);
            while (std::getline(ss, item, ',')) {
                long long t = parse_int(item, ln);
                if (t < 0 || t >= n) throw parse_error(ln, "team index out of range");
                side.push_back(static_cast<int>(t));
            }
            long long x = parse_int(tok[2], ln);
            if (x < 0) throw parse_error(ln, "negative value");
            EqualPartition c;
            try {
                c = EqualPartition::from_side(static_cast<int>(n), side);
            } catch (const invalid_input& e) {
                throw parse_error(ln, e.what());
            }
            if (seen_c[c]) throw parse_error(ln, "duplicate partition coordinate");
            seen_c[c] = true;
            v.set_ha(c, x);
        } else {
            throw parse_error(ln, "unknown record '" + tok[0] + "'");
        }
    }
    out = std::move(v);
    return i;
}

inline ProblemVector parse_vector(const std::string& text) {
    auto lines = detail::split_lines(text);
    ProblemVector v;
    std::size_t end = parse_vector_lines(lines, 0, v);
    for (std::size_t i = end; i < lines.size(); ++i)
        if (!detail::split_ws(lines[i]).empty())
            throw parse_error(static_cast<int>(i) + 1, "trailing content after vector");
    return v;
}

}  // namespace hapmono

#endif
