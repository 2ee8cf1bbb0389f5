#ifndef HAPMONO_GRAPHS_HPP
#define HAPMONO_GRAPHS_HPP

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hapmono/combinat.hpp"
#include "hapmono/matching.hpp"

namespace hapmono {

// Returns the common degree of the simple graph on `n` vertices, or throws
// self_loop / duplicate_edge / not_regular.
inline int validate_regular(int n, const std::vector<Pair>& edges) {
    if (n < 1 || n > kMaxTeams) throw invalid_input("vertex count out of range");
    std::set<Pair> seen;
    std::vector<int> deg(n, 0);
    for (const Pair& p : edges) {
        if (p.a == p.b) throw self_loop("self-loop at vertex " + std::to_string(p.a));
        if (p.a < 0 || p.b >= n) throw invalid_input("edge endpoint out of range");
        if (!seen.insert(p).second)
            throw duplicate_edge("duplicate edge {" + std::to_string(p.a) + "," +
                                 std::to_string(p.b) + "}");
        ++deg[p.a];
        ++deg[p.b];
    }
    for (int v = 1; v < n; ++v)
        if (deg[v] != deg[0])
            throw not_regular("vertex 0 has degree " + std::to_string(deg[0]) + ", vertex " +
                              std::to_string(v) + " has degree " + std::to_string(deg[v]));
    return deg[0];
}

class RegularGraph {
public:
    RegularGraph() = default;

    static RegularGraph from_edges(int n, std::vector<Pair> edges) {
        RegularGraph g;
        g.degree_ = validate_regular(n, edges);
        std::sort(edges.begin(), edges.end());
        g.n_ = n;
        g.edges_ = std::move(edges);
        g.adj_ = adjacency_of(n, g.edges_);
        return g;
    }

    int vertex_count() const noexcept { return n_; }
    int degree() const noexcept { return degree_; }
    const std::vector<Pair>& edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const Adjacency& adjacency() const noexcept { return adj_; }
    bool has_edge(int a, int b) const { return (adj_[a] >> b) & 1; }
    bool has_edge(const Pair& p) const { return has_edge(p.a, p.b); }

    // chi_E: edge components 1 on E, everything else 0.
    ProblemVector indicator() const {
        ProblemVector v(n_);
        for (const Pair& p : edges_) v.set_edge(p, 1);
        return v;
    }

    friend bool operator==(const RegularGraph& x, const RegularGraph& y) {
        return x.n_ == y.n_ && x.edges_ == y.edges_;
    }

private:
    int n_ = 0;
    int degree_ = 0;
    std::vector<Pair> edges_;
    Adjacency adj_;
};

inline RegularGraph complete_graph(int n) {
    if (n < 2) throw invalid_input("complete graph needs n >= 2");
    std::vector<Pair> e;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) e.emplace_back(a, b);
    return RegularGraph::from_edges(n, e);
}

// Sides {0..k-1} and {k..2k-1}.
inline RegularGraph complete_bipartite(int k) {
    if (k < 1) throw invalid_input("complete bipartite graph needs k >= 1");
    std::vector<Pair> e;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) e.emplace_back(a, k + b);
    return RegularGraph::from_edges(2 * k, e);
}

// Vertices on a cycle; i is adjacent to i+1 and i+2 (mod n).
inline RegularGraph antiprism(int n) {
    if (n < 6 || n % 2 != 0) throw invalid_input("antiprism needs an even n >= 6");
    std::vector<Pair> e;
    for (int i = 0; i < n; ++i) {
        e.emplace_back(i, (i + 1) % n);
        e.emplace_back(i, (i + 2) % n);
    }
    return RegularGraph::from_edges(n, e);
}

// Cycles 0..k-1 and k..2k-1 joined by rungs {i, i+k}.
inline RegularGraph prism(int k) {
    if (k < 3) throw invalid_input("prism needs k >= 3");
    std::vector<Pair> e;
    for (int i = 0; i < k; ++i) {
        e.emplace_back(i, (i + 1) % k);
        e.emplace_back(k + i, k + (i + 1) % k);
        e.emplace_back(i, i + k);
    }
    return RegularGraph::from_edges(2 * k, e);
}

// Outer 5-cycle 0..4, inner pentagram 5..9, spokes {i, i+5}.
inline RegularGraph petersen() {
    std::vector<Pair> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(5 + i, 5 + (i + 2) % 5);
        e.emplace_back(i, i + 5);
    }
    return RegularGraph::from_edges(10, e);
}

// The lexicographically first perfect matching of the complement of `g`.
inline std::vector<Pair> first_complement_matching(const RegularGraph& g) {
    const int n = g.vertex_count();
    Adjacency comp(n);
    const Mask all = TeamSet(n).all();
    for (int v = 0; v < n; ++v) comp[v] = all & ~g.adjacency()[v] & ~(Mask{1} << v);
    std::vector<Pair> found;
    for_each_perfect_matching(comp, all, [&](const std::vector<Pair>& m) {
        found = m;
        return false;
    });
    if (found.empty()) throw invalid_input("complement has no perfect matching");
    return found;
}

inline RegularGraph petersen_plus_matching() {
    RegularGraph p = petersen();
    std::vector<Pair> e = p.edges();
    for (const Pair& q : first_complement_matching(p)) e.push_back(q);
    return RegularGraph::from_edges(10, e);
}

inline RegularGraph cycle_graph(int n) {
    if (n < 3) throw invalid_input("cycle needs n >= 3");
    std::vector<Pair> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return RegularGraph::from_edges(n, e);
}

// Length of a shortest cycle, 0 for a forest.
inline int girth(const RegularGraph& g) {
    const int n = g.vertex_count();
    int best = 0;
    for (int s = 0; s < n; ++s) {
        std::vector<int> dist(n, -1), parent(n, -1);
        std::deque<int> q{s};
        dist[s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (Mask m = g.adjacency()[u]; m; m &= m - 1) {
                int w = std::countr_zero(m);
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push_back(w);
                } else if (parent[u] != w) {
                    int len = dist[u] + dist[w] + 1;
                    if (best == 0 || len < best) best = len;
                }
            }
        }
    }
    return best;
}

// sigma with {a,b} in E(g) iff {sigma[a], sigma[b]} in E(h); vertices of g
// are placed in BFS order so every new vertex has a placed neighbour.
inline std::optional<Permutation> find_isomorphism(const RegularGraph& g, const RegularGraph& h) {
    const int n = g.vertex_count();
    if (n != h.vertex_count() || g.degree() != h.degree() || g.edge_count() != h.edge_count()) return std::nullopt;
    std::vector<int> order;
    std::vector<bool> queued(n, false);
    for (int s = 0; s < n; ++s) {
        if (queued[s]) continue;
        std::deque<int> q{s};
        queued[s] = true;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            order.push_back(v);
            for (int w = 0; w < n; ++w)
                if (g.has_edge(v, w) && !queued[w]) {
                    queued[w] = true;
                    q.push_back(w);
                }
        }
    }
    Permutation sigma(n, -1);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, std::size_t k) -> bool {
        if (k == order.size()) return true;
        const int v = order[k];
        for (int x = 0; x < n; ++x) {
            if (used[x]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j) {
                const int u = order[j];
                ok = g.has_edge(u, v) == h.has_edge(sigma[u], x);
            }
            if (!ok) continue;
            sigma[v] = x;
            used[x] = true;
            if (self(self, k + 1)) return true;
            used[x] = false;
            sigma[v] = -1;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return sigma;
}

// Decides whether the r-regular graph has a proper r-edge-coloring, i.e.
// whether E splits into r perfect matchings.
inline bool is_edge_colorable(const RegularGraph& g) {
    const int n = g.vertex_count();
    const int k = g.degree();
    if (k == 0) return true;
    if (n % 2 != 0) return false;
    const Mask all = TeamSet(n).all();
    Adjacency rest = g.adjacency();
    auto rec = [&](auto&& self, int left) -> bool {
        if (left == 0) return true;
        bool ok = false;
        // Fix the matching that covers the lowest edge of vertex 0 first to
        // break color symmetry: vertex 0's neighbours get distinct colors.
        for_each_perfect_matching(rest, all, [&](const std::vector<Pair>& m) {
            if (std::countr_zero(rest[0]) != m.front().b) return true;
            for (const Pair& p : m) {
                rest[p.a] &= ~(Mask{1} << p.b);
                rest[p.b] &= ~(Mask{1} << p.a);
            }
            ok = self(self, left - 1);
            for (const Pair& p : m) {
                rest[p.a] |= Mask{1} << p.b;
                rest[p.b] |= Mask{1} << p.a;
            }
            return !ok;
        });
        return ok;
    };
    return rec(rec, k);
}

// ---------------------------------------------------------------------------
// Text format
//
//   graph <n>
//   e <a> <b>        one line per edge, 0 <= a < b < n, sorted

inline std::string format_graph(const RegularGraph& g) {
    std::ostringstream os;
    os << "graph " << g.vertex_count() << "\n";
    for (const Pair& p : g.edges()) os << "e " << p.a << " " << p.b << "\n";
    return os.str();
}

inline RegularGraph parse_graph(const std::string& text) {
    using detail::parse_int;
    auto lines = detail::split_lines(text);
    std::size_t i = 0;
    while (i < lines.size() && detail::split_ws(lines[i]).empty()) ++i;
    if (i == lines.size()) throw parse_error(1, "missing 'graph' header");
    auto head = detail::split_ws(lines[i]);
    if (head.size() != 2 || head[0] != "graph")
        throw parse_error(static_cast<int>(i) + 1, "expected 'graph <n>'");
    long long n = parse_int(head[1], static_cast<int>(i) + 1);
    if (n < 1 || n > kMaxTeams) throw parse_error(static_cast<int>(i) + 1, "bad vertex count");
    std::vector<Pair> edges;
    for (++i; i < lines.size(); ++i) {
        auto tok = detail::split_ws(lines[i]);
        const int ln = static_cast<int>(i) + 1;
        if (tok.empty()) continue;
        if (tok[0] != "e" || tok.size() != 3) throw parse_error(ln, "expected 'e <a> <b>'");
        long long a = parse_int(tok[1], ln), b = parse_int(tok[2], ln);
        if (a < 0 || b < 0 || a >= n || b >= n) throw parse_error(ln, "vertex out of range");
        if (a == b) throw self_loop("line " + std::to_string(ln) + ": self-loop");
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    return RegularGraph::from_edges(static_cast<int>(n), edges);
}

inline RegularGraph load_graph(const std::string& text) { return parse_graph(text); }

}  // namespace hapmono

#endif
