#ifndef HAPMONO_MATCHING_HPP
#define HAPMONO_MATCHING_HPP

// Perfect matchings on graphs of at most 62 vertices given as adjacency
// bitmasks.

#include <bit>
#include <vector>

#include "hapmono/combinat.hpp"

namespace hapmono {

using Adjacency = std::vector<Mask>;

inline Adjacency adjacency_of(int n, const std::vector<Pair>& edges) {
    Adjacency adj(n, 0);
    for (const Pair& p : edges) {
        adj[p.a] |= Mask{1} << p.b;
        adj[p.b] |= Mask{1} << p.a;
    }
    return adj;
}

// Calls visit(const std::vector<Pair>&) for each perfect matching of the
// vertices in `vertices`, lowest free vertex first, partners ascending.
// Stops early when visit returns false; returns false in that case.
template <class F>
bool for_each_perfect_matching(const Adjacency& adj, Mask vertices, F&& visit) {
    std::vector<Pair> cur;
    auto rec = [&](auto&& self, Mask free) -> bool {
        if (free == 0) return visit(static_cast<const std::vector<Pair>&>(cur));
        int a = std::countr_zero(free);
        Mask cand = adj[a] & free & ~(Mask{1} << a);
        while (cand) {
            int b = std::countr_zero(cand);
            cand &= cand - 1;
            cur.emplace_back(a, b);
            bool go_on = self(self, free & ~((Mask{1} << a) | (Mask{1} << b)));
            cur.pop_back();
            if (!go_on) return false;
        }
        return true;
    };
    return rec(rec, vertices);
}

inline std::vector<std::vector<Pair>> perfect_matchings(const Adjacency& adj, Mask vertices) {
    std::vector<std::vector<Pair>> out;
    for_each_perfect_matching(adj, vertices, [&](const std::vector<Pair>& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

// Perfect-matching test for the bipartite graph with sides `left`, `right`
// and edges adj restricted to left x right (Kuhn's augmenting paths).
inline bool has_bipartite_perfect_matching(const Adjacency& adj, Mask left, Mask right) {
    if (std::popcount(left) != std::popcount(right)) return false;
    const int n = static_cast<int>(adj.size());
    std::vector<int> match_of_right(n, -1);
    Mask visited = 0;
    auto augment = [&](auto&& self, int u) -> bool {
        Mask cand = adj[u] & right & ~visited;
        while (cand) {
            int w = std::countr_zero(cand);
            cand &= cand - 1;
            visited |= Mask{1} << w;
            if (match_of_right[w] < 0 || self(self, match_of_right[w])) {
                match_of_right[w] = u;
                return true;
            }
        }
        return false;
    };
    for (Mask l = left; l; l &= l - 1) {
        visited = 0;
        if (!augment(augment, std::countr_zero(l))) return false;
    }
    return true;
}

// Adjacency restricted to the pairs crossing `c`.
inline Adjacency crossing_adjacency(const Adjacency& adj, const EqualPartition& c) {
    Adjacency out(adj.size());
    for (std::size_t v = 0; v < adj.size(); ++v)
        out[v] = adj[v] & (c.is_home(static_cast<int>(v)) ? c.away_mask() : c.home_mask());
    return out;
}

inline bool has_crossing_perfect_matching(const Adjacency& adj, const EqualPartition& c) {
    return has_bipartite_perfect_matching(crossing_adjacency(adj, c), c.home_mask(),
                                          c.away_mask());
}

}  // namespace hapmono

#endif
