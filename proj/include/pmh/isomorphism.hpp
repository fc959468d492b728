#pragma once

// Isomorphism and automorphism search for the small graphs this library
// deals in (tens of vertices).  Plain backtracking over a BFS vertex order
// with degree and adjacency-consistency pruning — no fancy canonical forms.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "graph.hpp"

namespace pmh {

namespace detail {

// Visits every isomorphism a -> b as a vector image; on_map returning false
// stops the stream.  Returns false iff stopped early.
template <class OnMap>
bool iso_search(const Graph& a, const Graph& b, OnMap&& on_map) {
    int n = a.vertex_count();
    if (n != b.vertex_count() || a.edge_count() != b.edge_count()) return true;
    if (a.degree_sequence() != b.degree_sequence()) return true;

    // BFS order: each vertex (after the first of its component) has a mapped
    // neighbor by the time it is placed, which keeps candidate sets tight.
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        order.push_back(s);
        for (std::size_t h = order.size() - 1; h < order.size(); ++h) {
            for (int w : a.neighbors(order[h]))
                if (!seen[w]) {
                    seen[w] = 1;
                    order.push_back(w);
                }
        }
    }

    std::vector<int> map(n, -1), inv(n, -1);
    auto rec = [&](auto&& self, int t) -> bool {
        if (t == n) return on_map(map);
        int v = order[t];
        int mapped_nbrs = 0;
        for (int u : a.neighbors(v))
            if (map[u] >= 0) ++mapped_nbrs;
        for (int c = 0; c < n; ++c) {
            if (inv[c] >= 0 || b.degree(c) != a.degree(v)) continue;
            bool ok = true;
            for (int u : a.neighbors(v))
                if (map[u] >= 0 && !b.has_edge(map[u], c)) {
                    ok = false;
                    break;
                }
            if (ok) {
                // every mapped neighbor of c must be the image of a neighbor
                // of v, otherwise a non-edge would map onto an edge
                int back = 0;
                for (int w : b.neighbors(c))
                    if (inv[w] >= 0) ++back;
                ok = back == mapped_nbrs;
            }
            if (!ok) continue;
            map[v] = c;
            inv[c] = v;
            if (!self(self, t + 1)) return false;
            map[v] = -1;
            inv[c] = -1;
        }
        return true;
    };
    return rec(rec, 0);
}

}  // namespace detail

// First isomorphism a -> b in the search order, if any.
inline std::optional<std::vector<int>> find_isomorphism(const Graph& a, const Graph& b) {
    std::optional<std::vector<int>> found;
    detail::iso_search(a, b, [&](const std::vector<int>& map) {
        found = map;
        return false;
    });
    return found;
}

inline bool is_isomorphism(const Graph& a, const Graph& b, const std::vector<int>& map) {
    int n = a.vertex_count();
    if (n != b.vertex_count() || static_cast<int>(map.size()) != n) return false;
    std::vector<char> hit(n, 0);
    for (int v = 0; v < n; ++v) {
        if (map[v] < 0 || map[v] >= n || hit[map[v]]) return false;
        hit[map[v]] = 1;
    }
    if (a.edge_count() != b.edge_count()) return false;
    for (const auto& [u, v] : a.edges())
        if (!b.has_edge(map[u], map[v])) return false;
    return true;
}

inline std::vector<std::vector<int>> enumerate_automorphisms(const Graph& g,
                                                             std::size_t cap = 250000) {
    std::vector<std::vector<int>> auts;
    bool complete = detail::iso_search(g, g, [&](const std::vector<int>& map) {
        auts.push_back(map);
        return auts.size() <= cap;
    });
    if (!complete)
        throw std::runtime_error("enumerate_automorphisms: more than " + std::to_string(cap) +
                                 " automorphisms");
    return auts;
}

inline std::vector<int> automorphism_orbit(const Graph& g, int v) {
    if (v < 0 || v >= g.vertex_count())
        throw std::invalid_argument("automorphism_orbit: vertex out of range");
    std::vector<char> hit(g.vertex_count(), 0);
    for (const auto& aut : enumerate_automorphisms(g)) hit[aut[v]] = 1;
    std::vector<int> orbit;
    for (int w = 0; w < g.vertex_count(); ++w)
        if (hit[w]) orbit.push_back(w);
    return orbit;
}

inline bool is_vertex_transitive(const Graph& g) {
    if (g.vertex_count() == 0) return false;
    return static_cast<int>(automorphism_orbit(g, 0).size()) == g.vertex_count();
}

// Minimal representatives of the orbits of V \ {anchor} under the stabilizer
// of anchor, ascending.  These are the essential partners of anchor: any pair
// (anchor, x) is mapped by some stabilizer element to (anchor, rep(x)).
inline std::vector<int> stabilizer_orbit_reps(const Graph& g, int anchor = 0) {
    int n = g.vertex_count();
    if (anchor < 0 || anchor >= n)
        throw std::invalid_argument("stabilizer_orbit_reps: anchor out of range");
    std::vector<int> root(n);
    for (int v = 0; v < n; ++v) root[v] = v;
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (const auto& aut : enumerate_automorphisms(g)) {
        if (aut[anchor] != anchor) continue;
        for (int v = 0; v < n; ++v) {
            int a = find(v), b = find(aut[v]);
            if (a != b) root[std::max(a, b)] = std::min(a, b);  // keep the min as root
        }
    }
    std::vector<int> reps;
    for (int v = 0; v < n; ++v)
        if (v != anchor && find(v) == v) reps.push_back(v);
    return reps;
}

}  // namespace pmh
