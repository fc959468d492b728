#pragma once

// Graph families and the grid coordinate system.  Vertices are 0-based ints.
// Product graphs use the layout index = (s-1)*p + (r-1) for the 1-based grid
// coordinate (r, s), so each level s occupies a contiguous block of p ids.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pmh {

using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) {
    if (u == v)
        throw std::invalid_argument("make_edge: loop at vertex " + std::to_string(u));
    return u < v ? Edge{u, v} : Edge{v, u};
}

// Immutable simple undirected graph on vertices 0..n-1.  Edges are kept
// normalized (u < v) and sorted; adjacency lists ascending.
class Graph {
public:
    Graph(int n, std::vector<Edge> edges, std::string label = "")
        : n_(n), edges_(std::move(edges)), label_(std::move(label)) {
        if (n_ < 0)
            throw std::invalid_argument("Graph: negative vertex count");
        for (auto& [u, v] : edges_) {
            if (u > v) std::swap(u, v);
            if (u == v)
                throw std::invalid_argument("Graph: loop at vertex " + std::to_string(u));
            if (u < 0 || v >= n_)
                throw std::invalid_argument("Graph: edge (" + std::to_string(u) + "," +
                                            std::to_string(v) + ") out of range");
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw std::invalid_argument("Graph: duplicate edge");
        adj_.assign(n_, {});
        for (const auto& [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        // adjacency comes out ascending already because edges_ is sorted,
        // but don't rely on that for the v-side entries
        for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const {
        check_vertex(v);
        return adj_[v];
    }
    int degree(int v) const {
        check_vertex(v);
        return static_cast<int>(adj_[v].size());
    }
    const std::string& label() const { return label_; }

    bool has_edge(int u, int v) const {
        if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
        const auto& nb = adj_[u];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    // Position of (u,v) in the sorted edge list, or -1 if absent.
    int edge_index(int u, int v) const {
        if (!has_edge(u, v)) return -1;
        Edge e = u < v ? Edge{u, v} : Edge{v, u};
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        return static_cast<int>(it - edges_.begin());
    }

    std::vector<int> degree_sequence() const {
        std::vector<int> d(n_);
        for (int v = 0; v < n_; ++v) d[v] = static_cast<int>(adj_[v].size());
        std::sort(d.begin(), d.end());
        return d;
    }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_)
            throw std::invalid_argument("Graph: vertex " + std::to_string(v) + " out of range");
    }

    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::string label_;
};

inline Graph build_cycle(int n) {
    if (n < 3)
        throw std::invalid_argument("build_cycle: need n >= 3, got " + std::to_string(n));
    std::vector<Edge> e;
    e.reserve(n);
    for (int i = 0; i < n; ++i) e.push_back(make_edge(i, (i + 1) % n));
    return Graph(n, std::move(e), "C" + std::to_string(n));
}

inline Graph build_path(int n) {
    if (n < 1)
        throw std::invalid_argument("build_path: need n >= 1, got " + std::to_string(n));
    std::vector<Edge> e;
    e.reserve(n - 1);
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return Graph(n, std::move(e), "P" + std::to_string(n));
}

inline Graph build_complete(int n) {
    if (n < 1)
        throw std::invalid_argument("build_complete: need n >= 1, got " + std::to_string(n));
    std::vector<Edge> e;
    e.reserve(n * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.push_back({u, v});
    return Graph(n, std::move(e), "K" + std::to_string(n));
}

inline Graph build_complete_bipartite(int a, int b) {
    if (a < 1 || b < 1)
        throw std::invalid_argument("build_complete_bipartite: need a,b >= 1");
    std::vector<Edge> e;
    e.reserve(a * b);
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) e.push_back({u, a + v});
    return Graph(a + b, std::move(e), "K" + std::to_string(a) + "," + std::to_string(b));
}

inline Graph build_hypercube(int d) {
    if (d < 1 || d > 20)
        throw std::invalid_argument("build_hypercube: need 1 <= d <= 20");
    int n = 1 << d;
    std::vector<Edge> e;
    e.reserve(static_cast<std::size_t>(d) * n / 2);
    for (int v = 0; v < n; ++v)
        for (int k = 0; k < d; ++k)
            if (!(v & (1 << k))) e.push_back({v, v | (1 << k)});
    return Graph(n, std::move(e), "Q" + std::to_string(d));
}

// Cartesian product G x H: vertex (i, j) -> j*|V(G)| + i; edges whenever one
// coordinate moves along an edge and the other stays put.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
    if (g.vertex_count() == 0 || h.vertex_count() == 0)
        throw std::invalid_argument("cartesian_product: empty factor");
    int ng = g.vertex_count(), nh = h.vertex_count();
    std::vector<Edge> e;
    e.reserve(static_cast<std::size_t>(nh) * g.edge_count() +
              static_cast<std::size_t>(ng) * h.edge_count());
    for (int j = 0; j < nh; ++j)
        for (const auto& [u, v] : g.edges()) e.push_back({j * ng + u, j * ng + v});
    for (const auto& [x, y] : h.edges())
        for (int i = 0; i < ng; ++i) e.push_back({x * ng + i, y * ng + i});
    std::string label;
    if (!g.label().empty() && !h.label().empty()) label = g.label() + "x" + h.label();
    return Graph(ng * nh, std::move(e), std::move(label));
}

inline Graph build_torus(int p, int q) { return cartesian_product(build_cycle(p), build_cycle(q)); }

inline Graph build_cylinder(int p, int q) {
    if (q < 1)
        throw std::invalid_argument("build_cylinder: need q >= 1");
    return cartesian_product(build_cycle(p), build_path(q));
}

// 1-based grid coordinates for p x q products: r is the position in the first
// factor, s the level in the second.
struct GridCoord {
    int r, s, p, q;
};

inline int grid_index(const GridCoord& c) {
    if (c.p < 1 || c.q < 1)
        throw std::invalid_argument("grid_index: need p,q >= 1");
    if (c.r < 1 || c.r > c.p || c.s < 1 || c.s > c.q)
        throw std::invalid_argument("grid_index: coordinate (" + std::to_string(c.r) + "," +
                                    std::to_string(c.s) + ") outside " + std::to_string(c.p) +
                                    "x" + std::to_string(c.q) + " grid");
    return (c.s - 1) * c.p + (c.r - 1);
}

inline int grid_index(int r, int s, int p, int q) { return grid_index(GridCoord{r, s, p, q}); }

inline GridCoord grid_coord(int v, int p, int q) {
    if (p < 1 || q < 1)
        throw std::invalid_argument("grid_coord: need p,q >= 1");
    if (v < 0 || v >= p * q)
        throw std::invalid_argument("grid_coord: vertex " + std::to_string(v) + " outside " +
                                    std::to_string(p) + "x" + std::to_string(q) + " grid");
    return GridCoord{v % p + 1, v / p + 1, p, q};
}

}  // namespace pmh
