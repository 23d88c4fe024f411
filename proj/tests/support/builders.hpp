#pragma once

// Small graph constructions shared across the test suite.

#include <utility>
#include <vector>

#include "spmkit/graph.hpp"
#include "spmkit/rng.hpp"

namespace spmkit::test {

inline Graph clique(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph::from_edges(n, std::move(edges));
}

inline Graph star(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, std::move(edges));
}

inline Graph cycle(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, std::move(edges));
}

inline Graph path(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph::from_edges(n, std::move(edges));
}

// Two triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
inline Graph two_triangles_bridge() {
    return Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

inline Graph two_disjoint_triangles() {
    return Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

// Two cliques K<side> bridged through a 2-node path: ...-(side-1)-(side)-(side+1)-(side+2)-...
inline Graph barbell(int side) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < side; ++i)
        for (int j = i + 1; j < side; ++j) edges.emplace_back(i, j);
    const int off = side + 2;
    for (int i = 0; i < side; ++i)
        for (int j = i + 1; j < side; ++j) edges.emplace_back(off + i, off + j);
    edges.emplace_back(side - 1, side);
    edges.emplace_back(side, side + 1);
    edges.emplace_back(side + 1, off);
    return Graph::from_edges(2 * side + 2, std::move(edges));
}

// Erdos-Renyi G(n, p), connected components as-is.
inline Graph erdos_renyi(int n, double p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform01() < p) edges.emplace_back(i, j);
    return Graph::from_edges(n, std::move(edges));
}

// Structural sanity: symmetry, no self-loops, no duplicates, edge-count identity.
inline bool well_formed(const Graph& g) {
    std::size_t half_edges = 0;
    for (int v = 0; v < g.num_nodes(); ++v) {
        int prev = -1;
        for (int u : g.neighbors(v)) {
            if (u == v) return false;          // self-loop
            if (u <= prev) return false;       // unsorted or duplicate
            if (!g.has_edge(u, v)) return false;  // asymmetric
            prev = u;
            ++half_edges;
        }
    }
    return half_edges == 2 * g.num_edges();
}

}  // namespace spmkit::test
