#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace spmkit {

/// Undirected, unweighted, simple communication graph with dense node ids
/// 0..N-1. Immutable after construction: every transformation returns a new
/// Graph, so instances are safe to share across threads.
class Graph {
public:
    Graph() = default;

    /// Builds from an edge list. Self-loops are dropped, duplicates (in either
    /// orientation) collapse to a single edge, neighbor lists come out sorted.
    static Graph from_edges(int n_nodes, std::vector<std::pair<int, int>> edges);

    int num_nodes() const { return static_cast<int>(adjacency_.size()); }
    std::size_t num_edges() const { return edge_count_; }

    std::span<const int> neighbors(int v) const {
        return {adjacency_[v].data(), adjacency_[v].size()};
    }
    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
    int max_degree() const;
    bool has_edge(int i, int j) const;

    /// All edges as (i, j) pairs with i < j, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const;

    /// Order-sensitive structural hash (FNV-1a over node count and sorted
    /// edge list). Equal graphs hash equal; used for plan replay checks and
    /// eigenpair staleness detection.
    std::uint64_t hash() const { return hash_; }

    bool operator==(const Graph& other) const {
        return adjacency_ == other.adjacency_;
    }

private:
    std::vector<std::vector<int>> adjacency_;
    std::size_t edge_count_ = 0;
    std::uint64_t hash_ = 0;

    void recompute_hash();
};

/// Connected components as node lists, largest first; ties by smallest node id.
std::vector<std::vector<int>> connected_components(const Graph& g);

/// Fraction of nodes in the largest connected component (sigma). N must be >= 1.
double largest_cc_fraction(const Graph& g);

/// Maximal subgraph with minimum degree >= k, compacted to dense ids in the
/// order of `k_core_nodes`. May be empty. Idempotent. k must be >= 1.
Graph k_core(const Graph& g, int k);

/// Nodes of g surviving k-core peeling (sorted by original id).
std::vector<int> k_core_nodes(const Graph& g, int k);

/// Subgraph induced by `nodes` with ids compacted to 0..|nodes|-1 in the given
/// order. `nodes` must be unique and in-range.
Graph induced_subgraph(const Graph& g, std::span<const int> nodes);

}  // namespace spmkit
