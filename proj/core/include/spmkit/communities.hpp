#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spmkit/graph.hpp"

namespace spmkit {

/// A community assignment. Labels are dense 0..n_communities-1 with no empty
/// community. `modularity` is the classic (resolution 1) score of the
/// assignment on the graph it was detected on.
struct Partition {
    std::vector<int> assignment;
    int n_communities = 0;
    double modularity = 0.0;
};

/// Leiden community detection (local moving + refinement + aggregation)
/// optimizing modularity at the given resolution. Deterministic for a fixed
/// seed; equal-gain moves break ties toward the lowest community label.
/// Every returned community is internally connected.
Partition detect_communities(const Graph& g, double resolution = 1.0,
                             std::uint64_t seed = 0);

/// Q = sum_c [ e_c/M - resolution * (d_c/2M)^2 ]. Throws ConfigError when the
/// assignment does not cover every node or has label gaps. Edgeless graphs
/// score 0.
double modularity(const Graph& g, std::span<const int> assignment,
                  double resolution = 1.0);
double modularity(const Graph& g, const Partition& p);

struct Boundary {
    std::vector<std::pair<int, int>> edges;  // endpoints in different communities
    std::vector<int> nodes;                  // endpoints of boundary edges, sorted
};

Boundary boundary(const Graph& g, const Partition& p);

/// `node,community` CSV dump.
std::string partition_csv(const Partition& p);

}  // namespace spmkit
