#pragma once

#include <cstdint>
#include <string>

#include "spmkit/graph.hpp"

namespace spmkit {

/// Topological summary of a graph. Distances refer to the largest connected
/// component when the graph is disconnected (`disconnected` flags that).
struct GraphStats {
    int n_nodes = 0;
    std::size_t n_edges = 0;
    double mean_degree = 0.0;
    double density = 0.0;
    int diameter = 0;
    double avg_distance = 0.0;
    double global_transitivity = 0.0;
    double avg_local_transitivity = 0.0;
    bool distances_estimated = false;  // BFS-sampled rather than all-pairs
    bool disconnected = false;
};

/// Density and transitivity are exact. Diameter/avg-distance are exact via
/// all-pairs BFS when the largest component has at most `distance_sample`
/// nodes; otherwise they are estimated from BFS trees rooted at
/// `distance_sample` sources drawn uniformly (seeded). Diameter is then a
/// lower bound (max eccentricity over samples).
GraphStats compute_stats(const Graph& g, int distance_sample = 2000,
                         std::uint64_t seed = 0);

/// One CSV row in the documented column order:
/// port_label,n_nodes,n_edges,mean_degree,density,diameter,avg_dist,trans_global,trans_local
std::string stats_csv_header();
std::string stats_csv_row(const std::string& label, const GraphStats& s);

/// The same stats as a JSON object (single line).
std::string stats_json(const std::string& label, const GraphStats& s);

}  // namespace spmkit
