#include "spmkit/graph_stats.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>

#include "spmkit/errors.hpp"
#include "spmkit/rng.hpp"

namespace spmkit {

namespace {

// Single-source BFS over a node subset; returns (sum of distances, farthest
// distance, nodes reached).
struct BfsResult {
    std::uint64_t dist_sum = 0;
    int eccentricity = 0;
    int reached = 0;
};

BfsResult bfs_distances(const Graph& g, int source, std::vector<int>& dist) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> queue{source};
    dist[source] = 0;
    BfsResult r;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        r.dist_sum += static_cast<std::uint64_t>(dist[v]);
        r.eccentricity = std::max(r.eccentricity, dist[v]);
        ++r.reached;
        for (int u : g.neighbors(v)) {
            if (dist[u] == -1) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    return r;
}

}  // namespace

GraphStats compute_stats(const Graph& g, int distance_sample, std::uint64_t seed) {
    const int n = g.num_nodes();
    if (n == 0) throw ConfigError("compute_stats: empty graph");

    GraphStats s;
    s.n_nodes = n;
    s.n_edges = g.num_edges();
    s.mean_degree = n > 0 ? 2.0 * static_cast<double>(s.n_edges) / n : 0.0;
    s.density = n > 1 ? 2.0 * static_cast<double>(s.n_edges) /
                            (static_cast<double>(n) * (n - 1))
                      : 0.0;

    // Triangles and wedges. closed_paths counts ordered triangle corners
    // (3 per triangle x 2 orientations); wedges counts ordered 2-paths.
    std::uint64_t closed_paths = 0;
    std::uint64_t wedges = 0;
    double local_sum = 0.0;
    for (int v = 0; v < n; ++v) {
        const auto nbrs = g.neighbors(v);
        const std::uint64_t d = nbrs.size();
        wedges += d * (d - 1);
        std::uint64_t tri = 0;  // edges among neighbors of v, counted twice
        for (int u : nbrs)
            for (int w : g.neighbors(u))
                if (w != v && g.has_edge(v, w)) ++tri;
        closed_paths += tri;
        if (d >= 2)
            local_sum += static_cast<double>(tri) / static_cast<double>(d * (d - 1));
    }
    s.global_transitivity =
        wedges > 0 ? static_cast<double>(closed_paths) / static_cast<double>(wedges) : 0.0;
    // Nodes with degree < 2 contribute 0 to the average.
    s.avg_local_transitivity = local_sum / n;

    auto comps = connected_components(g);
    s.disconnected = comps.size() > 1;
    const auto& lcc = comps.front();
    const int lcc_size = static_cast<int>(lcc.size());

    if (lcc_size < 2) {
        s.diameter = 0;
        s.avg_distance = 0.0;
        return s;
    }

    std::vector<int> sources;
    if (lcc_size <= distance_sample) {
        sources = lcc;
    } else {
        s.distances_estimated = true;
        Rng rng(seed);
        std::vector<int> pool = lcc;
        for (int i = 0; i < distance_sample; ++i) {
            std::size_t j = i + rng.uniform_int(pool.size() - i);
            std::swap(pool[i], pool[j]);
            sources.push_back(pool[i]);
        }
    }

    std::vector<int> dist(n, -1);
    std::uint64_t total = 0;
    std::uint64_t pair_count = 0;
    int ecc_max = 0;
    for (int src : sources) {
        auto r = bfs_distances(g, src, dist);
        total += r.dist_sum;
        pair_count += static_cast<std::uint64_t>(r.reached - 1);
        ecc_max = std::max(ecc_max, r.eccentricity);
    }
    s.diameter = ecc_max;
    s.avg_distance =
        pair_count > 0 ? static_cast<double>(total) / static_cast<double>(pair_count) : 0.0;
    return s;
}

std::string stats_csv_header() {
    return "port_label,n_nodes,n_edges,mean_degree,density,diameter,avg_dist,"
           "trans_global,trans_local";
}

std::string stats_csv_row(const std::string& label, const GraphStats& s) {
    std::ostringstream out;
    out.precision(10);
    out << label << ',' << s.n_nodes << ',' << s.n_edges << ',' << s.mean_degree << ','
        << s.density << ',' << s.diameter << ',' << s.avg_distance << ','
        << s.global_transitivity << ',' << s.avg_local_transitivity;
    return out.str();
}

std::string stats_json(const std::string& label, const GraphStats& s) {
    std::ostringstream out;
    out.precision(10);
    out << "{\"port_label\":\"" << label << "\",\"n_nodes\":" << s.n_nodes
        << ",\"n_edges\":" << s.n_edges << ",\"mean_degree\":" << s.mean_degree
        << ",\"density\":" << s.density << ",\"diameter\":" << s.diameter
        << ",\"avg_dist\":" << s.avg_distance << ",\"trans_global\":" << s.global_transitivity
        << ",\"trans_local\":" << s.avg_local_transitivity
        << ",\"distances_estimated\":" << (s.distances_estimated ? "true" : "false")
        << ",\"disconnected\":" << (s.disconnected ? "true" : "false") << "}";
    return out.str();
}

}  // namespace spmkit
