#include "spmkit/generators.hpp"

#include <vector>

#include "spmkit/errors.hpp"
#include "spmkit/rng.hpp"

namespace spmkit {

Graph generate_scale_free(int n, int m, std::uint64_t seed) {
    if (m < 1) throw ConfigError("generate_scale_free: m must be >= 1");
    if (n <= m) throw ConfigError("generate_scale_free: need n > m");

    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m) * (n - m));
    // One entry per degree unit; sampling an index uniformly is sampling a
    // node proportionally to its degree.
    std::vector<int> degree_urn;
    degree_urn.reserve(2 * static_cast<std::size_t>(m) * (n - m));

    std::vector<char> picked(n, 0);
    std::vector<int> targets(m);
    for (int v = m; v < n; ++v) {
        if (degree_urn.empty()) {
            // All existing nodes have degree zero: attach to all m seeds.
            for (int t = 0; t < m; ++t) targets[t] = t;
        } else {
            int found = 0;
            while (found < m) {
                int candidate = degree_urn[rng.uniform_int(degree_urn.size())];
                if (!picked[candidate]) {
                    picked[candidate] = 1;
                    targets[found++] = candidate;
                }
            }
            for (int t = 0; t < m; ++t) picked[targets[t]] = 0;
        }
        for (int t = 0; t < m; ++t) {
            edges.emplace_back(v, targets[t]);
            degree_urn.push_back(v);
            degree_urn.push_back(targets[t]);
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

}  // namespace spmkit
