#include "spmkit/graph.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <queue>

#include "spmkit/errors.hpp"

namespace spmkit {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_mix(std::uint64_t& h, std::uint64_t value) {
    for (int byte = 0; byte < 8; ++byte) {
        h ^= (value >> (8 * byte)) & 0xff;
        h *= kFnvPrime;
    }
}

}  // namespace

Graph Graph::from_edges(int n_nodes, std::vector<std::pair<int, int>> edges) {
    if (n_nodes < 0) throw ConfigError("graph: negative node count");
    Graph g;
    g.adjacency_.assign(static_cast<std::size_t>(n_nodes), {});
    for (auto& [a, b] : edges) {
        if (a < 0 || a >= n_nodes || b < 0 || b >= n_nodes)
            throw ConfigError("graph: edge endpoint out of range");
        if (a == b) continue;  // simple graph: drop self-loops
        g.adjacency_[a].push_back(b);
        g.adjacency_[b].push_back(a);
    }
    g.edge_count_ = 0;
    for (auto& nbrs : g.adjacency_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        g.edge_count_ += nbrs.size();
    }
    assert(g.edge_count_ % 2 == 0);
    g.edge_count_ /= 2;
    g.recompute_hash();
    return g;
}

int Graph::max_degree() const {
    std::size_t best = 0;
    for (const auto& nbrs : adjacency_) best = std::max(best, nbrs.size());
    return static_cast<int>(best);
}

bool Graph::has_edge(int i, int j) const {
    const auto& nbrs = adjacency_[i];
    return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int i = 0; i < num_nodes(); ++i)
        for (int j : adjacency_[i])
            if (i < j) out.emplace_back(i, j);
    return out;
}

void Graph::recompute_hash() {
    std::uint64_t h = kFnvOffset;
    fnv_mix(h, static_cast<std::uint64_t>(adjacency_.size()));
    for (int i = 0; i < num_nodes(); ++i)
        for (int j : adjacency_[i])
            if (i < j) {
                fnv_mix(h, static_cast<std::uint64_t>(i));
                fnv_mix(h, static_cast<std::uint64_t>(j));
            }
    hash_ = h;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    const int n = g.num_nodes();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> components;
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (comp[start] != -1) continue;
        const int id = static_cast<int>(components.size());
        components.emplace_back();
        comp[start] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            components[id].push_back(v);
            for (int u : g.neighbors(v)) {
                if (comp[u] == -1) {
                    comp[u] = id;
                    stack.push_back(u);
                }
            }
        }
        std::sort(components[id].begin(), components[id].end());
    }
    std::stable_sort(components.begin(), components.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return components;
}

double largest_cc_fraction(const Graph& g) {
    if (g.num_nodes() == 0) throw ConfigError("largest_cc_fraction: empty graph");
    auto comps = connected_components(g);
    return static_cast<double>(comps.front().size()) / g.num_nodes();
}

std::vector<int> k_core_nodes(const Graph& g, int k) {
    if (k < 1) throw ConfigError("k_core: k must be >= 1");
    const int n = g.num_nodes();
    std::vector<int> deg(n);
    std::vector<char> removed(n, 0);
    std::queue<int> pending;
    for (int v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        if (deg[v] < k) {
            removed[v] = 1;
            pending.push(v);
        }
    }
    while (!pending.empty()) {
        int v = pending.front();
        pending.pop();
        for (int u : g.neighbors(v)) {
            if (!removed[u] && --deg[u] < k) {
                removed[u] = 1;
                pending.push(u);
            }
        }
    }
    std::vector<int> survivors;
    for (int v = 0; v < n; ++v)
        if (!removed[v]) survivors.push_back(v);
    return survivors;
}

Graph k_core(const Graph& g, int k) {
    auto nodes = k_core_nodes(g, k);
    return induced_subgraph(g, nodes);
}

Graph induced_subgraph(const Graph& g, std::span<const int> nodes) {
    std::vector<int> remap(g.num_nodes(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] < 0 || nodes[i] >= g.num_nodes() || remap[nodes[i]] != -1)
            throw ConfigError("induced_subgraph: node list not unique/in range");
        remap[nodes[i]] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (int v : nodes)
        for (int u : g.neighbors(v))
            if (v < u && remap[u] != -1) edges.emplace_back(remap[v], remap[u]);
    return Graph::from_edges(static_cast<int>(nodes.size()), std::move(edges));
}

}  // namespace spmkit
