#include "spmkit/communities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "spmkit/errors.hpp"
#include "spmkit/rng.hpp"

namespace spmkit {

namespace {

// Weighted view used across aggregation levels. Self-loops hold collapsed
// intra-community weight; strengths count self-loops twice.
struct WGraph {
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<double> self_loop;
    std::vector<double> strength;
    double total_weight = 0.0;  // each edge once, self-loops once

    int n() const { return static_cast<int>(adj.size()); }
};

WGraph lift(const Graph& g) {
    WGraph w;
    w.adj.resize(g.num_nodes());
    w.self_loop.assign(g.num_nodes(), 0.0);
    w.strength.assign(g.num_nodes(), 0.0);
    for (int v = 0; v < g.num_nodes(); ++v) {
        for (int u : g.neighbors(v)) w.adj[v].emplace_back(u, 1.0);
        w.strength[v] = static_cast<double>(g.degree(v));
    }
    w.total_weight = static_cast<double>(g.num_edges());
    return w;
}

// Local moving with a processing queue. `labels` is both the initial
// assignment and the output. Communities are tracked by total strength.
bool local_move(const WGraph& w, std::vector<int>& labels, double resolution,
                Rng& rng) {
    const int n = w.n();
    const double big_w = w.total_weight;
    if (big_w <= 0.0) return false;

    std::vector<double> comm_strength(n, 0.0);
    for (int v = 0; v < n; ++v) comm_strength[labels[v]] += w.strength[v];

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < n - 1; ++i) {
        std::size_t j = i + rng.uniform_int(static_cast<std::uint64_t>(n - i));
        std::swap(order[i], order[static_cast<int>(j)]);
    }

    std::vector<char> queued(n, 1);
    std::vector<int> queue = order;
    std::size_t head = 0;

    // Scratch: edge weight from the current node into each community.
    std::vector<double> edge_to(n, 0.0);
    std::vector<int> touched;

    bool any_move = false;
    while (head < queue.size()) {
        const int v = queue[head++];
        queued[v] = 0;
        const int old_c = labels[v];

        touched.clear();
        for (const auto& [u, wt] : w.adj[v]) {
            const int c = labels[u];
            if (edge_to[c] == 0.0) touched.push_back(c);
            edge_to[c] += wt;
        }
        if (edge_to[old_c] == 0.0) touched.push_back(old_c);

        // Remove v from its community, then pick the best destination.
        comm_strength[old_c] -= w.strength[v];
        const double kv = w.strength[v];
        const double scale = resolution * kv / (2.0 * big_w * big_w);

        std::sort(touched.begin(), touched.end());
        int best_c = old_c;
        double best_gain = edge_to[old_c] / big_w - scale * comm_strength[old_c];
        for (int c : touched) {
            if (c == old_c) continue;
            const double gain = edge_to[c] / big_w - scale * comm_strength[c];
            if (gain > best_gain + 1e-14) {
                best_gain = gain;
                best_c = c;
            }
        }
        comm_strength[best_c] += kv;
        for (int c : touched) edge_to[c] = 0.0;

        if (best_c != old_c) {
            labels[v] = best_c;
            any_move = true;
            for (const auto& [u, wt] : w.adj[v]) {
                (void)wt;
                if (labels[u] != best_c && !queued[u]) {
                    queued[u] = 1;
                    queue.push_back(u);
                }
            }
        }
    }
    return any_move;
}

// Refinement: within each community of `labels`, grow connected refined
// communities from singletons. Only singleton nodes merge, only along edges,
// only into the same parent community, and only when both sides are
// well-connected within the parent; the max-gain candidate wins, ties to the
// lowest refined label.
std::vector<int> refine(const WGraph& w, const std::vector<int>& labels,
                        double resolution) {
    const int n = w.n();
    const double big_w = w.total_weight;
    std::vector<int> refined(n);
    std::iota(refined.begin(), refined.end(), 0);
    if (big_w <= 0.0) return refined;

    std::vector<double> parent_strength(n, 0.0);
    for (int v = 0; v < n; ++v) parent_strength[labels[v]] += w.strength[v];

    // Per refined community: strength and weight of edges leaving it but
    // staying inside the parent community.
    std::vector<double> ref_strength = w.strength;
    std::vector<double> ref_out(n, 0.0);
    std::vector<int> ref_size(n, 1);
    for (int v = 0; v < n; ++v) {
        for (const auto& [u, wt] : w.adj[v])
            if (labels[u] == labels[v]) ref_out[v] += wt;
    }

    std::vector<double> edge_to(n, 0.0);
    std::vector<int> touched;

    for (int v = 0; v < n; ++v) {
        if (ref_size[refined[v]] != 1) continue;  // only singletons move
        const int parent = labels[v];
        const double kv = w.strength[v];
        // Node well-connected to its parent community?
        const double vout = ref_out[v];
        if (vout < resolution * kv * (parent_strength[parent] - kv) / (2.0 * big_w))
            continue;

        touched.clear();
        for (const auto& [u, wt] : w.adj[v]) {
            if (labels[u] != parent || u == v) continue;
            const int rc = refined[u];
            if (rc == refined[v]) continue;
            if (edge_to[rc] == 0.0) touched.push_back(rc);
            edge_to[rc] += wt;
        }
        std::sort(touched.begin(), touched.end());

        const double scale = resolution * kv / (2.0 * big_w * big_w);
        int best_c = -1;
        double best_gain = 0.0;
        for (int rc : touched) {
            // Candidate refined community must itself be well-connected.
            const double rs = ref_strength[rc];
            if (ref_out[rc] <
                resolution * rs * (parent_strength[parent] - rs) / (2.0 * big_w))
                continue;
            const double gain = edge_to[rc] / big_w - scale * ref_strength[rc];
            if (gain > best_gain + 1e-14) {
                best_gain = gain;
                best_c = rc;
            }
        }
        if (best_c != -1) {
            const int old_rc = refined[v];
            // Merge v (a singleton) into best_c; update the books.
            refined[v] = best_c;
            ref_size[best_c] += 1;
            ref_size[old_rc] = 0;
            ref_strength[best_c] += kv;
            // Edges from v inside the parent now either become internal to
            // best_c or remain outgoing from it.
            ref_out[best_c] += vout - 2.0 * edge_to[best_c];
        }
        for (int rc : touched) edge_to[rc] = 0.0;
    }
    return refined;
}

void compact_labels(std::vector<int>& labels, int& count) {
    std::vector<int> remap(labels.size(), -1);
    count = 0;
    for (int& l : labels) {
        if (remap[l] == -1) remap[l] = count++;
        l = remap[l];
    }
}

WGraph aggregate(const WGraph& w, const std::vector<int>& refined, int n_refined) {
    WGraph out;
    out.adj.resize(n_refined);
    out.self_loop.assign(n_refined, 0.0);
    out.strength.assign(n_refined, 0.0);
    out.total_weight = w.total_weight;

    std::vector<double> row(n_refined, 0.0);
    std::vector<int> touched;
    // Group nodes by refined community.
    std::vector<std::vector<int>> members(n_refined);
    for (int v = 0; v < w.n(); ++v) members[refined[v]].push_back(v);

    for (int c = 0; c < n_refined; ++c) {
        touched.clear();
        double internal = 0.0;
        for (int v : members[c]) {
            internal += w.self_loop[v];
            for (const auto& [u, wt] : w.adj[v]) {
                const int cu = refined[u];
                if (cu == c) {
                    internal += 0.5 * wt;
                } else {
                    if (row[cu] == 0.0) touched.push_back(cu);
                    row[cu] += wt;
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        out.self_loop[c] = internal;
        double strength = 2.0 * internal;
        for (int cu : touched) {
            out.adj[c].emplace_back(cu, row[cu]);
            strength += row[cu];
            row[cu] = 0.0;
        }
        out.strength[c] = strength;
    }
    return out;
}

// Split any internally disconnected community into its connected components.
// This is a safety net: splitting a disconnected community never lowers
// modularity. Returns the number of communities.
int split_disconnected(const Graph& g, std::vector<int>& labels) {
    const int n = g.num_nodes();
    std::vector<int> out(n, -1);
    int next = 0;
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (out[start] != -1) continue;
        const int label = next++;
        out[start] = label;
        stack.push_back(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : g.neighbors(v))
                if (out[u] == -1 && labels[u] == labels[v]) {
                    out[u] = label;
                    stack.push_back(u);
                }
        }
    }
    labels = std::move(out);
    return next;
}

}  // namespace

namespace {

std::vector<int> leiden_once(const Graph& g, double resolution, Rng& rng) {
    const int n = g.num_nodes();

    // membership[orig] = community in the current level's label space.
    std::vector<int> membership(n);
    std::iota(membership.begin(), membership.end(), 0);

    WGraph w = lift(g);
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 0);

    // Each level strictly shrinks the aggregated graph, so this terminates.
    for (int level = 0; level < n + 1; ++level) {
        local_move(w, labels, resolution, rng);
        int n_comms = 0;
        {
            std::vector<int> tmp = labels;
            compact_labels(tmp, n_comms);
            labels = std::move(tmp);
        }
        if (n_comms == w.n()) break;  // every community is one node: done

        std::vector<int> refined = refine(w, labels, resolution);
        int n_refined = 0;
        compact_labels(refined, n_refined);
        if (n_refined == w.n()) {
            // No refinement merges happened; aggregate by the partition
            // itself so the level still makes progress.
            refined = labels;
            n_refined = n_comms;
        }

        // Next level starts with each refined community in the parent
        // community that contained it.
        std::vector<int> next_init(n_refined, -1);
        for (int v = 0; v < w.n(); ++v) next_init[refined[v]] = labels[v];

        for (int orig = 0; orig < n; ++orig) membership[orig] = refined[membership[orig]];
        w = aggregate(w, refined, n_refined);
        labels = std::move(next_init);
    }
    for (int orig = 0; orig < n; ++orig) membership[orig] = labels[membership[orig]];
    return membership;
}

}  // namespace

Partition detect_communities(const Graph& g, double resolution, std::uint64_t seed) {
    if (g.num_nodes() == 0) throw ConfigError("detect_communities: empty graph");
    if (resolution <= 0.0) throw ConfigError("detect_communities: resolution must be > 0");

    // Greedy local moving is order-sensitive; a few restarts with fresh visit
    // orders escape the shallow local optima that show up on highly symmetric
    // graphs. Deterministic per seed: all restarts share one stream.
    const int restarts = g.num_nodes() <= 10000 ? 10 : 3;
    Rng rng(seed);

    std::vector<int> best_assignment;
    double best_q = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        std::vector<int> assignment = leiden_once(g, resolution, rng);
        const double q = modularity(g, assignment, resolution);
        if (q > best_q + 1e-15) {
            best_q = q;
            best_assignment = std::move(assignment);
        }
    }

    Partition p;
    p.assignment = std::move(best_assignment);
    p.n_communities = split_disconnected(g, p.assignment);
    compact_labels(p.assignment, p.n_communities);
    p.modularity = modularity(g, p.assignment, 1.0);
    return p;
}

double modularity(const Graph& g, std::span<const int> assignment, double resolution) {
    const int n = g.num_nodes();
    if (static_cast<int>(assignment.size()) != n)
        throw ConfigError("modularity: assignment does not cover all nodes");
    int n_comms = 0;
    for (int label : assignment) {
        if (label < 0) throw ConfigError("modularity: negative community label");
        n_comms = std::max(n_comms, label + 1);
    }
    std::vector<std::int64_t> intra(n_comms, 0);
    std::vector<std::int64_t> total_degree(n_comms, 0);
    std::vector<char> seen(n_comms, 0);
    for (int v = 0; v < n; ++v) {
        seen[assignment[v]] = 1;
        total_degree[assignment[v]] += g.degree(v);
        for (int u : g.neighbors(v))
            if (assignment[u] == assignment[v]) ++intra[assignment[v]];
    }
    for (int c = 0; c < n_comms; ++c)
        if (!seen[c]) throw ConfigError("modularity: label gap (empty community)");

    const double m = static_cast<double>(g.num_edges());
    if (m == 0.0) return 0.0;
    double q = 0.0;
    for (int c = 0; c < n_comms; ++c) {
        const double e_c = static_cast<double>(intra[c]) / 2.0;
        const double d_c = static_cast<double>(total_degree[c]);
        q += e_c / m - resolution * (d_c / (2.0 * m)) * (d_c / (2.0 * m));
    }
    return q;
}

double modularity(const Graph& g, const Partition& p) {
    return modularity(g, p.assignment, 1.0);
}

std::string partition_csv(const Partition& p) {
    std::ostringstream out;
    out << "node,community\n";
    for (std::size_t v = 0; v < p.assignment.size(); ++v)
        out << v << ',' << p.assignment[v] << '\n';
    return out.str();
}

Boundary boundary(const Graph& g, const Partition& p) {
    if (static_cast<int>(p.assignment.size()) != g.num_nodes())
        throw ConfigError("boundary: partition does not cover all nodes");
    Boundary b;
    std::vector<char> is_boundary(g.num_nodes(), 0);
    for (auto [i, j] : g.edges()) {
        if (p.assignment[i] != p.assignment[j]) {
            b.edges.emplace_back(i, j);
            is_boundary[i] = 1;
            is_boundary[j] = 1;
        }
    }
    for (int v = 0; v < g.num_nodes(); ++v)
        if (is_boundary[v]) b.nodes.push_back(v);
    return b;
}

}  // namespace spmkit
