#include "spmkit/defenses.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include <nlohmann/json.hpp>

#include "spmkit/centrality.hpp"
#include "spmkit/errors.hpp"
#include "spmkit/rng.hpp"
#include "spmkit/spectral.hpp"

namespace spmkit {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::NodeSplit: return "nodesplit";
        case Strategy::Met: return "met";
        case Strategy::RandE: return "rande";
        case Strategy::Degree: return "degree";
        case Strategy::Ens: return "ens";
        case Strategy::Nb: return "nb";
        case Strategy::RandN: return "randn";
        case Strategy::CiEdge: return "ci-edge";
        case Strategy::CiNode: return "ci-node";
        case Strategy::Hybrid: return "hybrid";
    }
    return "?";
}

Strategy strategy_from_string(const std::string& name) {
    for (Strategy s : {Strategy::NodeSplit, Strategy::Met, Strategy::RandE,
                       Strategy::Degree, Strategy::Ens, Strategy::Nb, Strategy::RandN,
                       Strategy::CiEdge, Strategy::CiNode, Strategy::Hybrid}) {
        if (to_string(s) == name) return s;
    }
    throw ConfigError("unknown defense strategy: " + name);
}

std::size_t EdgeBudget::resolve(const Graph& g) const {
    if (edges) return *edges;
    if (frac) {
        if (*frac < 0.0 || *frac > 1.0)
            throw ConfigError("edge budget fraction must be in [0,1]");
        return static_cast<std::size_t>(*frac * static_cast<double>(g.num_edges()));
    }
    return 0;
}

namespace {

// Editable adjacency used while a defense runs; collapsed back to a Graph at
// the end. Neighbor lists stay sorted so edits are logarithmic.
struct Workspace {
    std::vector<std::vector<int>> adj;
    std::size_t edge_count = 0;

    explicit Workspace(const Graph& g) {
        adj.resize(g.num_nodes());
        for (int v = 0; v < g.num_nodes(); ++v) {
            auto nbrs = g.neighbors(v);
            adj[v].assign(nbrs.begin(), nbrs.end());
        }
        edge_count = g.num_edges();
    }

    int num_nodes() const { return static_cast<int>(adj.size()); }

    bool has_edge(int i, int j) const {
        return std::binary_search(adj[i].begin(), adj[i].end(), j);
    }

    void insert_half(int i, int j) {
        auto& v = adj[i];
        v.insert(std::lower_bound(v.begin(), v.end(), j), j);
    }

    void erase_half(int i, int j) {
        auto& v = adj[i];
        auto it = std::lower_bound(v.begin(), v.end(), j);
        if (it == v.end() || *it != j)
            throw ConfigError("plan edit references missing edge");
        v.erase(it);
    }

    void add_edge(int i, int j) {
        insert_half(i, j);
        insert_half(j, i);
        ++edge_count;
    }

    void remove_edge(int i, int j) {
        erase_half(i, j);
        erase_half(j, i);
        --edge_count;
    }

    void remove_node(int v) {
        if (v < 0 || v >= num_nodes())
            throw ConfigError("plan edit references missing node");
        for (int u : adj[v]) {
            erase_half(u, v);
            --edge_count;
        }
        adj[v].clear();
    }

    int add_node() {
        adj.emplace_back();
        return num_nodes() - 1;
    }

    Graph to_graph() const {
        std::vector<std::pair<int, int>> edges;
        edges.reserve(edge_count);
        for (int v = 0; v < num_nodes(); ++v)
            for (int u : adj[v])
                if (v < u) edges.emplace_back(v, u);
        return Graph::from_edges(num_nodes(), std::move(edges));
    }
};

void apply_split(Workspace& ws, Edit& edit, bool replay) {
    const int v = edit.a;
    if (v < 0 || v >= ws.num_nodes())
        throw ConfigError("split edit references missing node");
    const int fresh = ws.add_node();
    if (fresh != edit.b)
        throw ConfigError("split edit new-node id mismatch");
    std::vector<int> dropped;
    for (int u : edit.moved) {
        ws.remove_edge(v, u);
        if (ws.has_edge(fresh, u)) {
            dropped.push_back(u);
        } else {
            ws.add_edge(fresh, u);
        }
    }
    if (replay) {
        if (dropped != edit.dropped)
            throw ConfigError("split edit drop set mismatch on replay");
    } else {
        edit.dropped = std::move(dropped);
    }
}

int top_degree_node(const Workspace& ws) {
    int best = -1;
    std::size_t best_deg = 0;
    for (int v = 0; v < ws.num_nodes(); ++v) {
        if (ws.adj[v].size() > best_deg) {
            best_deg = ws.adj[v].size();
            best = v;
        }
    }
    return best_deg == 0 ? -1 : best;
}

struct GapProbe {
    double lambda = -std::numeric_limits<double>::infinity();
    bool converged = true;
};

// Loose estimate of the second adjacency eigenvalue: power iteration on
// (A + I) deflating the leading vector. Only used to decide whether MET needs
// to track multiple eigenpairs, so 3-4 digits are plenty.
GapProbe second_eigen_probe(const Graph& g, const std::vector<double>& v1,
                            double tol, int max_iter) {
    const int n = g.num_nodes();
    std::vector<double> x(n), y(n);
    for (int v = 0; v < n; ++v)
        x[v] = g.degree(v) + 1.0 + 0.1 * (v % 5);
    auto deflate = [&](std::vector<double>& vec) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += vec[i] * v1[i];
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
            vec[i] -= dot * v1[i];
            norm += vec[i] * vec[i];
        }
        norm = std::sqrt(norm);
        if (norm < 1e-280) return false;
        for (double& v : vec) v /= norm;
        return true;
    };
    GapProbe probe;
    if (!deflate(x)) return probe;  // no second direction at all

    double rq = 0.0, prev = std::numeric_limits<double>::quiet_NaN();
    probe.converged = false;
    for (int iter = 1; iter <= max_iter; ++iter) {
        for (int v = 0; v < n; ++v) {
            double acc = x[v];
            for (int u : g.neighbors(v)) acc += x[u];
            y[v] = acc;
        }
        double dot = 0.0;
        for (int v = 0; v < n; ++v) dot += x[v] * y[v];
        rq = dot;
        x = y;
        if (!deflate(x)) break;
        if (iter > 1 && std::abs(rq - prev) < tol * std::max(std::abs(rq), 1e-300)) {
            probe.converged = true;
            break;
        }
        prev = rq;
    }
    probe.lambda = rq - 1.0;
    return probe;
}

}  // namespace

DefenseResult node_split(const Graph& g, int k, std::uint64_t seed) {
    if (g.num_nodes() == 0) throw ConfigError("node_split: empty graph");
    if (k < 0) throw ConfigError("node_split: negative split count");

    Workspace ws(g);
    Rng rng(seed);
    DefensePlan plan;
    plan.strategy = Strategy::NodeSplit;

    for (int s = 0; s < k; ++s) {
        const int v = top_degree_node(ws);
        if (v < 0) {
            plan.shortfall = k - s;  // nothing left to split
            break;
        }
        const int d = static_cast<int>(ws.adj[v].size());
        const int move_count = (d + 1) / 2;

        // Uniform sample of move_count incident edges.
        std::vector<int> pool = ws.adj[v];
        for (int i = 0; i < move_count; ++i) {
            std::size_t j = i + rng.uniform_int(pool.size() - i);
            std::swap(pool[i], pool[j]);
        }
        std::vector<int> moved(pool.begin(), pool.begin() + move_count);
        std::sort(moved.begin(), moved.end());

        Edit edit;
        edit.kind = Edit::Kind::SplitNode;
        edit.a = v;
        edit.b = ws.num_nodes();
        edit.moved = std::move(moved);
        apply_split(ws, edit, /*replay=*/false);
        plan.edges_dropped += static_cast<int>(edit.dropped.size());
        plan.edits.push_back(std::move(edit));
        ++plan.nodes_split;
    }
    return {ws.to_graph(), std::move(plan)};
}

DefenseResult met_harden(const Graph& g, EdgeBudget budget, int track, int batch) {
    const std::size_t b = budget.resolve(g);
    if (b > g.num_edges()) throw ConfigError("met_harden: budget exceeds edge count");
    if (track < 1) throw ConfigError("met_harden: track must be >= 1");
    if (batch <= 0)
        batch = g.num_edges() <= 50000
                    ? 1
                    : static_cast<int>((b + 19) / 20);

    Workspace ws(g);
    DefensePlan plan;
    plan.strategy = Strategy::Met;

    std::size_t removed = 0;
    while (removed < b) {
        Graph cur = ws.to_graph();
        EigenPair pair1 = leading_eigenpair(cur);

        // Full multi-pair tracking is expensive, so probe the spectral gap
        // first and only deflate when the top eigenvalues could actually tie.
        bool need_tracking = pair1.degenerate && track > 1;
        if (!need_tracking && track > 1) {
            GapProbe probe = second_eigen_probe(cur, pair1.vector, 1e-4, 400);
            need_tracking =
                !probe.converged ||
                pair1.lambda1 - probe.lambda <
                    1e-3 * std::max(std::abs(pair1.lambda1), 1.0);
        }

        SpectralTop top;
        std::vector<const std::vector<double>*> tracked;
        if (need_tracking) {
            top = leading_eigenpairs(cur, track);
            const double lambda1 = top.values.front();
            tracked.push_back(&top.vectors.front());
            for (std::size_t kk = 1; kk < top.values.size(); ++kk) {
                if (lambda1 - top.values[kk] <
                    1e-8 * std::max(std::abs(lambda1), 1.0))
                    tracked.push_back(&top.vectors[kk]);
            }
        } else {
            tracked.push_back(&pair1.vector);
        }

        struct Scored {
            double score;
            int i, j;
        };
        std::vector<Scored> scored;
        scored.reserve(cur.num_edges());
        for (auto [i, j] : cur.edges()) {
            double s = 0.0;
            for (const auto* vec : tracked)
                s = std::max(s, std::abs((*vec)[i] * (*vec)[j]));
            scored.push_back({s, i, j});
        }
        const std::size_t take =
            std::min<std::size_t>(static_cast<std::size_t>(batch), b - removed);
        std::partial_sort(scored.begin(), scored.begin() + take, scored.end(),
                          [](const Scored& a, const Scored& z) {
                              if (a.score != z.score) return a.score > z.score;
                              if (a.i != z.i) return a.i < z.i;
                              return a.j < z.j;
                          });
        for (std::size_t t = 0; t < take; ++t) {
            ws.remove_edge(scored[t].i, scored[t].j);
            plan.edits.push_back({Edit::Kind::RemoveEdge, scored[t].i, scored[t].j, {}, {}});
            ++plan.edges_removed;
            ++removed;
        }
    }
    return {ws.to_graph(), std::move(plan)};
}

DefenseResult rand_edge_harden(const Graph& g, EdgeBudget budget, std::uint64_t seed) {
    const std::size_t b = budget.resolve(g);
    if (b > g.num_edges())
        throw ConfigError("rand_edge_harden: budget exceeds edge count");

    auto edges = g.edges();
    Rng rng(seed);
    Workspace ws(g);
    DefensePlan plan;
    plan.strategy = Strategy::RandE;
    for (std::size_t i = 0; i < b; ++i) {
        std::size_t j = i + rng.uniform_int(edges.size() - i);
        std::swap(edges[i], edges[j]);
        ws.remove_edge(edges[i].first, edges[i].second);
        plan.edits.push_back(
            {Edit::Kind::RemoveEdge, edges[i].first, edges[i].second, {}, {}});
        ++plan.edges_removed;
    }
    return {ws.to_graph(), std::move(plan)};
}

DefenseResult node_harden(const Graph& g, Strategy strategy, int k, std::uint64_t seed) {
    if (k < 0) throw ConfigError("node_harden: negative node count");
    if (k > g.num_nodes())
        throw ConfigError("node_harden: budget exceeds node count");

    std::vector<int> victims;
    if (strategy == Strategy::RandN) {
        std::vector<int> pool(g.num_nodes());
        std::iota(pool.begin(), pool.end(), 0);
        Rng rng(seed);
        for (int i = 0; i < k; ++i) {
            std::size_t j = i + rng.uniform_int(pool.size() - i);
            std::swap(pool[i], pool[j]);
            victims.push_back(pool[i]);
        }
    } else {
        CentralityKind kind;
        switch (strategy) {
            case Strategy::Degree: kind = CentralityKind::Degree; break;
            case Strategy::Ens: kind = CentralityKind::Ens; break;
            case Strategy::Nb: kind = CentralityKind::Nb; break;
            default:
                throw ConfigError("node_harden: strategy is not a node-hardening kind");
        }
        auto cv = centrality(g, kind);
        std::vector<int> order(g.num_nodes());
        std::iota(order.begin(), order.end(), 0);
        // Static ranking, recomputed once: descending score, ties by lowest id.
        std::sort(order.begin(), order.end(), [&](int a, int z) {
            if (cv.scores[a] != cv.scores[z]) return cv.scores[a] > cv.scores[z];
            return a < z;
        });
        victims.assign(order.begin(), order.begin() + k);
    }

    Workspace ws(g);
    DefensePlan plan;
    plan.strategy = strategy;
    for (int v : victims) {
        ws.remove_node(v);
        plan.edits.push_back({Edit::Kind::RemoveNode, v, -1, {}, {}});
        ++plan.nodes_removed;
    }
    return {ws.to_graph(), std::move(plan)};
}

DefenseResult ci_edge(const Graph& g, const Partition& p) {
    auto b = boundary(g, p);
    Workspace ws(g);
    DefensePlan plan;
    plan.strategy = Strategy::CiEdge;
    for (auto [i, j] : b.edges) {
        ws.remove_edge(i, j);
        plan.edits.push_back({Edit::Kind::RemoveEdge, i, j, {}, {}});
        ++plan.edges_removed;
    }
    return {ws.to_graph(), std::move(plan)};
}

DefenseResult ci_node(const Graph& g, const Partition& p, int k) {
    if (k < 0) throw ConfigError("ci_node: negative node count");
    auto b = boundary(g, p);
    // Static boundary membership; rank by degree desc, ties by lowest id.
    std::sort(b.nodes.begin(), b.nodes.end(), [&](int a, int z) {
        if (g.degree(a) != g.degree(z)) return g.degree(a) > g.degree(z);
        return a < z;
    });
    DefensePlan plan;
    plan.strategy = Strategy::CiNode;
    const int take = std::min<int>(k, static_cast<int>(b.nodes.size()));
    plan.shortfall = k - take;
    Workspace ws(g);
    for (int t = 0; t < take; ++t) {
        ws.remove_node(b.nodes[t]);
        plan.edits.push_back({Edit::Kind::RemoveNode, b.nodes[t], -1, {}, {}});
        ++plan.nodes_removed;
    }
    return {ws.to_graph(), std::move(plan)};
}

DefenseResult hybrid(const Graph& g, std::span<const Stage> stages) {
    if (stages.empty()) throw ConfigError("hybrid: no stages");
    Graph current = g;
    DefensePlan plan;
    plan.strategy = Strategy::Hybrid;
    for (const Stage& stage : stages) {
        DefenseResult step;
        switch (stage.strategy) {
            case Strategy::NodeSplit:
                step = node_split(current, stage.nodes, stage.seed);
                break;
            case Strategy::Met:
                step = met_harden(current, stage.edges, stage.met_track, stage.met_batch);
                break;
            case Strategy::RandE:
                step = rand_edge_harden(current, stage.edges, stage.seed);
                break;
            case Strategy::Degree:
            case Strategy::Ens:
            case Strategy::Nb:
            case Strategy::RandN:
                step = node_harden(current, stage.strategy, stage.nodes, stage.seed);
                break;
            case Strategy::CiEdge: {
                auto part = detect_communities(current, stage.resolution, stage.seed);
                step = ci_edge(current, part);
                break;
            }
            case Strategy::CiNode: {
                auto part = detect_communities(current, stage.resolution, stage.seed);
                step = ci_node(current, part, stage.nodes);
                break;
            }
            case Strategy::Hybrid:
                throw ConfigError("hybrid: nested hybrid stages are not supported");
        }
        current = std::move(step.arg);
        for (auto& e : step.plan.edits) plan.edits.push_back(std::move(e));
        plan.nodes_removed += step.plan.nodes_removed;
        plan.edges_removed += step.plan.edges_removed;
        plan.nodes_split += step.plan.nodes_split;
        plan.edges_dropped += step.plan.edges_dropped;
        plan.shortfall += step.plan.shortfall;
    }
    return {std::move(current), std::move(plan)};
}

Graph apply_plan(const Graph& g, const DefensePlan& plan) {
    Workspace ws(g);
    for (const Edit& edit : plan.edits) {
        switch (edit.kind) {
            case Edit::Kind::RemoveEdge:
                ws.remove_edge(edit.a, edit.b);
                break;
            case Edit::Kind::RemoveNode:
                ws.remove_node(edit.a);
                break;
            case Edit::Kind::SplitNode: {
                Edit copy = edit;
                apply_split(ws, copy, /*replay=*/true);
                break;
            }
        }
    }
    return ws.to_graph();
}

void write_plan_jsonl(std::ostream& out, const DefensePlan& plan) {
    for (const Edit& e : plan.edits) {
        nlohmann::json j;
        switch (e.kind) {
            case Edit::Kind::RemoveEdge:
                j = {{"op", "remove_edge"}, {"i", e.a}, {"j", e.b}};
                break;
            case Edit::Kind::RemoveNode:
                j = {{"op", "remove_node"}, {"id", e.a}};
                break;
            case Edit::Kind::SplitNode:
                j = {{"op", "split_node"},
                     {"old", e.a},
                     {"new", e.b},
                     {"moved", e.moved},
                     {"dropped", e.dropped}};
                break;
        }
        out << j.dump() << '\n';
    }
}

DefensePlan read_plan_jsonl(std::istream& in) {
    DefensePlan plan;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw IoError("plan line " + std::to_string(line_no) + ": " + e.what());
        }
        const std::string op = j.at("op").get<std::string>();
        Edit e;
        if (op == "remove_edge") {
            e.kind = Edit::Kind::RemoveEdge;
            e.a = j.at("i").get<int>();
            e.b = j.at("j").get<int>();
            ++plan.edges_removed;
        } else if (op == "remove_node") {
            e.kind = Edit::Kind::RemoveNode;
            e.a = j.at("id").get<int>();
            ++plan.nodes_removed;
        } else if (op == "split_node") {
            e.kind = Edit::Kind::SplitNode;
            e.a = j.at("old").get<int>();
            e.b = j.at("new").get<int>();
            e.moved = j.at("moved").get<std::vector<int>>();
            e.dropped = j.at("dropped").get<std::vector<int>>();
            ++plan.nodes_split;
            plan.edges_dropped += static_cast<int>(e.dropped.size());
        } else {
            throw IoError("plan line " + std::to_string(line_no) + ": unknown op " + op);
        }
        plan.edits.push_back(std::move(e));
    }
    return plan;
}

}  // namespace spmkit
