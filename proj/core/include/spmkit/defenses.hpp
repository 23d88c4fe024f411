#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spmkit/communities.hpp"
#include "spmkit/graph.hpp"

namespace spmkit {

enum class Strategy {
    NodeSplit,
    Met,
    RandE,
    Degree,
    Ens,
    Nb,
    RandN,
    CiEdge,
    CiNode,
    Hybrid,
};

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

/// One topological edit. Applying the edits of a plan in order to the source
/// graph reproduces the returned graph exactly.
struct Edit {
    enum class Kind { RemoveNode, RemoveEdge, SplitNode };
    Kind kind;
    int a = -1;                  // node id / edge endpoint i
    int b = -1;                  // edge endpoint j / split: new node id
    std::vector<int> moved;      // split: neighbors rewired to the new node
    std::vector<int> dropped;    // split: rewires skipped as duplicates

    bool operator==(const Edit&) const = default;
};

/// Auditable record of what a defense did to produce the attacker's
/// reachability graph.
struct DefensePlan {
    Strategy strategy = Strategy::Hybrid;
    std::vector<Edit> edits;
    int nodes_removed = 0;
    int edges_removed = 0;   // direct removals, not edges lost to node removal
    int nodes_split = 0;
    int edges_dropped = 0;   // duplicate collisions during splits
    int shortfall = 0;       // requested budget that could not be spent
};

struct DefenseResult {
    Graph arg;  // attacker's reachability graph
    DefensePlan plan;
};

/// Edge budget: an absolute count or a fraction of the current edge set
/// (fraction resolves to floor(f * M)).
struct EdgeBudget {
    static EdgeBudget count(std::size_t c) { return {c, std::nullopt}; }
    static EdgeBudget fraction(double f) { return {std::nullopt, f}; }

    std::optional<std::size_t> edges;
    std::optional<double> frac;

    std::size_t resolve(const Graph& g) const;
};

/// Splits the current top-degree node k times: ceil(d/2) of its incident
/// edges, chosen uniformly at random (seeded), move to a fresh node. Ties on
/// degree break toward the lowest id.
DefenseResult node_split(const Graph& g, int k, std::uint64_t seed);

/// Greedy eigen-score edge removal with eigenpair recomputation. Each round
/// removes `batch` top-scoring edges (ties toward lexicographically lowest
/// edge), then recomputes. When the top eigenvalues are nearly degenerate
/// (relative gap < 1e-8), scores take the max over the `track` leading
/// eigenpairs' perturbation estimates. batch <= 0 picks the default schedule:
/// 1 for graphs up to 50k edges, ceil(budget/20) above.
DefenseResult met_harden(const Graph& g, EdgeBudget budget, int track = 3,
                         int batch = 0);

/// Baseline: removes a uniform random sample of edges.
DefenseResult rand_edge_harden(const Graph& g, EdgeBudget budget, std::uint64_t seed);

/// Removes the k top nodes by a statically computed centrality (Degree, Ens,
/// Nb), ties toward the lowest id; RandN removes a uniform random k-subset.
DefenseResult node_harden(const Graph& g, Strategy strategy, int k,
                          std::uint64_t seed = 0);

/// Removes every inter-community edge of the partition.
DefenseResult ci_edge(const Graph& g, const Partition& p);

/// Removes the k highest-degree boundary nodes (ties toward the lowest id).
/// Boundary membership is computed once on the input partition. If k exceeds
/// the boundary size the plan records the shortfall.
DefenseResult ci_node(const Graph& g, const Partition& p, int k);

/// One stage of a hybrid strategy. CiEdge/CiNode stages detect communities on
/// the graph they receive (the post-previous-stage graph).
struct Stage {
    Strategy strategy;
    int nodes = 0;            // NodeSplit k / node-hardening k / CiNode k
    EdgeBudget edges{};       // Met / RandE
    std::uint64_t seed = 0;
    double resolution = 1.0;  // CiEdge / CiNode community detection
    int met_track = 3;
    int met_batch = 0;
};

/// Applies stages in order, composing their plans.
DefenseResult hybrid(const Graph& g, std::span<const Stage> stages);

/// Replays a plan against a graph. Throws ConfigError if an edit references a
/// missing node or edge.
Graph apply_plan(const Graph& g, const DefensePlan& plan);

/// JSON-lines serialization, one edit per line, e.g.
/// {"op":"remove_edge","i":3,"j":7}.
void write_plan_jsonl(std::ostream& out, const DefensePlan& plan);
DefensePlan read_plan_jsonl(std::istream& in);

}  // namespace spmkit
