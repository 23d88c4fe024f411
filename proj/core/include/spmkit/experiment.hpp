#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spmkit/defenses.hpp"
#include "spmkit/epidemic.hpp"
#include "spmkit/graph.hpp"
#include "spmkit/graph_io.hpp"

namespace spmkit {

/// Where a graph comes from: an edge-list file or the scale-free generator.
/// Text forms: a plain path, or `ba:<n>,<m>[,<seed>]`.
struct GraphSpec {
    std::string file;
    bool use_generator = false;
    int gen_n = 0;
    int gen_m = 0;
    std::uint64_t gen_seed = 0;
    int kcore = 0;  // 0 = no core extraction
    std::string label;

    static GraphSpec parse(const std::string& text);
    std::string describe() const;
};

struct SourceGraph {
    Graph graph;
    std::vector<std::int64_t> original_ids;  // empty for generated graphs
    std::string label;
};

SourceGraph load_graph(const GraphSpec& spec);

/// One defense invocation, fully resolved. An empty strategy means
/// `no defense` (baseline rows).
struct DefenseSpec {
    std::optional<Strategy> strategy;
    int nodes = 0;
    std::optional<double> edge_fraction;
    std::optional<std::size_t> edge_count;
    std::uint64_t seed = 0;
    int met_track = 3;
    int met_batch = 0;
    double resolution = 1.0;
    std::vector<Stage> stages;  // hybrid only

    std::string label() const;
    DefenseResult apply(const Graph& g) const;
};

struct AttackSpec {
    Model model = Model::Siidr;
    std::string variant;  // preset name, or empty for explicit rates
    SiidrParams params;

    std::string label() const;
    static AttackSpec parse(const std::string& model_name, const std::string& params_text);
};

/// Before/after robustness metrics of one defense application.
struct DefendMetrics {
    double lambda_before = 0.0;
    double lambda_after = 0.0;
    double eigendrop_pct = 0.0;
    double sigma_before = 0.0;
    double sigma_after = 0.0;
    double wall_ms = 0.0;
};

DefendMetrics defend_metrics(const Graph& before, const Graph& after, double wall_ms);

/// One sweep cell: defense x attack with pinned run counts and seeds.
struct SweepCell {
    DefenseSpec defense;
    AttackSpec attack;
    int runs = 500;
    int max_steps = 1000;
    std::uint64_t sim_seed = 1;

    std::string key() const;  // canonical sort key
};

struct ExperimentConfig {
    GraphSpec graph;
    std::vector<SweepCell> cells;

    static ExperimentConfig from_json_file(const std::filesystem::path& path);
    static ExperimentConfig from_json_text(const std::string& text);
    std::string resolved_json() const;
};

struct SweepRow {
    std::string cell_key;
    std::uint64_t cell_hash = 0;
    std::string defense;
    int budget_nodes = 0;
    double budget_edge_fraction = 0.0;
    std::size_t edges_removed = 0;
    std::uint64_t defense_seed = 0;
    std::string attack;
    std::string model;
    DefendMetrics metrics;
    double s_effective = 0.0;
    double mean_footprint = 0.0;
    double died_out_fraction = 0.0;
    double slope = 0.0;
    double r2 = 0.0;
    bool slope_defined = false;
    int runs = 0;
    std::string error;  // non-empty when the cell failed

    static std::string csv_header();
    std::string to_csv() const;
};

std::uint64_t cell_hash(const Graph& g, const SweepCell& cell);

/// Runs one cell end to end (defense, metrics, ensemble, die-out report).
SweepRow run_cell(const Graph& g, const SweepCell& cell);

/// Runs every cell, caching each finished cell as JSON under
/// out_dir/cells/<hash>.json so an interrupted sweep resumes where it
/// stopped. Failed cells are recorded and the sweep continues. Rows come back
/// sorted by cell key. jobs > 1 runs cells concurrently.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, const Graph& g,
                                const std::filesystem::path& out_dir, int jobs);

/// CSV writers shared by the CLI commands; every file starts with the
/// reproducibility header.
std::string trajectory_csv(const Trajectory& traj, int n_nodes,
                           const std::string& config_json);
std::string ensemble_csv(const EnsembleCurves& curves, const std::string& config_json);
std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& config_json);

}  // namespace spmkit
