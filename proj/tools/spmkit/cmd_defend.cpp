#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "spmkit/centrality.hpp"
#include "spmkit/csv.hpp"
#include "spmkit/errors.hpp"
#include "spmkit/experiment.hpp"
#include "spmkit/spectral.hpp"

#include "commands.hpp"

namespace spmkit::cli {

namespace {

struct DefendOptions {
    std::string graph;
    int kcore = 0;
    std::string strategy;
    int nodes = 0;
    double edge_fraction = -1.0;
    std::int64_t edges = -1;
    double resolution = 1.0;
    int met_track = 3;
    int met_batch = 0;
    std::vector<std::string> stages;
    std::uint64_t seed = 0;
    std::string out = "defend_out";
};

// Stage syntax: <strategy>[:key=value,...], e.g. nodesplit:nodes=50 or
// met:edge_fraction=0.1,batch=5
Stage parse_stage(const std::string& text) {
    Stage stage;
    const auto colon = text.find(':');
    stage.strategy = strategy_from_string(text.substr(0, colon));
    if (colon == std::string::npos) return stage;
    std::istringstream ss(text.substr(colon + 1));
    std::string kv;
    while (std::getline(ss, kv, ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("bad stage option (want key=value): " + kv);
        const std::string key = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        if (key == "nodes") stage.nodes = std::stoi(value);
        else if (key == "edge_fraction") stage.edges.frac = std::stod(value);
        else if (key == "edges") stage.edges.edges = std::stoull(value);
        else if (key == "seed") stage.seed = std::stoull(value);
        else if (key == "resolution") stage.resolution = std::stod(value);
        else if (key == "track") stage.met_track = std::stoi(value);
        else if (key == "batch") stage.met_batch = std::stoi(value);
        else throw ConfigError("unknown stage option: " + key);
    }
    return stage;
}

void run_defend(const DefendOptions& opt) {
    GraphSpec spec = GraphSpec::parse(opt.graph);
    spec.kcore = opt.kcore;
    SourceGraph src = load_graph(spec);

    DefenseSpec defense;
    if (opt.strategy != "none") defense.strategy = strategy_from_string(opt.strategy);
    defense.nodes = opt.nodes;
    if (opt.edge_fraction >= 0.0) defense.edge_fraction = opt.edge_fraction;
    if (opt.edges >= 0) defense.edge_count = static_cast<std::size_t>(opt.edges);
    defense.seed = opt.seed;
    defense.resolution = opt.resolution;
    defense.met_track = opt.met_track;
    defense.met_batch = opt.met_batch;
    for (const auto& s : opt.stages) defense.stages.push_back(parse_stage(s));
    if (defense.strategy == Strategy::Hybrid && defense.stages.empty())
        throw ConfigError("hybrid strategy needs at least one --stage");

    const auto t0 = std::chrono::steady_clock::now();
    DefenseResult result = defense.apply(src.graph);
    const auto t1 = std::chrono::steady_clock::now();
    const double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    DefendMetrics metrics = defend_metrics(src.graph, result.arg, wall_ms);

    std::filesystem::create_directories(opt.out);
    const std::filesystem::path dir(opt.out);

    std::string config = "{\"cmd\":\"defend\",\"graph\":\"" + spec.describe() +
                         "\",\"defense\":\"" + defense.label() +
                         "\",\"nodes\":" + std::to_string(defense.nodes) +
                         ",\"seed\":" + std::to_string(defense.seed) + "}";

    // Attacker's reachability graph. Split-created nodes have no source id;
    // they are reported past the original id range.
    write_edge_list(dir / "arg.edges", result.arg);
    if (!src.original_ids.empty()) {
        auto ids = src.original_ids;
        for (int v = static_cast<int>(ids.size()); v < result.arg.num_nodes(); ++v)
            ids.push_back(v);
        write_id_map(dir / "arg.ids", ids);
    }
    {
        std::ofstream plan_out(dir / "plan.jsonl");
        if (!plan_out) throw IoError("cannot write plan: " + (dir / "plan.jsonl").string());
        write_plan_jsonl(plan_out, result.plan);
    }
    // Dump the score tables the chosen strategy ranked on.
    if (defense.strategy == Strategy::Degree || defense.strategy == Strategy::Ens ||
        defense.strategy == Strategy::Nb) {
        CentralityKind kind = defense.strategy == Strategy::Degree
                                  ? CentralityKind::Degree
                                  : (defense.strategy == Strategy::Ens
                                         ? CentralityKind::Ens
                                         : CentralityKind::Nb);
        write_file(dir / "centrality.csv",
                   centrality_csv(centrality(src.graph, kind)));
    } else if (defense.strategy == Strategy::Met) {
        auto pair = leading_eigenpair(src.graph);
        write_file(dir / "eigen_scores.csv",
                   eigen_scores_csv(eigen_scores(src.graph, pair)));
    } else if (defense.strategy == Strategy::CiEdge ||
               defense.strategy == Strategy::CiNode) {
        write_file(dir / "partition.csv",
                   partition_csv(detect_communities(src.graph, defense.resolution,
                                                    defense.seed)));
    }

    std::ostringstream metrics_csv;
    metrics_csv << repro_header(config)
                << "defense,lambda_before,lambda_after,eigendrop_pct,sigma_before,"
                   "sigma_after,nodes_removed,edges_removed,nodes_split,"
                   "edges_dropped,shortfall,wall_ms\n";
    metrics_csv.precision(10);
    metrics_csv << defense.label() << ',' << metrics.lambda_before << ','
                << metrics.lambda_after << ',' << metrics.eigendrop_pct << ','
                << metrics.sigma_before << ',' << metrics.sigma_after << ','
                << result.plan.nodes_removed << ',' << result.plan.edges_removed << ','
                << result.plan.nodes_split << ',' << result.plan.edges_dropped << ','
                << result.plan.shortfall << ',' << metrics.wall_ms << '\n';
    write_file(dir / "metrics.csv", metrics_csv.str());

    std::cout << "defense " << defense.label() << ": lambda " << metrics.lambda_before
              << " -> " << metrics.lambda_after << " (drop " << metrics.eigendrop_pct
              << "%), sigma " << metrics.sigma_before << " -> " << metrics.sigma_after
              << "\nwrote " << (dir / "arg.edges").string() << ", plan.jsonl, metrics.csv\n";
}

}  // namespace

void register_defend(CLI::App& app) {
    auto opt = std::make_shared<DefendOptions>();
    CLI::App* cmd = app.add_subcommand(
        "defend", "Apply one defense and emit the ARG, edit plan, and metrics");
    cmd->add_option("--graph", opt->graph, "Edge-list file or ba:<n>,<m>[,<seed>]")
        ->required();
    cmd->add_option("--kcore", opt->kcore, "Extract the k-core first");
    cmd->add_option("--strategy", opt->strategy,
                    "nodesplit|met|rande|degree|ens|nb|randn|ci-edge|ci-node|hybrid|none")
        ->required();
    cmd->add_option("--nodes", opt->nodes, "Node budget (splits / removals)");
    cmd->add_option("--edge-fraction", opt->edge_fraction,
                    "Edge budget as a fraction of current edges");
    cmd->add_option("--edges", opt->edges, "Edge budget as an absolute count");
    cmd->add_option("--resolution", opt->resolution, "Community detection resolution");
    cmd->add_option("--track", opt->met_track, "MET: tracked eigenpairs");
    cmd->add_option("--batch", opt->met_batch, "MET: removals per recompute (0 = auto)");
    cmd->add_option("--stage", opt->stages,
                    "Hybrid stage spec, repeatable: <strategy>[:k=v,...]");
    cmd->add_option("--seed", opt->seed, "Seed for randomized strategies");
    cmd->add_option("--out", opt->out, "Output directory");
    cmd->callback([opt] { run_defend(*opt); });
}

}  // namespace spmkit::cli
