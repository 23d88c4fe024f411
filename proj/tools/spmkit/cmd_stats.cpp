#include <iostream>
#include <memory>

#include "spmkit/csv.hpp"
#include "spmkit/experiment.hpp"
#include "spmkit/graph_stats.hpp"

#include "commands.hpp"

namespace spmkit::cli {

namespace {

struct StatsOptions {
    std::string graph;
    int kcore = 0;
    std::string label;
    std::string out;
    bool json = false;
    int distance_sample = 2000;
    std::uint64_t seed = 0;
};

void run_stats(const StatsOptions& opt) {
    GraphSpec spec = GraphSpec::parse(opt.graph);
    spec.kcore = opt.kcore;
    SourceGraph src = load_graph(spec);
    const std::string label = opt.label.empty() ? src.label : opt.label;

    GraphStats stats = compute_stats(src.graph, opt.distance_sample, opt.seed);

    std::string body;
    if (opt.json) {
        body = stats_json(label, stats) + "\n";
    } else {
        body = stats_csv_header() + "\n" + stats_csv_row(label, stats) + "\n";
    }
    if (opt.out.empty()) {
        std::cout << body;
    } else {
        write_file(opt.out, repro_header("{\"cmd\":\"stats\",\"graph\":\"" +
                                         spec.describe() + "\",\"seed\":" +
                                         std::to_string(opt.seed) + "}") +
                               body);
        std::cout << "wrote " << opt.out << '\n';
    }
}

}  // namespace

void register_stats(CLI::App& app) {
    auto opt = std::make_shared<StatsOptions>();
    CLI::App* cmd = app.add_subcommand(
        "stats", "Topological statistics of a graph (one CSV row or JSON object)");
    cmd->add_option("--graph", opt->graph,
                    "Edge-list file or generator spec ba:<n>,<m>[,<seed>]")
        ->required();
    cmd->add_option("--kcore", opt->kcore, "Extract the k-core before computing stats");
    cmd->add_option("--label", opt->label, "Row label (default: file stem / generator)");
    cmd->add_option("--out", opt->out, "Write to file instead of stdout");
    cmd->add_flag("--json", opt->json, "Emit a JSON object instead of CSV");
    cmd->add_option("--distance-sample", opt->distance_sample,
                    "All-pairs BFS cutoff; larger graphs sample this many sources");
    cmd->add_option("--seed", opt->seed, "Seed for distance sampling");
    cmd->callback([opt] { run_stats(*opt); });
}

}  // namespace spmkit::cli
