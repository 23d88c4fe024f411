#include <iostream>
#include <memory>

#include "spmkit/csv.hpp"
#include "spmkit/experiment.hpp"

#include "commands.hpp"

namespace spmkit::cli {

namespace {

struct SweepOptions {
    std::string config;
    std::string out = "sweep_out";
    int jobs = 1;
};

void run(const SweepOptions& opt) {
    ExperimentConfig config = ExperimentConfig::from_json_file(opt.config);
    SourceGraph src = load_graph(config.graph);

    std::filesystem::create_directories(opt.out);
    auto rows = run_sweep(config, src.graph, opt.out, opt.jobs);

    const auto matrix = std::filesystem::path(opt.out) / "matrix.csv";
    write_file(matrix, sweep_csv(rows, config.resolved_json()));

    int failed = 0;
    for (const auto& row : rows)
        if (!row.error.empty()) ++failed;
    std::cout << rows.size() << " cells (" << failed << " failed), wrote "
              << matrix.string() << '\n';
}

}  // namespace

void register_sweep(CLI::App& app) {
    auto opt = std::make_shared<SweepOptions>();
    CLI::App* cmd = app.add_subcommand(
        "sweep", "Defense x attack experiment grid from a JSON config (resumable)");
    cmd->add_option("--config", opt->config, "Experiment config JSON")->required();
    cmd->add_option("--out", opt->out, "Output directory (cells/ cache + matrix.csv)");
    cmd->add_option("--jobs", opt->jobs, "Concurrent cells");
    cmd->callback([opt] { run(*opt); });
}

}  // namespace spmkit::cli
