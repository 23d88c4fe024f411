#include "spmkit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "spmkit/attack_registry.hpp"
#include "spmkit/csv.hpp"
#include "spmkit/errors.hpp"
#include "spmkit/generators.hpp"
#include "spmkit/spectral.hpp"

namespace spmkit {

using nlohmann::json;

GraphSpec GraphSpec::parse(const std::string& text) {
    GraphSpec spec;
    if (text.rfind("ba:", 0) == 0) {
        spec.use_generator = true;
        const std::string args = text.substr(3);
        std::istringstream ss(args);
        char comma = ',';
        if (!(ss >> spec.gen_n >> comma >> spec.gen_m) || comma != ',')
            throw ConfigError("bad generator spec (want ba:<n>,<m>[,<seed>]): " + text);
        if (ss >> comma >> spec.gen_seed) {
            if (comma != ',')
                throw ConfigError("bad generator spec: " + text);
        }
        spec.label = "ba(" + std::to_string(spec.gen_n) + "," +
                     std::to_string(spec.gen_m) + ",seed=" +
                     std::to_string(spec.gen_seed) + ")";
    } else {
        spec.file = text;
        spec.label = std::filesystem::path(text).stem().string();
    }
    return spec;
}

std::string GraphSpec::describe() const {
    std::string base = use_generator
                           ? "ba:" + std::to_string(gen_n) + "," + std::to_string(gen_m) +
                                 "," + std::to_string(gen_seed)
                           : file;
    if (kcore > 0) base += " kcore=" + std::to_string(kcore);
    return base;
}

SourceGraph load_graph(const GraphSpec& spec) {
    SourceGraph src;
    src.label = spec.label;
    if (spec.use_generator) {
        src.graph = generate_scale_free(spec.gen_n, spec.gen_m, spec.gen_seed);
    } else {
        auto loaded = load_edge_list(spec.file);
        src.graph = std::move(loaded.graph);
        src.original_ids = std::move(loaded.original_ids);
    }
    if (spec.kcore > 0) {
        auto nodes = k_core_nodes(src.graph, spec.kcore);
        if (nodes.empty())
            throw NumericalError("empty " + std::to_string(spec.kcore) + "-core for " +
                                 spec.describe());
        if (!src.original_ids.empty()) {
            std::vector<std::int64_t> kept;
            kept.reserve(nodes.size());
            for (int v : nodes) kept.push_back(src.original_ids[v]);
            src.original_ids = std::move(kept);
        }
        src.graph = induced_subgraph(src.graph, nodes);
    }
    return src;
}

std::string DefenseSpec::label() const {
    if (!strategy) return "none";
    std::string out = to_string(*strategy);
    if (*strategy == Strategy::Hybrid) {
        out += "[";
        for (std::size_t i = 0; i < stages.size(); ++i) {
            if (i) out += "+";
            out += to_string(stages[i].strategy);
            if (stages[i].nodes > 0) out += std::to_string(stages[i].nodes);
            if (stages[i].edges.frac)
                out += "f" + std::to_string(*stages[i].edges.frac);
            if (stages[i].edges.edges)
                out += "e" + std::to_string(*stages[i].edges.edges);
        }
        out += "]";
    }
    return out;
}

DefenseResult DefenseSpec::apply(const Graph& g) const {
    if (!strategy) return {g, DefensePlan{}};
    EdgeBudget budget;
    budget.edges = edge_count;
    budget.frac = edge_fraction;
    switch (*strategy) {
        case Strategy::NodeSplit:
            return node_split(g, nodes, seed);
        case Strategy::Met:
            return met_harden(g, budget, met_track, met_batch);
        case Strategy::RandE:
            return rand_edge_harden(g, budget, seed);
        case Strategy::Degree:
        case Strategy::Ens:
        case Strategy::Nb:
        case Strategy::RandN:
            return node_harden(g, *strategy, nodes, seed);
        case Strategy::CiEdge: {
            auto part = detect_communities(g, resolution, seed);
            return ci_edge(g, part);
        }
        case Strategy::CiNode: {
            auto part = detect_communities(g, resolution, seed);
            return ci_node(g, part, nodes);
        }
        case Strategy::Hybrid:
            return hybrid(g, stages);
    }
    throw ConfigError("unknown defense strategy");
}

std::string AttackSpec::label() const {
    if (!variant.empty()) return variant;
    std::ostringstream ss;
    ss.precision(6);
    ss << "beta=" << params.beta << ",mu=" << params.mu << ",g1=" << params.gamma1
       << ",g2=" << params.gamma2;
    return ss.str();
}

AttackSpec AttackSpec::parse(const std::string& model_name,
                             const std::string& params_text) {
    AttackSpec spec;
    spec.model = model_from_string(model_name);
    if (attack_registry().count(params_text)) {
        spec.variant = params_text;
        spec.params = attack_params(params_text);
        if (spec.model != Model::Siidr) {
            // Presets are SIIDR rates; reduced models drop the dormancy loop.
            spec.params.gamma1 = 0.0;
            spec.params.gamma2 = 0.0;
            if (spec.model == Model::Si) spec.params.mu = 0.0;
        }
    } else {
        // key=value pairs: beta=0.1,mu=0.05,gamma1=0,gamma2=0,dt=1
        std::istringstream ss(params_text);
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("bad attack params (want key=value,...): " + params_text);
            const std::string key = kv.substr(0, eq);
            const double value = std::stod(kv.substr(eq + 1));
            if (key == "beta") spec.params.beta = value;
            else if (key == "mu") spec.params.mu = value;
            else if (key == "gamma1" || key == "g1") spec.params.gamma1 = value;
            else if (key == "gamma2" || key == "g2") spec.params.gamma2 = value;
            else if (key == "dt") spec.params.dt = value;
            else throw ConfigError("unknown attack parameter: " + key);
        }
    }
    spec.params.validate(spec.model);
    return spec;
}

DefendMetrics defend_metrics(const Graph& before, const Graph& after, double wall_ms) {
    DefendMetrics m;
    m.lambda_before = leading_eigenpair(before).lambda1;
    m.lambda_after = after.num_edges() == 0 ? 0.0 : leading_eigenpair(after).lambda1;
    m.eigendrop_pct = m.lambda_before > 0.0
                          ? eigen_drop(m.lambda_before, m.lambda_after)
                          : 0.0;
    m.sigma_before = largest_cc_fraction(before);
    m.sigma_after = largest_cc_fraction(after);
    m.wall_ms = wall_ms;
    return m;
}

namespace {

json defense_to_json(const DefenseSpec& d) {
    json j;
    j["strategy"] = d.strategy ? to_string(*d.strategy) : "none";
    if (d.nodes > 0) j["nodes"] = d.nodes;
    if (d.edge_fraction) j["edge_fraction"] = *d.edge_fraction;
    if (d.edge_count) j["edge_count"] = *d.edge_count;
    j["seed"] = d.seed;
    if (d.strategy && (*d.strategy == Strategy::CiEdge || *d.strategy == Strategy::CiNode))
        j["resolution"] = d.resolution;
    if (d.strategy && *d.strategy == Strategy::Met) {
        j["track"] = d.met_track;
        j["batch"] = d.met_batch;
    }
    if (!d.stages.empty()) {
        json stages = json::array();
        for (const auto& s : d.stages) {
            json sj;
            sj["strategy"] = to_string(s.strategy);
            if (s.nodes > 0) sj["nodes"] = s.nodes;
            if (s.edges.frac) sj["edge_fraction"] = *s.edges.frac;
            if (s.edges.edges) sj["edge_count"] = *s.edges.edges;
            sj["seed"] = s.seed;
            stages.push_back(sj);
        }
        j["stages"] = stages;
    }
    return j;
}

json attack_to_json(const AttackSpec& a) {
    json j;
    j["model"] = to_string(a.model);
    if (!a.variant.empty()) j["variant"] = a.variant;
    j["beta"] = a.params.beta;
    j["mu"] = a.params.mu;
    j["gamma1"] = a.params.gamma1;
    j["gamma2"] = a.params.gamma2;
    j["dt"] = a.params.dt;
    return j;
}

Stage stage_from_json(const json& sj) {
    Stage s;
    s.strategy = strategy_from_string(sj.at("strategy").get<std::string>());
    s.nodes = sj.value("nodes", 0);
    if (sj.contains("edge_fraction")) s.edges.frac = sj["edge_fraction"].get<double>();
    if (sj.contains("edge_count")) s.edges.edges = sj["edge_count"].get<std::size_t>();
    s.seed = sj.value("seed", 0ull);
    s.resolution = sj.value("resolution", 1.0);
    return s;
}

}  // namespace

std::string SweepCell::key() const {
    std::ostringstream ss;
    ss << defense.label() << "|n" << defense.nodes << "|f"
       << (defense.edge_fraction ? *defense.edge_fraction : 0.0) << "|e"
       << (defense.edge_count ? *defense.edge_count : 0) << "|s" << defense.seed
       << "|" << attack.label() << "|" << to_string(attack.model) << "|r" << runs
       << "|t" << max_steps << "|x" << sim_seed;
    return ss.str();
}

std::uint64_t cell_hash(const Graph& g, const SweepCell& cell) {
    const std::string text = std::to_string(g.hash()) + "|" + cell.key();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::filesystem::path& path) {
    return from_json_text(read_file(path));
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    ExperimentConfig cfg;
    try {
        const auto& gj = j.at("graph");
        if (gj.is_string()) {
            cfg.graph = GraphSpec::parse(gj.get<std::string>());
        } else {
            if (gj.contains("file")) {
                cfg.graph = GraphSpec::parse(gj["file"].get<std::string>());
            } else {
                cfg.graph.use_generator = true;
                cfg.graph.gen_n = gj.at("n").get<int>();
                cfg.graph.gen_m = gj.at("m").get<int>();
                cfg.graph.gen_seed = gj.value("seed", 0ull);
                cfg.graph.label = "ba(" + std::to_string(cfg.graph.gen_n) + "," +
                                  std::to_string(cfg.graph.gen_m) + ",seed=" +
                                  std::to_string(cfg.graph.gen_seed) + ")";
            }
        }
        cfg.graph.kcore = j.value("kcore", 0);

        const int runs = j.value("runs", 500);
        const int max_steps = j.value("max_steps", 1000);
        const std::uint64_t sim_seed = j.value("sim_seed", 1ull);

        std::vector<AttackSpec> attacks;
        for (const auto& aj : j.at("attacks")) {
            AttackSpec a;
            a.model = model_from_string(aj.value("model", "siidr"));
            if (aj.contains("variant")) {
                a.variant = aj["variant"].get<std::string>();
                a.params = attack_params(a.variant);
                if (a.model != Model::Siidr) {
                    a.params.gamma1 = 0.0;
                    a.params.gamma2 = 0.0;
                    if (a.model == Model::Si) a.params.mu = 0.0;
                }
            } else {
                a.params.beta = aj.at("beta").get<double>();
                a.params.mu = aj.value("mu", 0.0);
                a.params.gamma1 = aj.value("gamma1", 0.0);
                a.params.gamma2 = aj.value("gamma2", 0.0);
                a.params.dt = aj.value("dt", 1.0);
            }
            a.params.validate(a.model);
            attacks.push_back(std::move(a));
        }
        if (attacks.empty()) throw ConfigError("config has no attacks");

        for (const auto& dj : j.at("defenses")) {
            const std::string name = dj.value("strategy", "none");

            std::vector<int> node_budgets;
            if (dj.contains("nodes")) {
                if (dj["nodes"].is_array())
                    node_budgets = dj["nodes"].get<std::vector<int>>();
                else
                    node_budgets.push_back(dj["nodes"].get<int>());
            } else {
                node_budgets.push_back(0);
            }
            std::vector<std::optional<double>> fractions;
            if (dj.contains("edge_fraction")) {
                if (dj["edge_fraction"].is_array())
                    for (double f : dj["edge_fraction"]) fractions.emplace_back(f);
                else
                    fractions.emplace_back(dj["edge_fraction"].get<double>());
            } else {
                fractions.emplace_back(std::nullopt);
            }
            std::vector<std::uint64_t> seeds;
            if (dj.contains("seeds"))
                seeds = dj["seeds"].get<std::vector<std::uint64_t>>();
            else
                seeds.push_back(dj.value("seed", 0ull));

            for (int nb : node_budgets) {
                for (const auto& frac : fractions) {
                    for (std::uint64_t ds : seeds) {
                        DefenseSpec d;
                        if (name != "none") d.strategy = strategy_from_string(name);
                        d.nodes = nb;
                        d.edge_fraction = frac;
                        if (dj.contains("edge_count"))
                            d.edge_count = dj["edge_count"].get<std::size_t>();
                        d.seed = ds;
                        d.met_track = dj.value("track", 3);
                        d.met_batch = dj.value("batch", 0);
                        d.resolution = dj.value("resolution", 1.0);
                        if (dj.contains("stages"))
                            for (const auto& sj : dj["stages"])
                                d.stages.push_back(stage_from_json(sj));
                        for (const auto& a : attacks) {
                            SweepCell cell;
                            cell.defense = d;
                            cell.attack = a;
                            cell.runs = runs;
                            cell.max_steps = max_steps;
                            cell.sim_seed = sim_seed;
                            cfg.cells.push_back(std::move(cell));
                        }
                    }
                }
            }
        }
        if (cfg.cells.empty()) throw ConfigError("config has no defenses");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config: ") + e.what());
    }
    return cfg;
}

std::string ExperimentConfig::resolved_json() const {
    json j;
    j["graph"] = graph.describe();
    json cells_json = json::array();
    for (const auto& cell : cells) {
        json cj;
        cj["defense"] = defense_to_json(cell.defense);
        cj["attack"] = attack_to_json(cell.attack);
        cj["runs"] = cell.runs;
        cj["max_steps"] = cell.max_steps;
        cj["sim_seed"] = cell.sim_seed;
        cells_json.push_back(cj);
    }
    j["cells"] = cells_json;
    return j.dump();
}

SweepRow run_cell(const Graph& g, const SweepCell& cell) {
    SweepRow row;
    row.cell_key = cell.key();
    row.cell_hash = cell_hash(g, cell);
    row.defense = cell.defense.label();
    row.budget_nodes = cell.defense.nodes;
    row.budget_edge_fraction =
        cell.defense.edge_fraction ? *cell.defense.edge_fraction : 0.0;
    row.defense_seed = cell.defense.seed;
    row.attack = cell.attack.label();
    row.model = to_string(cell.attack.model);
    row.runs = cell.runs;

    const auto t0 = std::chrono::steady_clock::now();
    DefenseResult defended = cell.defense.apply(g);
    const auto t1 = std::chrono::steady_clock::now();
    const double wall_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.edges_removed = static_cast<std::size_t>(defended.plan.edges_removed);
    row.metrics = defend_metrics(g, defended.arg, wall_ms);
    row.s_effective = cell.attack.params.mu > 0.0
                          ? effective_strength(row.metrics.lambda_after,
                                               cell.attack.params.beta,
                                               cell.attack.params.mu)
                          : std::numeric_limits<double>::quiet_NaN();

    EnsembleCurves curves =
        ensemble(defended.arg, cell.attack.model, cell.attack.params, cell.runs,
                 cell.sim_seed, std::nullopt, cell.max_steps);
    row.mean_footprint = curves.final_mean_footprint;
    row.died_out_fraction = curves.died_out_fraction;
    try {
        DieOutReport report = die_out_check(curves);
        if (!report.all_zero) {
            row.slope = report.slope;
            row.r2 = report.r2;
            row.slope_defined = true;
        }
    } catch (const NumericalError&) {
        // Curve too short for a slope; leave it undefined.
    }
    return row;
}

std::string SweepRow::csv_header() {
    return "cell_key,cell_hash,defense,budget_nodes,budget_edge_fraction,"
           "edges_removed,defense_seed,attack,model,lambda_before,lambda_after,"
           "eigendrop_pct,sigma_before,sigma_after,s_effective,mean_footprint,"
           "died_out_fraction,slope,r2,runs,defend_wall_ms,error";
}

std::string SweepRow::to_csv() const {
    std::ostringstream ss;
    ss.precision(10);
    ss << cell_key << ',' << cell_hash << ',' << defense << ',' << budget_nodes
       << ',' << budget_edge_fraction << ',' << edges_removed << ',' << defense_seed
       << ',' << attack << ',' << model << ',' << metrics.lambda_before << ','
       << metrics.lambda_after << ',' << metrics.eigendrop_pct << ','
       << metrics.sigma_before << ',' << metrics.sigma_after << ',' << s_effective
       << ',' << mean_footprint << ',' << died_out_fraction << ',';
    if (slope_defined)
        ss << slope << ',' << r2;
    else
        ss << "nan,nan";
    ss << ',' << runs << ',' << metrics.wall_ms << ',' << error;
    return ss.str();
}

namespace {

json row_to_json(const SweepRow& row) {
    json j;
    j["cell_key"] = row.cell_key;
    j["cell_hash"] = row.cell_hash;
    j["defense"] = row.defense;
    j["budget_nodes"] = row.budget_nodes;
    j["budget_edge_fraction"] = row.budget_edge_fraction;
    j["edges_removed"] = row.edges_removed;
    j["defense_seed"] = row.defense_seed;
    j["attack"] = row.attack;
    j["model"] = row.model;
    j["lambda_before"] = row.metrics.lambda_before;
    j["lambda_after"] = row.metrics.lambda_after;
    j["eigendrop_pct"] = row.metrics.eigendrop_pct;
    j["sigma_before"] = row.metrics.sigma_before;
    j["sigma_after"] = row.metrics.sigma_after;
    j["wall_ms"] = row.metrics.wall_ms;
    j["s_effective"] = row.s_effective;
    j["mean_footprint"] = row.mean_footprint;
    j["died_out_fraction"] = row.died_out_fraction;
    j["slope"] = row.slope;
    j["r2"] = row.r2;
    j["slope_defined"] = row.slope_defined;
    j["runs"] = row.runs;
    j["error"] = row.error;
    return j;
}

SweepRow row_from_json(const json& j) {
    SweepRow row;
    row.cell_key = j.at("cell_key").get<std::string>();
    row.cell_hash = j.at("cell_hash").get<std::uint64_t>();
    row.defense = j.at("defense").get<std::string>();
    row.budget_nodes = j.at("budget_nodes").get<int>();
    row.budget_edge_fraction = j.at("budget_edge_fraction").get<double>();
    row.edges_removed = j.at("edges_removed").get<std::size_t>();
    row.defense_seed = j.at("defense_seed").get<std::uint64_t>();
    row.attack = j.at("attack").get<std::string>();
    row.model = j.at("model").get<std::string>();
    row.metrics.lambda_before = j.at("lambda_before").get<double>();
    row.metrics.lambda_after = j.at("lambda_after").get<double>();
    row.metrics.eigendrop_pct = j.at("eigendrop_pct").get<double>();
    row.metrics.sigma_before = j.at("sigma_before").get<double>();
    row.metrics.sigma_after = j.at("sigma_after").get<double>();
    row.metrics.wall_ms = j.at("wall_ms").get<double>();
    row.s_effective = j.at("s_effective").is_number()
                          ? j.at("s_effective").get<double>()
                          : std::numeric_limits<double>::quiet_NaN();
    row.mean_footprint = j.at("mean_footprint").get<double>();
    row.died_out_fraction = j.at("died_out_fraction").get<double>();
    row.slope = j.at("slope").get<double>();
    row.r2 = j.at("r2").get<double>();
    row.slope_defined = j.at("slope_defined").get<bool>();
    row.runs = j.at("runs").get<int>();
    row.error = j.at("error").get<std::string>();
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, const Graph& g,
                                const std::filesystem::path& out_dir, int jobs) {
    const auto cells_dir = out_dir / "cells";
    std::filesystem::create_directories(cells_dir);

    std::vector<SweepRow> rows(config.cells.size());
    std::atomic<std::size_t> next{0};
    std::mutex io_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= config.cells.size()) return;
            const SweepCell& cell = config.cells[idx];
            const std::uint64_t hash = cell_hash(g, cell);
            const auto cell_path = cells_dir / (std::to_string(hash) + ".json");

            if (std::filesystem::exists(cell_path)) {
                try {
                    auto j = json::parse(read_file(cell_path));
                    rows[idx] = row_from_json(j);
                    continue;
                } catch (const std::exception&) {
                    // Corrupt cache entry: recompute it below.
                }
            }
            SweepRow row;
            try {
                row = run_cell(g, cell);
            } catch (const std::exception& e) {
                row.cell_key = cell.key();
                row.cell_hash = hash;
                row.defense = cell.defense.label();
                row.attack = cell.attack.label();
                row.model = to_string(cell.attack.model);
                row.runs = cell.runs;
                row.error = e.what();
            }
            {
                std::lock_guard<std::mutex> lock(io_mutex);
                write_file(cell_path, row_to_json(row).dump(2));
            }
            rows[idx] = std::move(row);
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int k = std::min<std::size_t>(jobs, config.cells.size());
        for (int t = 0; t < k; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::sort(rows.begin(), rows.end(),
              [](const SweepRow& a, const SweepRow& b) { return a.cell_key < b.cell_key; });
    return rows;
}

std::string trajectory_csv(const Trajectory& traj, int n_nodes,
                           const std::string& config_json) {
    std::ostringstream ss;
    ss << repro_header(config_json);
    ss << "step,time,S,I,ID,R,footprint\n";
    ss.precision(10);
    for (std::size_t t = 0; t < traj.s.size(); ++t) {
        ss << t << ',' << static_cast<double>(t) * traj.params.dt << ',' << traj.s[t]
           << ',' << traj.i[t] << ',' << traj.i_d[t] << ',' << traj.r[t] << ','
           << traj.footprint(static_cast<int>(t), n_nodes) << '\n';
    }
    return ss.str();
}

std::string ensemble_csv(const EnsembleCurves& curves, const std::string& config_json) {
    std::ostringstream ss;
    ss << repro_header(config_json);
    ss << "step,time,mean_infected,median_infected,q05_infected,q95_infected,"
          "mean_footprint,median_footprint,q05_footprint,q95_footprint\n";
    ss.precision(10);
    for (std::size_t t = 0; t < curves.mean_infected.size(); ++t) {
        ss << t << ',' << static_cast<double>(t) * curves.dt << ','
           << curves.mean_infected[t] << ',' << curves.median_infected[t] << ','
           << curves.q05_infected[t] << ',' << curves.q95_infected[t] << ','
           << curves.mean_footprint[t] << ',' << curves.median_footprint[t] << ','
           << curves.q05_footprint[t] << ',' << curves.q95_footprint[t] << '\n';
    }
    return ss.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& config_json) {
    std::ostringstream ss;
    ss << repro_header(config_json);
    ss << SweepRow::csv_header() << '\n';
    for (const auto& row : rows) ss << row.to_csv() << '\n';
    return ss.str();
}

}  // namespace spmkit
