#include <algorithm>
#include <iostream>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spmkit/csv.hpp"
#include "spmkit/errors.hpp"
#include "spmkit/model_fit.hpp"

#include "commands.hpp"

namespace spmkit::cli {

namespace {

struct FitOptions {
    std::string trace;
    std::string models = "si,sis,sir,siidr";
    double bin_width = 1.0;
    int min_infections = 1;
    bool smc = false;
    int population = 1000;
    int generations = 6;
    std::uint64_t seed = 1;
    std::string out = "fit_out";
};

void run(const FitOptions& opt) {
    auto events = read_trace_csv(opt.trace);
    auto recon = reconstruct(events, opt.bin_width, opt.min_infections);

    std::vector<Model> models;
    {
        std::istringstream ss(opt.models);
        std::string name;
        while (std::getline(ss, name, ',')) models.push_back(model_from_string(name));
    }
    if (models.empty()) throw ConfigError("fit: no models requested");

    const std::string variant = std::filesystem::path(opt.trace).stem().string();
    nlohmann::json config = {{"cmd", "fit"},
                             {"trace", opt.trace},
                             {"bin_width", opt.bin_width},
                             {"models", opt.models},
                             {"seed", opt.seed},
                             {"population", opt.population},
                             {"generations", opt.generations}};

    std::filesystem::create_directories(opt.out);
    const std::filesystem::path dir(opt.out);

    std::vector<FitResult> fits;
    for (Model m : models) fits.push_back(fit_model(recon.curve, m));

    // Table layout: variant label, then one AIC column per model.
    std::ostringstream aic_csv;
    aic_csv << repro_header(config.dump()) << "variant";
    for (Model m : {Model::Si, Model::Sis, Model::Sir, Model::Siidr}) {
        aic_csv << ',' << to_string(m);
    }
    aic_csv << "\n" << variant;
    aic_csv.precision(10);
    for (Model m : {Model::Si, Model::Sis, Model::Sir, Model::Siidr}) {
        auto it = std::find_if(fits.begin(), fits.end(),
                               [m](const FitResult& f) { return f.model == m; });
        aic_csv << ',';
        if (it != fits.end()) aic_csv << it->aic;
    }
    aic_csv << '\n';
    write_file(dir / "aic.csv", aic_csv.str());

    std::ostringstream params_csv;
    params_csv << repro_header(config.dump())
               << "model,beta,mu,gamma1,gamma2,rss,aic,n_points,converged\n";
    params_csv.precision(10);
    for (const auto& f : fits) {
        params_csv << to_string(f.model) << ',' << f.params.beta << ',' << f.params.mu
                   << ',' << f.params.gamma1 << ',' << f.params.gamma2 << ',' << f.rss
                   << ',' << f.aic << ',' << f.n_points << ',' << (f.converged ? 1 : 0)
                   << '\n';
    }
    write_file(dir / "fit_params.csv", params_csv.str());

    const FitResult* winner = &fits.front();
    for (const auto& f : fits)
        if (f.aic < winner->aic) winner = &f;
    std::cout << "reconstructed " << recon.infection_times.size() << " infections over "
              << recon.curve.n_bins() << " bins (population " << recon.curve.n_hosts
              << ")\nbest model by AIC: " << to_string(winner->model) << " (aic "
              << winner->aic << ")\n";

    if (opt.smc) {
        Posterior post = abc_smc(recon.curve, winner->model,
                                 PriorBox::uniform01(winner->model), opt.generations,
                                 opt.population, opt.seed);
        const char* names[] = {"beta", "mu", "gamma1", "gamma2"};
        std::ostringstream posterior_csv;
        posterior_csv << repro_header(config.dump());
        const int dim = model_parameter_count(winner->model);
        for (int d = 0; d < dim; ++d) posterior_csv << names[d] << ',';
        posterior_csv << "weight\n";
        posterior_csv.precision(10);
        for (std::size_t p = 0; p < post.particles.size(); ++p) {
            for (int d = 0; d < dim; ++d) posterior_csv << post.particles[p][d] << ',';
            posterior_csv << post.weights[p] << '\n';
        }
        write_file(dir / "posterior.csv", posterior_csv.str());

        nlohmann::json summary;
        summary["model"] = to_string(winner->model);
        summary["posterior_mean"] = post.posterior_mean();
        summary["posterior_std"] = post.posterior_std();
        summary["tolerances"] = post.tolerances;
        summary["acceptance_rates"] = post.acceptance_rates;
        summary["aborted"] = post.aborted;
        if (!post.note.empty()) summary["note"] = post.note;
        write_file(dir / "posterior_summary.json", summary.dump(2) + "\n");

        auto mean = post.posterior_mean();
        std::cout << "posterior mean:";
        for (int d = 0; d < dim; ++d) std::cout << ' ' << names[d] << '=' << mean[d];
        std::cout << (post.aborted ? " (aborted early)" : "") << '\n';
    }
    std::cout << "wrote " << (dir / "aic.csv").string() << ", fit_params.csv"
              << (opt.smc ? ", posterior.csv, posterior_summary.json" : "") << '\n';
}

}  // namespace

void register_fit(CLI::App& app) {
    auto opt = std::make_shared<FitOptions>();
    CLI::App* cmd = app.add_subcommand(
        "fit", "Reconstruct an epidemic curve from a trace, rank models by AIC, "
               "optionally run ABC-SMC on the winner");
    cmd->add_option("--trace", opt->trace, "Trace CSV (timestamp,src,dst,malicious)")
        ->required();
    cmd->add_option("--models", opt->models, "Comma list from si,sis,sir,siidr");
    cmd->add_option("--bin-width", opt->bin_width, "Curve bin width (time units)");
    cmd->add_option("--min-infections", opt->min_infections,
                    "Reject traces with fewer infected hosts");
    cmd->add_flag("--smc", opt->smc, "Run ABC-SMC on the AIC winner");
    cmd->add_option("--population", opt->population, "SMC particles per generation");
    cmd->add_option("--generations", opt->generations, "SMC generations");
    cmd->add_option("--seed", opt->seed, "SMC seed");
    cmd->add_option("--out", opt->out, "Output directory");
    cmd->callback([opt] { run(*opt); });
}

}  // namespace spmkit::cli
