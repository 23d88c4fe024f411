#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "spmkit/epidemic.hpp"
#include "spmkit/trace.hpp"

namespace spmkit {

/// Cumulative count of distinct infected hosts per time bin, reconstructed
/// from a trace. Bin 0 starts at the first malicious attempt; the curve runs
/// to the last communication event (malicious or not).
struct EpidemicCurve {
    double bin_width = 1.0;
    std::vector<int> infected;  // cumulative, non-decreasing, >= 1
    int n_hosts = 0;
    double t0 = 0.0;
    double t_end = 0.0;

    int n_bins() const { return static_cast<int>(infected.size()); }
};

struct ReconstructResult {
    EpidemicCurve curve;
    DeltaTDiagnostics diagnostics;
    /// Host id -> first-malicious-event time (the inferred infection time).
    std::map<std::int64_t, double> infection_times;
};

/// Infection time of a host = timestamp of its first malicious outbound
/// event. Requires at least one malicious event and, when min_infections > 0,
/// at least that many infected hosts (traces below the cutoff carry too
/// little signal to fit).
ReconstructResult reconstruct(std::span<const TraceEvent> events, double bin_width,
                              int min_infections = 1);

/// Free parameters per model: SI {beta}; SIS/SIR {beta, mu};
/// SIIDR {beta, mu, gamma1, gamma2}.
int model_parameter_count(Model m);

struct FitResult {
    Model model = Model::Si;
    SiidrParams params;
    double rss = 0.0;
    double aic = 0.0;
    int n_points = 0;
    bool converged = true;
    bool perfect = false;  // rss == 0; aic reported as -infinity
};

struct FitConfig {
    int grid_points_per_dim = 0;  // 0 = per-model default
    int nelder_mead_iters = 400;
    double ode_steps_per_bin = 4.0;
};

/// Least-squares fit of the homogeneous-mixing ODE's cumulative-infected
/// trajectory to the curve (Nelder-Mead from the best coarse-grid start),
/// scored with the Gaussian-residual AIC n*ln(RSS/n) + 2k. Requires
/// n_bins >= k + 2.
FitResult fit_model(const EpidemicCurve& curve, Model model, FitConfig config = {});

/// Per-parameter uniform prior bounds in the model's parameter order.
struct PriorBox {
    std::vector<std::pair<double, double>> bounds;

    static PriorBox uniform01(Model m);
};

struct Posterior {
    Model model = Model::Siidr;
    std::vector<std::vector<double>> particles;  // population x dim
    std::vector<double> weights;                 // normalized
    std::vector<double> tolerances;              // strictly decreasing
    std::vector<double> acceptance_rates;        // per generation
    bool aborted = false;
    std::string note;

    std::vector<double> posterior_mean() const;
    std::vector<double> posterior_std() const;
};

struct SmcConfig {
    int max_steps = 0;            // 0 = curve length
    double quantile = 0.3;        // next tolerance = this quantile of distances
    double min_acceptance = 1e-3; // abort threshold
    int max_attempts_factor = 2000;
};

/// ABC sequential Monte Carlo against the reconstructed curve. Particles are
/// scored by simulating the stochastic model on a complete-contact population
/// of curve.n_hosts (homogeneous mixing) and measuring population-normalized
/// RMSE between cumulative-infected curves. Generation 0 accepts everything;
/// later generations resample by weight, perturb with a Gaussian kernel
/// (sd = sqrt(2) * weighted std, truncated to the prior by rejection) and
/// re-accept under the shrinking tolerance.
Posterior abc_smc(const EpidemicCurve& curve, Model model, const PriorBox& priors,
                  int generations, int population, std::uint64_t seed,
                  SmcConfig config = {});

}  // namespace spmkit
