#include <algorithm>
#include <cmath>
#include <limits>

#include "spmkit/errors.hpp"
#include "spmkit/model_fit.hpp"
#include "spmkit/rng.hpp"

namespace spmkit {

PriorBox PriorBox::uniform01(Model m) {
    PriorBox box;
    box.bounds.assign(model_parameter_count(m), {0.0, 1.0});
    return box;
}

std::vector<double> Posterior::posterior_mean() const {
    std::vector<double> mean;
    if (particles.empty()) return mean;
    mean.assign(particles.front().size(), 0.0);
    for (std::size_t p = 0; p < particles.size(); ++p)
        for (std::size_t d = 0; d < mean.size(); ++d)
            mean[d] += weights[p] * particles[p][d];
    return mean;
}

std::vector<double> Posterior::posterior_std() const {
    std::vector<double> mean = posterior_mean();
    std::vector<double> sd(mean.size(), 0.0);
    for (std::size_t p = 0; p < particles.size(); ++p)
        for (std::size_t d = 0; d < mean.size(); ++d) {
            const double delta = particles[p][d] - mean[d];
            sd[d] += weights[p] * delta * delta;
        }
    for (double& v : sd) v = std::sqrt(v);
    return sd;
}

namespace {

SiidrParams point_params(Model model, std::span<const double> x) {
    SiidrParams p;
    p.beta = x[0];
    if (model == Model::Sis || model == Model::Sir) p.mu = x[1];
    if (model == Model::Siidr) {
        p.mu = x[1];
        p.gamma1 = x[2];
        p.gamma2 = x[3];
    }
    return p;
}

bool in_support(const PriorBox& priors, Model model, std::span<const double> x) {
    for (std::size_t d = 0; d < x.size(); ++d)
        if (x[d] < priors.bounds[d].first || x[d] > priors.bounds[d].second)
            return false;
    if (model == Model::Siidr && x[1] + x[2] > 1.0) return false;
    return true;
}

// Population-normalized RMSE between the observed cumulative curve and one
// stochastic run on the complete-contact population.
double curve_distance(const EpidemicCurve& obs, const Graph& contact, Model model,
                      const SiidrParams& params, int max_steps, std::uint64_t seed) {
    Trajectory traj = simulate(contact, model, params, 0, max_steps, seed);
    double sq = 0.0;
    const int n_bins = obs.n_bins();
    for (int b = 0; b < n_bins; ++b) {
        const std::size_t idx =
            std::min<std::size_t>(b, traj.ever_infected.size() - 1);
        const double diff =
            static_cast<double>(traj.ever_infected[idx]) - obs.infected[b];
        sq += diff * diff;
    }
    return std::sqrt(sq / n_bins) / obs.n_hosts;
}

double quantile_of(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    const double pos = q * (static_cast<double>(values.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - w) + values[hi] * w;
}

}  // namespace

Posterior abc_smc(const EpidemicCurve& curve, Model model, const PriorBox& priors,
                  int generations, int population, std::uint64_t seed,
                  SmcConfig config) {
    const int dim = model_parameter_count(model);
    if (static_cast<int>(priors.bounds.size()) != dim)
        throw ConfigError("abc_smc: prior dimensionality does not match the model");
    for (auto [lo, hi] : priors.bounds)
        if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
            throw ConfigError("abc_smc: priors must be bounded intervals");
    if (population < 100) throw ConfigError("abc_smc: population must be >= 100");
    if (generations < 1) throw ConfigError("abc_smc: need at least one generation");

    // Homogeneous mixing: every host contacts every other host.
    const int n_hosts = curve.n_hosts;
    std::vector<std::pair<int, int>> complete_edges;
    complete_edges.reserve(static_cast<std::size_t>(n_hosts) * (n_hosts - 1) / 2);
    for (int i = 0; i < n_hosts; ++i)
        for (int j = i + 1; j < n_hosts; ++j) complete_edges.emplace_back(i, j);
    const Graph contact = Graph::from_edges(n_hosts, std::move(complete_edges));
    const int max_steps =
        config.max_steps > 0 ? config.max_steps : curve.n_bins() - 1;

    Rng rng(seed);
    std::uint64_t sim_seed = seed ^ 0xda3e39cb94b95bdbull;

    Posterior post;
    post.model = model;

    std::vector<std::vector<double>> particles(population, std::vector<double>(dim));
    std::vector<double> weights(population, 1.0 / population);
    std::vector<double> distances(population, 0.0);

    // Generation 0: sample the prior, accept everything, record distances.
    for (int p = 0; p < population; ++p) {
        auto& x = particles[p];
        do {
            for (int d = 0; d < dim; ++d) {
                auto [lo, hi] = priors.bounds[d];
                x[d] = lo + (hi - lo) * rng.uniform01();
            }
        } while (!in_support(priors, model, x));
        distances[p] =
            curve_distance(curve, contact, model, point_params(model, x),
                           max_steps, sim_seed++);
    }
    post.acceptance_rates.push_back(1.0);

    std::vector<std::vector<double>> next_particles(population,
                                                    std::vector<double>(dim));
    std::vector<double> next_weights(population);
    std::vector<double> next_distances(population);

    double epsilon = std::numeric_limits<double>::infinity();
    for (int gen = 1; gen < generations; ++gen) {
        double next_eps = quantile_of(distances, config.quantile);
        if (!(next_eps < epsilon)) next_eps = epsilon * 0.95;
        epsilon = next_eps;
        post.tolerances.push_back(epsilon);

        // Perturbation kernel: per-dimension Gaussian with sd = sqrt(2) *
        // weighted sample standard deviation of the previous generation.
        std::vector<double> mean(dim, 0.0), sd(dim, 0.0);
        for (int p = 0; p < population; ++p)
            for (int d = 0; d < dim; ++d) mean[d] += weights[p] * particles[p][d];
        for (int p = 0; p < population; ++p)
            for (int d = 0; d < dim; ++d) {
                const double delta = particles[p][d] - mean[d];
                sd[d] += weights[p] * delta * delta;
            }
        for (int d = 0; d < dim; ++d) sd[d] = std::sqrt(2.0 * sd[d]);

        std::vector<double> cum_weight(population);
        double acc = 0.0;
        for (int p = 0; p < population; ++p) {
            acc += weights[p];
            cum_weight[p] = acc;
        }

        const long long max_attempts =
            static_cast<long long>(population) * config.max_attempts_factor;
        long long attempts = 0;
        int accepted = 0;
        std::vector<double> candidate(dim);
        while (accepted < population && attempts < max_attempts) {
            ++attempts;
            // Resample an ancestor by weight.
            const double u = rng.uniform01() * acc;
            const int ancestor = static_cast<int>(
                std::lower_bound(cum_weight.begin(), cum_weight.end(), u) -
                cum_weight.begin());
            const auto& base = particles[std::min(ancestor, population - 1)];

            // Gaussian perturbation truncated to the prior by rejection.
            bool ok = false;
            for (int tries = 0; tries < 200 && !ok; ++tries) {
                for (int d = 0; d < dim; ++d)
                    candidate[d] = base[d] + sd[d] * rng.normal();
                ok = in_support(priors, model, candidate);
            }
            if (!ok) continue;

            const double dist =
                curve_distance(curve, contact, model,
                               point_params(model, candidate), max_steps, sim_seed++);
            if (dist > epsilon) continue;

            // Importance weight: uniform prior over the kernel mixture.
            double mixture = 0.0;
            for (int p = 0; p < population; ++p) {
                double log_k = 0.0;
                for (int d = 0; d < dim; ++d) {
                    if (sd[d] <= 0.0) continue;
                    const double z = (candidate[d] - particles[p][d]) / sd[d];
                    log_k += -0.5 * z * z - std::log(sd[d]);
                }
                mixture += weights[p] * std::exp(log_k);
            }
            next_particles[accepted] = candidate;
            next_weights[accepted] = mixture > 0.0 ? 1.0 / mixture : 0.0;
            next_distances[accepted] = dist;
            ++accepted;
        }

        const double rate =
            attempts > 0 ? static_cast<double>(accepted) / attempts : 0.0;
        post.acceptance_rates.push_back(rate);
        if (accepted < population) {
            post.aborted = true;
            post.note = "generation " + std::to_string(gen) +
                        " acceptance rate below threshold (" +
                        std::to_string(rate) + "); returning partial posterior";
            particles.resize(accepted);
            weights.resize(accepted);
            for (int p = 0; p < accepted; ++p) {
                particles[p] = next_particles[p];
                weights[p] = next_weights[p];
            }
            break;
        }
        particles = next_particles;
        weights = next_weights;
        distances = next_distances;
        double wsum = 0.0;
        for (double w : weights) wsum += w;
        if (wsum <= 0.0)
            throw NumericalError("abc_smc: degenerate importance weights");
        for (double& w : weights) w /= wsum;
        if (rate < config.min_acceptance) {
            post.aborted = true;
            post.note = "generation " + std::to_string(gen) +
                        " acceptance rate " + std::to_string(rate) +
                        " below min_acceptance";
            break;
        }
    }

    post.particles = std::move(particles);
    post.weights = std::move(weights);
    double wsum = 0.0;
    for (double w : post.weights) wsum += w;
    if (wsum > 0.0)
        for (double& w : post.weights) w /= wsum;
    return post;
}

}  // namespace spmkit
