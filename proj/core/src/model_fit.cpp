#include "spmkit/model_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "spmkit/errors.hpp"
#include "spmkit/ode.hpp"

namespace spmkit {

ReconstructResult reconstruct(std::span<const TraceEvent> events, double bin_width,
                              int min_infections) {
    if (bin_width <= 0.0) throw ConfigError("reconstruct: bin_width must be > 0");

    ReconstructResult out;
    double t_end = -std::numeric_limits<double>::infinity();
    std::set<std::int64_t> hosts;
    for (const auto& e : events) {
        hosts.insert(e.src);
        hosts.insert(e.dst);
        t_end = std::max(t_end, e.timestamp);
        if (e.malicious) {
            auto it = out.infection_times.find(e.src);
            if (it == out.infection_times.end() || e.timestamp < it->second)
                out.infection_times[e.src] = e.timestamp;
        }
    }
    if (out.infection_times.empty())
        throw ConfigError("reconstruct: trace has no malicious events");
    if (static_cast<int>(out.infection_times.size()) < min_infections)
        throw ConfigError("reconstruct: only " +
                          std::to_string(out.infection_times.size()) +
                          " infected hosts, below the minimum of " +
                          std::to_string(min_infections));

    double t0 = std::numeric_limits<double>::infinity();
    for (const auto& [host, t] : out.infection_times) t0 = std::min(t0, t);

    auto& curve = out.curve;
    curve.bin_width = bin_width;
    curve.n_hosts = static_cast<int>(hosts.size());
    curve.t0 = t0;
    curve.t_end = t_end;
    const int n_bins = static_cast<int>(std::floor((t_end - t0) / bin_width)) + 1;
    curve.infected.assign(n_bins, 0);
    for (const auto& [host, t] : out.infection_times) {
        int bin = static_cast<int>(std::floor((t - t0) / bin_width));
        bin = std::clamp(bin, 0, n_bins - 1);
        ++curve.infected[bin];
    }
    for (int b = 1; b < n_bins; ++b) curve.infected[b] += curve.infected[b - 1];

    out.diagnostics = delta_t_diagnostics(events);
    return out;
}

int model_parameter_count(Model m) {
    switch (m) {
        case Model::Si: return 1;
        case Model::Sis: return 2;
        case Model::Sir: return 2;
        case Model::Siidr: return 4;
    }
    return 0;
}

namespace {

SiidrParams params_from_point(Model model, std::span<const double> x) {
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

// RSS between the curve and the ODE's ever-infected trajectory sampled at
// bin times (one time unit per bin).
double curve_rss(const EpidemicCurve& curve, Model model, std::span<const double> x,
                 double ode_steps_per_bin) {
    for (double v : x)
        if (v < 0.0 || v > 1.0) return std::numeric_limits<double>::infinity();
    SiidrParams p = params_from_point(model, x);
    if (p.mu + p.gamma1 > 1.0) return std::numeric_limits<double>::infinity();

    const int n_bins = curve.n_bins();
    const double i0 = curve.infected.front();
    OdeSolution sol;
    try {
        sol = ode_solve(model, p, curve.n_hosts, i0,
                        static_cast<double>(n_bins - 1),
                        1.0 / ode_steps_per_bin);
    } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
    }
    const auto per_bin = static_cast<std::size_t>(ode_steps_per_bin);
    double rss = 0.0;
    for (int b = 0; b < n_bins; ++b) {
        const std::size_t idx = std::min(b * per_bin, sol.size() - 1);
        const double diff = sol.ever_infected(idx) - curve.infected[b];
        rss += diff * diff;
    }
    return rss;
}

}  // namespace

FitResult fit_model(const EpidemicCurve& curve, Model model, FitConfig config) {
    const int k = model_parameter_count(model);
    const int n = curve.n_bins();
    if (n < k + 2)
        throw ConfigError("fit_model: curve needs at least k+2 points");
    if (curve.n_hosts < 1) throw ConfigError("fit_model: empty population");

    const int grid = config.grid_points_per_dim > 0 ? config.grid_points_per_dim
                     : (k <= 2 ? 12 : 5);

    auto objective = [&](std::span<const double> x) {
        return curve_rss(curve, model, x, config.ode_steps_per_bin);
    };

    // Coarse grid search for a starting point.
    std::vector<double> best(k, 0.5);
    double best_rss = std::numeric_limits<double>::infinity();
    std::vector<int> idx(k, 0);
    for (;;) {
        std::vector<double> x(k);
        for (int d = 0; d < k; ++d)
            x[d] = (idx[d] + 1.0) / (grid + 1.0);
        const double rss = objective(x);
        if (rss < best_rss) {
            best_rss = rss;
            best = x;
        }
        int d = 0;
        while (d < k && ++idx[d] == grid) idx[d++] = 0;
        if (d == k) break;
    }

    // Nelder-Mead from the grid winner.
    const int dim = k;
    std::vector<std::vector<double>> simplex(dim + 1, best);
    std::vector<double> value(dim + 1);
    for (int v = 1; v <= dim; ++v) {
        simplex[v][v - 1] = std::clamp(simplex[v][v - 1] + 0.1, 0.0, 1.0);
    }
    for (int v = 0; v <= dim; ++v) value[v] = objective(simplex[v]);

    bool converged = false;
    for (int iter = 0; iter < config.nelder_mead_iters; ++iter) {
        std::vector<int> order(dim + 1);
        for (int v = 0; v <= dim; ++v) order[v] = v;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return value[a] < value[b]; });
        const int lo = order[0], hi = order[dim], second_hi = order[dim - 1];

        if (std::abs(value[hi] - value[lo]) <=
            1e-12 * std::max(1.0, std::abs(value[lo]))) {
            converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (int v = 0; v <= dim; ++v) {
            if (v == hi) continue;
            for (int d = 0; d < dim; ++d) centroid[d] += simplex[v][d];
        }
        for (int d = 0; d < dim; ++d) centroid[d] /= dim;

        auto blend = [&](double t) {
            std::vector<double> x(dim);
            for (int d = 0; d < dim; ++d)
                x[d] = centroid[d] + t * (simplex[hi][d] - centroid[d]);
            return x;
        };
        auto reflected = blend(-1.0);
        const double fr = objective(reflected);
        if (fr < value[lo]) {
            auto expanded = blend(-2.0);
            const double fe = objective(expanded);
            if (fe < fr) {
                simplex[hi] = expanded;
                value[hi] = fe;
            } else {
                simplex[hi] = reflected;
                value[hi] = fr;
            }
        } else if (fr < value[second_hi]) {
            simplex[hi] = reflected;
            value[hi] = fr;
        } else {
            auto contracted = blend(0.5);
            const double fc = objective(contracted);
            if (fc < value[hi]) {
                simplex[hi] = contracted;
                value[hi] = fc;
            } else {
                for (int v = 0; v <= dim; ++v) {
                    if (v == lo) continue;
                    for (int d = 0; d < dim; ++d)
                        simplex[v][d] = 0.5 * (simplex[v][d] + simplex[lo][d]);
                    value[v] = objective(simplex[v]);
                }
            }
        }
    }

    int lo = 0;
    for (int v = 1; v <= dim; ++v)
        if (value[v] < value[lo]) lo = v;

    FitResult result;
    result.model = model;
    result.params = params_from_point(model, simplex[lo]);
    result.rss = value[lo];
    result.n_points = n;
    result.converged = converged;
    if (result.rss <= 0.0) {
        result.perfect = true;
        result.aic = -std::numeric_limits<double>::infinity();
    } else {
        result.aic = n * std::log(result.rss / n) + 2.0 * k;
    }
    return result;
}

}  // namespace spmkit
