#include "spmkit/epidemic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "spmkit/errors.hpp"
#include "spmkit/rng.hpp"

namespace spmkit {

std::string to_string(Model m) {
    switch (m) {
        case Model::Si: return "si";
        case Model::Sis: return "sis";
        case Model::Sir: return "sir";
        case Model::Siidr: return "siidr";
    }
    return "?";
}

Model model_from_string(const std::string& name) {
    for (Model m : {Model::Si, Model::Sis, Model::Sir, Model::Siidr})
        if (to_string(m) == name) return m;
    throw ConfigError("unknown epidemic model: " + name);
}

void SiidrParams::validate(Model model) const {
    auto in01 = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in01(beta) || !in01(mu) || !in01(gamma1) || !in01(gamma2))
        throw ConfigError("siidr params: rates must lie in [0,1]");
    if (mu + gamma1 > 1.0 + 1e-12)
        throw ConfigError("siidr params: mu + gamma1 must not exceed 1");
    if (dt <= 0.0) throw ConfigError("siidr params: dt must be > 0");
    switch (model) {
        case Model::Si:
            if (mu != 0.0 || gamma1 != 0.0 || gamma2 != 0.0)
                throw ConfigError("si model: mu, gamma1, gamma2 must be 0");
            break;
        case Model::Sis:
        case Model::Sir:
            if (gamma1 != 0.0 || gamma2 != 0.0)
                throw ConfigError(to_string(model) + " model: gamma1, gamma2 must be 0");
            break;
        case Model::Siidr:
            break;
    }
}

Trajectory simulate(const Graph& g, Model model, const SiidrParams& params,
                    std::optional<int> patient_zero, int max_steps,
                    std::uint64_t seed, ActivityLog* log) {
    params.validate(model);
    const int n = g.num_nodes();
    if (n == 0) throw ConfigError("simulate: empty graph");
    if (max_steps < 0) throw ConfigError("simulate: negative max_steps");
    if (patient_zero && (*patient_zero < 0 || *patient_zero >= n))
        throw ConfigError("simulate: patient zero out of range");

    Rng rng(seed);
    const int p0 = patient_zero ? *patient_zero
                                : static_cast<int>(rng.uniform_int(n));

    Trajectory traj;
    traj.model = model;
    traj.params = params;
    traj.seed = seed;
    traj.patient_zero = p0;
    traj.infection_step.assign(n, -1);
    traj.infection_step[p0] = 0;

    std::vector<NodeState> state(n, NodeState::S);
    state[p0] = NodeState::I;
    std::vector<int> active{p0};   // nodes in I, sorted ascending
    std::vector<int> dormant;      // nodes in I_D, sorted ascending
    int count_s = n - 1, count_i = 1, count_d = 0, count_r = 0, ever = 1;

    auto record = [&] {
        traj.s.push_back(count_s);
        traj.i.push_back(count_i);
        traj.i_d.push_back(count_d);
        traj.r.push_back(count_r);
        traj.ever_infected.push_back(ever);
    };
    record();

    std::vector<char> marked(n, 0);
    std::vector<int> newly_infected, to_exit, to_dormant, to_wake, scratch;
    for (int step = 1; step <= max_steps && (count_i + count_d) > 0; ++step) {
        if (log)
            for (int v : active) log->events.emplace_back(step - 1, v);

        newly_infected.clear();
        to_exit.clear();
        to_dormant.clear();
        to_wake.clear();

        // (1) Transmission: one independent draw per (I, S) edge, evaluated
        // against the start-of-step states.
        for (int v : active) {
            for (int u : g.neighbors(v)) {
                if (state[u] != NodeState::S) continue;
                if (rng.uniform01() < params.beta && !marked[u]) {
                    marked[u] = 1;
                    newly_infected.push_back(u);
                }
            }
        }
        // (2) One exit draw per infectious node: [0,mu) leaves I (to R, or
        // back to S for SIS), [mu,mu+gamma1) goes dormant.
        for (int v : active) {
            const double u = rng.uniform01();
            if (u < params.mu) {
                to_exit.push_back(v);
            } else if (u < params.mu + params.gamma1) {
                to_dormant.push_back(v);
            }
        }
        // (3) Dormant reactivation.
        for (int v : dormant) {
            if (rng.uniform01() < params.gamma2) to_wake.push_back(v);
        }

        // Apply all transitions simultaneously.
        const NodeState exit_state = model == Model::Sis ? NodeState::S : NodeState::R;
        for (int v : to_exit) {
            state[v] = exit_state;
            --count_i;
            if (model == Model::Sis) ++count_s; else ++count_r;
        }
        for (int v : to_dormant) {
            state[v] = NodeState::Id;
            --count_i;
            ++count_d;
        }
        for (int v : to_wake) {
            state[v] = NodeState::I;
            --count_d;
            ++count_i;
        }
        std::sort(newly_infected.begin(), newly_infected.end());
        for (int v : newly_infected) {
            marked[v] = 0;
            state[v] = NodeState::I;
            --count_s;
            ++count_i;
            if (traj.infection_step[v] == -1) {
                traj.infection_step[v] = step;
                ++ever;
            }
        }

        // Maintain the sorted I and I_D lists.
        scratch.clear();
        std::set_difference(active.begin(), active.end(), to_exit.begin(),
                            to_exit.end(), std::back_inserter(scratch));
        active.clear();
        std::set_difference(scratch.begin(), scratch.end(), to_dormant.begin(),
                            to_dormant.end(), std::back_inserter(active));
        scratch.clear();
        std::set_union(active.begin(), active.end(), to_wake.begin(), to_wake.end(),
                       std::back_inserter(scratch));
        active.clear();
        std::set_union(scratch.begin(), scratch.end(), newly_infected.begin(),
                       newly_infected.end(), std::back_inserter(active));

        scratch.clear();
        std::set_difference(dormant.begin(), dormant.end(), to_wake.begin(),
                            to_wake.end(), std::back_inserter(scratch));
        dormant.clear();
        std::set_union(scratch.begin(), scratch.end(), to_dormant.begin(),
                       to_dormant.end(), std::back_inserter(dormant));

        record();
    }
    traj.absorbed = (count_i + count_d) == 0;
    return traj;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - w) + sorted[hi] * w;
}

}  // namespace

EnsembleCurves ensemble(const Graph& g, Model model, const SiidrParams& params,
                        int runs, std::uint64_t seed0,
                        std::optional<int> patient_zero, int max_steps, int jobs) {
    if (runs < 1) throw ConfigError("ensemble: runs must be >= 1");
    params.validate(model);

    std::vector<Trajectory> trajs(runs);
    if (jobs <= 1) {
        for (int r = 0; r < runs; ++r)
            trajs[r] = simulate(g, model, params, patient_zero, max_steps, seed0 + r);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= runs) return;
                trajs[r] = simulate(g, model, params, patient_zero, max_steps, seed0 + r);
            }
        };
        std::vector<std::thread> pool;
        const int k = std::min(jobs, runs);
        pool.reserve(k);
        for (int t = 0; t < k; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::size_t len = 0;
    for (const auto& t : trajs) len = std::max(len, t.s.size());

    EnsembleCurves out;
    out.runs = runs;
    out.n_nodes = g.num_nodes();
    out.dt = params.dt;
    out.mean_infected.assign(len, 0.0);
    out.median_infected.assign(len, 0.0);
    out.q05_infected.assign(len, 0.0);
    out.q95_infected.assign(len, 0.0);
    out.mean_footprint.assign(len, 0.0);
    out.median_footprint.assign(len, 0.0);
    out.q05_footprint.assign(len, 0.0);
    out.q95_footprint.assign(len, 0.0);

    std::vector<double> inf_col(runs), fp_col(runs);
    const double n = static_cast<double>(g.num_nodes());
    for (std::size_t t = 0; t < len; ++t) {
        for (int r = 0; r < runs; ++r) {
            const auto& tr = trajs[r];
            // Absorbed runs hold their terminal values.
            const std::size_t idx = std::min(t, tr.s.size() - 1);
            inf_col[r] = static_cast<double>(tr.i[idx] + tr.i_d[idx]);
            fp_col[r] = static_cast<double>(tr.ever_infected[idx]) / n;
        }
        double inf_sum = 0.0, fp_sum = 0.0;
        for (int r = 0; r < runs; ++r) {
            inf_sum += inf_col[r];
            fp_sum += fp_col[r];
        }
        out.mean_infected[t] = inf_sum / runs;
        out.mean_footprint[t] = fp_sum / runs;
        std::sort(inf_col.begin(), inf_col.end());
        out.median_infected[t] = quantile_sorted(inf_col, 0.5);
        out.q05_infected[t] = quantile_sorted(inf_col, 0.05);
        out.q95_infected[t] = quantile_sorted(inf_col, 0.95);
        std::sort(fp_col.begin(), fp_col.end());
        out.median_footprint[t] = quantile_sorted(fp_col, 0.5);
        out.q05_footprint[t] = quantile_sorted(fp_col, 0.05);
        out.q95_footprint[t] = quantile_sorted(fp_col, 0.95);
    }
    int died = 0;
    for (const auto& tr : trajs)
        if (tr.absorbed) ++died;
    out.died_out_fraction = static_cast<double>(died) / runs;
    out.final_mean_footprint = out.mean_footprint.empty() ? 0.0 : out.mean_footprint.back();
    return out;
}

DieOutReport die_out_check(const EnsembleCurves& curves) {
    DieOutReport report;
    report.died_out_fraction = curves.died_out_fraction;

    const auto& y = curves.mean_infected;
    std::size_t peak = 0;
    double peak_val = 0.0;
    std::size_t positive = 0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        if (y[t] > 0.0) ++positive;
        if (y[t] > peak_val) {
            peak_val = y[t];
            peak = t;
        }
    }
    if (positive == 0) {
        report.all_zero = true;
        return report;
    }
    if (positive < 10)
        throw NumericalError("die_out_check: need >= 10 steps with positive mean infected");

    // Least squares on ln(y) over the post-peak positive window.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    std::size_t count = 0;
    for (std::size_t t = peak; t < y.size(); ++t) {
        if (y[t] <= 0.0) break;
        const double xv = static_cast<double>(t);
        const double yv = std::log(y[t]);
        sx += xv;
        sy += yv;
        sxx += xv * xv;
        sxy += xv * yv;
        syy += yv * yv;
        ++count;
    }
    if (count < 2) {
        report.slope = 0.0;
        report.r2 = 0.0;
        return report;
    }
    const double k = static_cast<double>(count);
    const double denom = k * sxx - sx * sx;
    report.slope = denom != 0.0 ? (k * sxy - sx * sy) / denom : 0.0;
    const double ss_tot = syy - sy * sy / k;
    if (ss_tot <= 0.0) {
        report.r2 = 1.0;  // perfectly flat in log space
    } else {
        const double ss_res = ss_tot - report.slope * (sxy - sx * sy / k);
        report.r2 = 1.0 - ss_res / ss_tot;
    }
    return report;
}

}  // namespace spmkit
