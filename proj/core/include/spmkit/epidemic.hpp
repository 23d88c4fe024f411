#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spmkit/graph.hpp"

namespace spmkit {

enum class Model { Si, Sis, Sir, Siidr };

std::string to_string(Model m);
Model model_from_string(const std::string& name);

/// Per-step transition probabilities of one attack variant. `dt` converts a
/// step index to model time; the probabilities are already per-dt, so no
/// rescaling happens anywhere.
struct SiidrParams {
    double beta = 0.0;    // S -> I per infectious contact
    double mu = 0.0;      // I -> R (I -> S for SIS)
    double gamma1 = 0.0;  // I -> I_D
    double gamma2 = 0.0;  // I_D -> I
    double dt = 1.0;

    /// Rates in [0,1], mu + gamma1 <= 1, and rates unused by `model` zero.
    void validate(Model model) const;
};

enum class NodeState : std::uint8_t { S = 0, I = 1, Id = 2, R = 3 };

/// Compartment counts of one stochastic run. footprint(t) is the fraction of
/// nodes ever infected (equals (I + I_D + R)/N for every model except SIS,
/// where recovered hosts rejoin S).
struct Trajectory {
    std::vector<int> s, i, i_d, r;       // counts per step, index 0 = initial
    std::vector<int> ever_infected;      // distinct hosts infected so far
    std::vector<int> infection_step;     // per node, -1 if never infected
    Model model = Model::Siidr;
    SiidrParams params;
    std::uint64_t seed = 0;
    int patient_zero = -1;
    bool absorbed = false;  // I + I_D hit zero before the step limit

    int steps() const { return static_cast<int>(s.size()) - 1; }
    double footprint(int t, int n) const {
        return static_cast<double>(ever_infected[t]) / n;
    }
};

/// Optional per-step record of which hosts were actively infectious; feeds
/// the synthetic trace emitter.
struct ActivityLog {
    std::vector<std::pair<int, int>> events;  // (step, node in I)
};

/// Discrete-time synchronous simulation. Per step, from start-of-step state:
/// (1) each edge from an active-infectious node to a susceptible one
/// transmits with probability beta, independently; (2) each infectious node
/// draws one uniform: recovers below mu, goes dormant below mu+gamma1;
/// (3) each dormant node reactivates with probability gamma2. Dormant nodes
/// do not transmit. Ends on absorption (I + I_D = 0) or after max_steps.
/// Bit-deterministic for a fixed seed.
Trajectory simulate(const Graph& g, Model model, const SiidrParams& params,
                    std::optional<int> patient_zero, int max_steps,
                    std::uint64_t seed, ActivityLog* log = nullptr);

/// Ensemble aggregates. Runs are padded with their absorbing values so every
/// series has the same length.
struct EnsembleCurves {
    std::vector<double> mean_infected;    // I + I_D
    std::vector<double> median_infected;
    std::vector<double> q05_infected;
    std::vector<double> q95_infected;
    std::vector<double> mean_footprint;
    std::vector<double> median_footprint;
    std::vector<double> q05_footprint;
    std::vector<double> q95_footprint;
    double died_out_fraction = 0.0;  // absorbed before max_steps
    double final_mean_footprint = 0.0;
    int runs = 0;
    int n_nodes = 0;
    double dt = 1.0;
};

/// `runs` independent simulations seeded seed0..seed0+runs-1, each drawing
/// its own patient zero when none is pinned. Aggregation is order-independent
/// so parallel execution (jobs > 1) reproduces the serial result exactly.
EnsembleCurves ensemble(const Graph& g, Model model, const SiidrParams& params,
                        int runs, std::uint64_t seed0,
                        std::optional<int> patient_zero, int max_steps,
                        int jobs = 1);

/// Log-linear decay diagnostics of an ensemble's mean infected curve.
struct DieOutReport {
    double slope = 0.0;  // least-squares slope of ln(mean I+I_D), post-peak
    double r2 = 0.0;
    double died_out_fraction = 0.0;
    bool all_zero = false;  // curve trivially dead, slope undefined
};

/// Requires >= 10 steps with positive mean infected unless the curve is
/// entirely zero (flagged instead).
DieOutReport die_out_check(const EnsembleCurves& curves);

}  // namespace spmkit
