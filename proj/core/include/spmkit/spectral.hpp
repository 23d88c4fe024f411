#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spmkit/graph.hpp"

namespace spmkit {

/// Leading eigenpair of the adjacency matrix. On a disconnected graph,
/// lambda1 is the max over components and the (unit, nonnegative) eigenvector
/// is supported on the winning component, zero elsewhere.
struct EigenPair {
    double lambda1 = 0.0;
    std::vector<double> vector;
    std::uint64_t graph_hash = 0;
    int iterations = 0;
    /// Set when another component's leading eigenvalue ties lambda1 within
    /// relative 1e-8; the returned vector is still from the first winner.
    bool degenerate = false;
};

/// Power iteration per connected component (on A + I, which keeps bipartite
/// spectra from stalling), starting from the normalized degree vector.
/// Converged when successive Rayleigh quotients differ by < tol relatively.
/// Throws ConvergenceError (carrying the best estimate) after max_iter.
EigenPair leading_eigenpair(const Graph& g, double tol = 1e-10, int max_iter = 10000);

/// Top eigenvalues/vectors of the adjacency matrix by shifted, deflated power
/// iteration. Values are sorted by dominance of |lambda + 1|, so entries past
/// the first are only meaningful near degeneracy (which is what MET needs).
/// Lenient: returns best estimates instead of throwing on slow convergence.
struct SpectralTop {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;  // unit norm, one per value
    bool converged = true;
};
SpectralTop leading_eigenpairs(const Graph& g, int count, double tol = 1e-10,
                               int max_iter = 10000);

/// EigenDrop percentage 100 * (before - after) / before. before must be > 0.
double eigen_drop(double lambda_before, double lambda_after);

struct EdgeScore {
    int i;
    int j;
    double score;
};

/// Per-edge eigen-scores v(i)*v(j) in edge order (i < j, lexicographic).
/// The pair must have been computed on this exact graph (hash-checked).
std::vector<EdgeScore> eigen_scores(const Graph& g, const EigenPair& pair);

/// Effective attack strength s = lambda1 * beta / mu; s <= 1 means die-out.
double effective_strength(double lambda1, double beta, double mu);

/// `src,dst,score` CSV of per-edge eigen-scores.
std::string eigen_scores_csv(const std::vector<EdgeScore>& scores);

}  // namespace spmkit
