#include "spmkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spmkit/errors.hpp"

namespace spmkit {

namespace {

struct ComponentEigen {
    double lambda = 0.0;
    std::vector<double> vec;  // indexed like the component node list
    int iterations = 0;
    bool converged = false;
};

// Power iteration on (A + I) restricted to one component. The +I shift makes
// the Perron eigenvalue strictly dominant in magnitude even on bipartite
// components, where plain iteration oscillates and the Rayleigh quotient
// settles on a wrong interior value.
ComponentEigen component_eigen(const Graph& g, const std::vector<int>& nodes,
                               double tol, int max_iter) {
    const int m = static_cast<int>(nodes.size());
    ComponentEigen out;
    out.vec.assign(m, 0.0);
    if (m == 1) {
        out.lambda = 0.0;
        out.vec[0] = 1.0;
        out.converged = true;
        return out;
    }

    std::vector<int> local(g.num_nodes(), -1);
    for (int i = 0; i < m; ++i) local[nodes[i]] = i;

    // Start from the normalized degree vector for determinism.
    std::vector<double> x(m), y(m);
    double norm = 0.0;
    for (int i = 0; i < m; ++i) {
        x[i] = static_cast<double>(g.degree(nodes[i]));
        norm += x[i] * x[i];
    }
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;

    double shifted_rq = 0.0;
    double prev_rq = std::numeric_limits<double>::quiet_NaN();
    for (int iter = 1; iter <= max_iter; ++iter) {
        // y = (A + I) x on the component.
        for (int i = 0; i < m; ++i) {
            double acc = x[i];
            for (int u : g.neighbors(nodes[i])) acc += x[local[u]];
            y[i] = acc;
        }
        double dot = 0.0, ynorm = 0.0;
        for (int i = 0; i < m; ++i) {
            dot += x[i] * y[i];
            ynorm += y[i] * y[i];
        }
        shifted_rq = dot;  // x is unit, so x.y is the Rayleigh quotient of A+I
        ynorm = std::sqrt(ynorm);
        for (int i = 0; i < m; ++i) x[i] = y[i] / ynorm;
        out.iterations = iter;
        if (iter > 1 &&
            std::abs(shifted_rq - prev_rq) < tol * std::max(std::abs(shifted_rq), 1e-300)) {
            out.converged = true;
            break;
        }
        prev_rq = shifted_rq;
    }
    out.lambda = shifted_rq - 1.0;
    // Perron vector is nonnegative; scrub sign noise from the iteration.
    for (double& v : x) v = std::abs(v);
    double n2 = 0.0;
    for (double v : x) n2 += v * v;
    n2 = std::sqrt(n2);
    for (int i = 0; i < m; ++i) out.vec[i] = x[i] / n2;
    return out;
}

}  // namespace

EigenPair leading_eigenpair(const Graph& g, double tol, int max_iter) {
    if (g.num_nodes() == 0)
        throw ConfigError("leading_eigenpair: empty graph");

    auto comps = connected_components(g);
    EigenPair best;
    best.graph_hash = g.hash();
    best.vector.assign(g.num_nodes(), 0.0);
    best.lambda1 = -std::numeric_limits<double>::infinity();

    int winner = -1;
    std::vector<ComponentEigen> partials(comps.size());
    bool all_converged = true;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        partials[c] = component_eigen(g, comps[c], tol, max_iter);
        all_converged = all_converged && partials[c].converged;
        best.iterations += partials[c].iterations;
        if (partials[c].lambda > best.lambda1) {
            best.lambda1 = partials[c].lambda;
            winner = static_cast<int>(c);
        }
    }
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (static_cast<int>(c) == winner) continue;
        const double gap = best.lambda1 - partials[c].lambda;
        if (gap < 1e-8 * std::max(std::abs(best.lambda1), 1.0)) best.degenerate = true;
    }
    const auto& nodes = comps[winner];
    for (std::size_t i = 0; i < nodes.size(); ++i)
        best.vector[nodes[i]] = partials[winner].vec[i];

    if (!all_converged) {
        throw ConvergenceError("leading_eigenpair: power iteration did not converge",
                               best.lambda1, best.iterations);
    }
    return best;
}

SpectralTop leading_eigenpairs(const Graph& g, int count, double tol, int max_iter) {
    if (g.num_nodes() == 0)
        throw ConfigError("leading_eigenpairs: empty graph");
    const int n = g.num_nodes();
    count = std::min(count, n);

    SpectralTop top;
    for (int k = 0; k < count; ++k) {
        std::vector<double> x(n), y(n);
        // Degree-based start, perturbed per slot so deflated directions are
        // reachable; re-orthogonalized against earlier vectors each sweep.
        for (int v = 0; v < n; ++v)
            x[v] = g.degree(v) + 1.0 + 0.1 * ((v + k) % 7);
        auto orthonormalize = [&](std::vector<double>& vec) {
            for (const auto& prev : top.vectors) {
                double dot = 0.0;
                for (int i = 0; i < n; ++i) dot += vec[i] * prev[i];
                for (int i = 0; i < n; ++i) vec[i] -= dot * prev[i];
            }
            double norm = 0.0;
            for (double v : vec) norm += v * v;
            norm = std::sqrt(norm);
            if (norm < 1e-300) return false;
            for (double& v : vec) v /= norm;
            return true;
        };
        if (!orthonormalize(x)) break;

        double rq = 0.0, prev_rq = std::numeric_limits<double>::quiet_NaN();
        bool ok = false;
        for (int iter = 1; iter <= max_iter; ++iter) {
            for (int v = 0; v < n; ++v) {
                double acc = x[v];
                for (int u : g.neighbors(v)) acc += x[u];
                y[v] = acc;
            }
            double dot = 0.0;
            for (int v = 0; v < n; ++v) dot += x[v] * y[v];
            rq = dot;
            x = y;
            if (!orthonormalize(x)) break;
            if (iter > 1 && std::abs(rq - prev_rq) < tol * std::max(std::abs(rq), 1e-300)) {
                ok = true;
                break;
            }
            prev_rq = rq;
        }
        top.converged = top.converged && ok;
        top.values.push_back(rq - 1.0);
        top.vectors.push_back(x);
    }
    return top;
}

double eigen_drop(double lambda_before, double lambda_after) {
    if (lambda_before <= 0.0)
        throw NumericalError("eigen_drop: lambda_before must be > 0");
    return 100.0 * (lambda_before - lambda_after) / lambda_before;
}

std::vector<EdgeScore> eigen_scores(const Graph& g, const EigenPair& pair) {
    if (pair.graph_hash != g.hash())
        throw ConfigError("eigen_scores: eigenpair is stale for this graph");
    std::vector<EdgeScore> scores;
    scores.reserve(g.num_edges());
    for (auto [i, j] : g.edges())
        scores.push_back({i, j, pair.vector[i] * pair.vector[j]});
    return scores;
}

double effective_strength(double lambda1, double beta, double mu) {
    if (mu <= 0.0) throw NumericalError("effective_strength: mu must be > 0");
    return lambda1 * beta / mu;
}

std::string eigen_scores_csv(const std::vector<EdgeScore>& scores) {
    std::ostringstream out;
    out << "src,dst,score\n";
    out.precision(12);
    for (const auto& s : scores) out << s.i << ',' << s.j << ',' << s.score << '\n';
    return out.str();
}

}  // namespace spmkit
