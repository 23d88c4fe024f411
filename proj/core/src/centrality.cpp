#include "spmkit/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "spmkit/errors.hpp"

namespace spmkit {

std::string to_string(CentralityKind kind) {
    switch (kind) {
        case CentralityKind::Degree: return "degree";
        case CentralityKind::Ens: return "ens";
        case CentralityKind::Nb: return "nb";
    }
    return "?";
}

namespace {

std::vector<double> degree_scores(const Graph& g) {
    std::vector<double> s(g.num_nodes());
    for (int v = 0; v < g.num_nodes(); ++v) s[v] = g.degree(v);
    return s;
}

std::vector<double> ens_scores(const Graph& g) {
    std::vector<double> s(g.num_nodes(), 0.0);
    for (int v = 0; v < g.num_nodes(); ++v) {
        const int d = g.degree(v);
        if (d == 0) continue;
        // t = edges among the neighbors of v.
        long long t2 = 0;  // counts each such edge twice
        for (int u : g.neighbors(v))
            for (int w : g.neighbors(u))
                if (w != v && w > u && g.has_edge(v, w)) t2 += 2;
        s[v] = d - static_cast<double>(t2) / d;
    }
    return s;
}

std::vector<double> nb_scores(const Graph& g) {
    auto core_nodes = k_core_nodes(g, 2);
    if (core_nodes.empty())
        throw NumericalError("nb centrality: 2-core is empty, spectrum degenerate");
    Graph core = induced_subgraph(g, core_nodes);

    // Directed half-edges of the 2-core. half[e] = (u, v) means u -> v.
    std::vector<std::pair<int, int>> half;
    // For fast transition: for each node v, the list of half-edge ids leaving v.
    std::vector<std::vector<int>> out_of(core.num_nodes());
    for (int u = 0; u < core.num_nodes(); ++u) {
        for (int v : core.neighbors(u)) {
            out_of[u].push_back(static_cast<int>(half.size()));
            half.emplace_back(u, v);
        }
    }
    const std::size_t m2 = half.size();

    // Power iteration on (B + I), B the Hashimoto operator:
    // B[(u->v),(v->w)] = 1 iff w != u. Uniform start; the shift keeps cycles
    // (where B is a permutation) from stalling the iteration.
    std::vector<double> x(m2, 1.0 / std::sqrt(static_cast<double>(m2)));
    std::vector<double> y(m2);
    double lambda = 0.0, prev = -1.0;
    const int max_iter = 20000;
    bool converged = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        for (std::size_t e = 0; e < m2; ++e) {
            auto [u, v] = half[e];
            double acc = x[e];
            for (int f : out_of[v])
                if (half[f].second != u) acc += x[f];
            y[e] = acc;
        }
        double dot = 0.0, ynorm = 0.0;
        for (std::size_t e = 0; e < m2; ++e) {
            dot += x[e] * y[e];
            ynorm += y[e] * y[e];
        }
        lambda = dot;
        ynorm = std::sqrt(ynorm);
        for (std::size_t e = 0; e < m2; ++e) x[e] = y[e] / ynorm;
        if (iter > 0 && std::abs(lambda - prev) < 1e-12 * std::max(std::abs(lambda), 1.0)) {
            converged = true;
            break;
        }
        prev = lambda;
    }
    if (!converged)
        throw ConvergenceError("nb centrality: Hashimoto power iteration did not converge",
                               lambda - 1.0, max_iter);

    std::vector<double> core_score(core.num_nodes(), 0.0);
    for (std::size_t e = 0; e < m2; ++e) core_score[half[e].second] += std::abs(x[e]);

    std::vector<double> s(g.num_nodes(), 0.0);
    for (std::size_t i = 0; i < core_nodes.size(); ++i)
        s[core_nodes[i]] = core_score[i];
    return s;
}

}  // namespace

std::string centrality_csv(const CentralityVector& cv) {
    std::ostringstream out;
    out << "node,score\n";
    out.precision(12);
    for (std::size_t v = 0; v < cv.scores.size(); ++v)
        out << v << ',' << cv.scores[v] << '\n';
    return out.str();
}

CentralityVector centrality(const Graph& g, CentralityKind kind) {
    if (g.num_nodes() == 0) throw ConfigError("centrality: empty graph");
    switch (kind) {
        case CentralityKind::Degree: return {kind, degree_scores(g)};
        case CentralityKind::Ens: return {kind, ens_scores(g)};
        case CentralityKind::Nb: return {kind, nb_scores(g)};
    }
    throw ConfigError("centrality: unknown kind");
}

}  // namespace spmkit
