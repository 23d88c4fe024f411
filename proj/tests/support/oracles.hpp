#pragma once

// Independent oracles used to pin expected values. These stay deliberately
// naive (dense matrices, exhaustive enumeration, direct summation) and avoid
// the implementation paths they check.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "spmkit/communities.hpp"
#include "spmkit/graph.hpp"

namespace spmkit::test {

// Cyclic Jacobi rotations on a dense symmetric matrix; returns eigenvalues.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
    const int n = static_cast<int>(a.size());
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-18) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a[i][i];
    return eig;
}

inline std::vector<std::vector<double>> dense_adjacency(const Graph& g) {
    const int n = g.num_nodes();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (int v = 0; v < n; ++v)
        for (int u : g.neighbors(v)) a[v][u] = 1.0;
    return a;
}

inline double jacobi_lambda_max(const Graph& g) {
    auto eig = jacobi_eigenvalues(dense_adjacency(g));
    double best = -1e300;
    for (double e : eig) best = std::max(best, e);
    return best;
}

// Exhaustive best single-edge removal: the minimum lambda1 achievable.
inline double best_single_edge_removal_lambda(const Graph& g) {
    double best = 1e300;
    auto edges = g.edges();
    for (std::size_t skip = 0; skip < edges.size(); ++skip) {
        std::vector<std::pair<int, int>> kept;
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (e != skip) kept.push_back(edges[e]);
        Graph h = Graph::from_edges(g.num_nodes(), kept);
        best = std::min(best, jacobi_lambda_max(h));
    }
    return best;
}

// Exhaustive modularity maximum over all set partitions (n <= ~10 only),
// enumerated as restricted-growth strings.
inline void enumerate_partitions_rec(const Graph& g, std::vector<int>& labels,
                                     int i, int max_label, double& best) {
    if (i == static_cast<int>(labels.size())) {
        best = std::max(best, modularity(g, std::span<const int>(labels), 1.0));
        return;
    }
    for (int l = 0; l <= max_label + 1; ++l) {
        labels[i] = l;
        enumerate_partitions_rec(g, labels, i + 1, std::max(max_label, l), best);
    }
}

inline double brute_force_best_modularity(const Graph& g) {
    std::vector<int> labels(g.num_nodes(), 0);
    double best = -1.0;
    if (g.num_nodes() <= 1)
        return modularity(g, std::span<const int>(labels), 1.0);
    enumerate_partitions_rec(g, labels, 1, 0, best);
    return best;
}

// Discrete power-law sampler: inverse CDF over a direct truncated zeta table.
class ZetaSampler {
public:
    ZetaSampler(double alpha, int cap = 1000000) : cdf_(cap + 1, 0.0) {
        double total = 0.0;
        for (int x = 1; x <= cap; ++x) total += std::pow(x, -alpha);
        double acc = 0.0;
        for (int x = 1; x <= cap; ++x) {
            acc += std::pow(x, -alpha) / total;
            cdf_[x] = acc;
        }
    }

    int sample(double u) const {
        int lo = 1, hi = static_cast<int>(cdf_.size()) - 1;
        while (lo < hi) {
            const int mid = (lo + hi) / 2;
            if (cdf_[mid] >= u) hi = mid;
            else lo = mid + 1;
        }
        return lo;
    }

private:
    std::vector<double> cdf_;
};

}  // namespace spmkit::test
