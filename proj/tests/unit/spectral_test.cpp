#include <doctest.h>

#include <cmath>

#include "spmkit/errors.hpp"
#include "spmkit/spectral.hpp"

#include "../support/builders.hpp"
#include "../support/oracles.hpp"

using namespace spmkit;
using namespace spmkit::test;

TEST_CASE("closed-form leading eigenvalues") {
    CHECK(leading_eigenpair(clique(5)).lambda1 == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(leading_eigenpair(star(9)).lambda1 == doctest::Approx(3.0).epsilon(1e-6));
    for (int n : {4, 5, 6, 11, 100})
        CHECK(leading_eigenpair(cycle(n)).lambda1 == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("power iteration matches the Jacobi oracle on random graphs") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Graph g = erdos_renyi(20 + static_cast<int>(seed) * 7, 0.12, seed);
        if (g.num_edges() == 0) continue;
        EigenPair pair = leading_eigenpair(g);
        CHECK(pair.lambda1 ==
              doctest::Approx(jacobi_lambda_max(g)).epsilon(1e-6));
    }
}

TEST_CASE("eigenvector is unit, nonnegative, and satisfies lambda bounds") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = erdos_renyi(50, 0.08, seed + 100);
        if (g.num_edges() == 0) continue;
        EigenPair pair = leading_eigenpair(g);
        double norm = 0.0, mean_degree = 0.0;
        for (int v = 0; v < g.num_nodes(); ++v) {
            CHECK(pair.vector[v] >= 0.0);
            norm += pair.vector[v] * pair.vector[v];
            mean_degree += g.degree(v);
        }
        mean_degree /= g.num_nodes();
        CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(pair.lambda1 >= mean_degree - 1e-9);
        CHECK(pair.lambda1 >= std::sqrt(static_cast<double>(g.max_degree())) - 1e-9);
    }
}

TEST_CASE("disconnected graphs report the max component eigenvalue") {
    // K4 (lambda 3) plus C6 (lambda 2): winner is the smaller-by-size clique
    // when sizes would mislead.
    Graph g = Graph::from_edges(10, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                     {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 4}});
    EigenPair pair = leading_eigenpair(g);
    CHECK(pair.lambda1 == doctest::Approx(3.0).epsilon(1e-8));
    for (int v = 4; v < 10; ++v) CHECK(pair.vector[v] == 0.0);

    // Two identical components tie: degenerate flag set.
    EigenPair tie = leading_eigenpair(two_disjoint_triangles());
    CHECK(tie.lambda1 == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(tie.degenerate);
}

TEST_CASE("leading_eigenpair throws with best estimate when starved of iterations") {
    Graph g = erdos_renyi(80, 0.1, 5);
    try {
        leading_eigenpair(g, 1e-14, 2);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.best_estimate > 0.0);
        CHECK(e.iterations >= 2);
    }
}

TEST_CASE("eigen_drop percentages") {
    CHECK(eigen_drop(2.0, std::sqrt(2.0)) == doctest::Approx(29.29).epsilon(1e-3));
    CHECK(eigen_drop(5.0, 5.0) == doctest::Approx(0.0));
    CHECK(eigen_drop(std::sqrt(8.0), 2.0) == doctest::Approx(29.29).epsilon(1e-3));
    CHECK(eigen_drop(1.0, 2.0) < 0.0);
    CHECK_THROWS_AS(eigen_drop(0.0, 1.0), NumericalError);
}

TEST_CASE("eigen scores on symmetric graphs") {
    Graph k3 = clique(3);
    auto scores = eigen_scores(k3, leading_eigenpair(k3));
    REQUIRE(scores.size() == 3);
    for (const auto& s : scores)
        CHECK(s.score == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

    Graph s4 = star(4);
    auto star_scores = eigen_scores(s4, leading_eigenpair(s4));
    const double expected = (1.0 / std::sqrt(2.0)) * (1.0 / std::sqrt(8.0));
    for (const auto& s : star_scores)
        CHECK(s.score == doctest::Approx(expected).epsilon(1e-9));

    Graph p3 = path(3);
    auto p3_scores = eigen_scores(p3, leading_eigenpair(p3));
    CHECK(p3_scores[0].score == doctest::Approx(p3_scores[1].score).epsilon(1e-9));
}

TEST_CASE("eigen_scores rejects a stale pair") {
    Graph g = clique(4);
    EigenPair pair = leading_eigenpair(g);
    Graph other = clique(5);
    CHECK_THROWS_AS(eigen_scores(other, pair), ConfigError);
}

TEST_CASE("eigen-score sum identity: 2 * sum v_i v_j over edges = lambda1") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = erdos_renyi(40, 0.15, seed + 31);
        if (g.num_edges() == 0) continue;
        EigenPair pair = leading_eigenpair(g);
        auto scores = eigen_scores(g, pair);
        double sum = 0.0;
        for (const auto& s : scores) sum += 2.0 * s.score;
        // Holds exactly on the component carrying the eigenvector.
        CHECK(sum == doctest::Approx(pair.lambda1).epsilon(1e-6));
    }
}

TEST_CASE("edge removal never increases lambda1") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = erdos_renyi(25, 0.2, 500 + trial);
        if (g.num_edges() < 2) continue;
        const double before = leading_eigenpair(g).lambda1;
        auto edges = g.edges();
        const std::size_t skip = rng.uniform_int(edges.size());
        std::vector<std::pair<int, int>> kept;
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (e != skip) kept.push_back(edges[e]);
        const double after =
            leading_eigenpair(Graph::from_edges(25, kept)).lambda1;
        CHECK(after <= before + 1e-9);
    }
}

TEST_CASE("effective strength") {
    CHECK(effective_strength(2.0, 0.11, 0.07) == doctest::Approx(3.1429).epsilon(1e-4));
    CHECK(effective_strength(10.0, 0.0, 0.5) == doctest::Approx(0.0));
    CHECK(effective_strength(4.0, 0.3, 0.3) == doctest::Approx(4.0));
    CHECK_THROWS_AS(effective_strength(2.0, 0.1, 0.0), NumericalError);
}
