#include <doctest.h>

#include "spmkit/errors.hpp"
#include "spmkit/generators.hpp"
#include "spmkit/powerlaw.hpp"

#include "../support/builders.hpp"

using namespace spmkit;
using namespace spmkit::test;

TEST_CASE("scale-free generator: node and edge counts") {
    Graph g = generate_scale_free(100, 3, 7);
    CHECK(g.num_nodes() == 100);
    CHECK(g.num_edges() == 291);  // m*(n-m)
    CHECK(well_formed(g));
}

TEST_CASE("scale-free generator is deterministic per seed") {
    Graph a = generate_scale_free(200, 4, 99);
    Graph b = generate_scale_free(200, 4, 99);
    CHECK(a == b);
    CHECK(a.hash() == b.hash());
    Graph c = generate_scale_free(200, 4, 100);
    CHECK(a.hash() != c.hash());
}

TEST_CASE("scale-free generator rejects n <= m") {
    CHECK_THROWS_AS(generate_scale_free(3, 3, 0), ConfigError);
    CHECK_THROWS_AS(generate_scale_free(2, 5, 0), ConfigError);
    CHECK_THROWS_AS(generate_scale_free(10, 0, 0), ConfigError);
}

TEST_CASE("scale-free graphs have heavy-tailed degrees") {
    int favored = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = generate_scale_free(1000, 5, seed);
        double mean_degree = 2.0 * g.num_edges() / g.num_nodes();
        CHECK(g.max_degree() > 4 * mean_degree);

        std::vector<int> degrees(g.num_nodes());
        for (int v = 0; v < g.num_nodes(); ++v) degrees[v] = g.degree(v);
        PowerLawFit fit = power_law_fit(degrees);
        CHECK(fit.alpha > 1.0);
        if (fit.loglik_ratio > 0.0) ++favored;
    }
    // Power law favored over exponential on (nearly) every seed.
    CHECK(favored >= 18);
}
