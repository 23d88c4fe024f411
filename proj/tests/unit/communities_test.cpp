#include <doctest.h>

#include <numeric>
#include <set>

#include "spmkit/communities.hpp"
#include "spmkit/errors.hpp"

#include "../support/builders.hpp"
#include "../support/oracles.hpp"

using namespace spmkit;
using namespace spmkit::test;

TEST_CASE("modularity closed forms") {
    Graph g = two_disjoint_triangles();
    std::vector<int> by_component{0, 0, 0, 1, 1, 1};
    CHECK(modularity(g, by_component) == doctest::Approx(0.5));

    std::vector<int> all_one(6, 0);
    CHECK(modularity(g, all_one) == doctest::Approx(0.0));

    Graph k3 = clique(3);
    std::vector<int> singletons{0, 1, 2};
    CHECK(modularity(k3, singletons) == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("modularity validates coverage and label gaps") {
    Graph g = clique(3);
    std::vector<int> short_labels{0, 1};
    CHECK_THROWS_AS(modularity(g, short_labels), ConfigError);
    std::vector<int> gap{0, 0, 2};  // label 1 unused
    CHECK_THROWS_AS(modularity(g, gap), ConfigError);
}

TEST_CASE("two triangles joined by a bridge split into the triangles") {
    Graph g = two_triangles_bridge();
    Partition p = detect_communities(g, 1.0, 0);
    CHECK(p.n_communities == 2);
    CHECK(p.assignment[0] == p.assignment[1]);
    CHECK(p.assignment[1] == p.assignment[2]);
    CHECK(p.assignment[3] == p.assignment[4]);
    CHECK(p.assignment[4] == p.assignment[5]);
    CHECK(p.assignment[0] != p.assignment[5]);
    CHECK(p.modularity ==
          doctest::Approx(brute_force_best_modularity(g)).epsilon(1e-12));
}

TEST_CASE("a clique stays one community at resolution 1") {
    Partition p = detect_communities(clique(6), 1.0, 0);
    CHECK(p.n_communities == 1);
}

TEST_CASE("two disjoint triangles yield modularity 0.5") {
    Partition p = detect_communities(two_disjoint_triangles(), 1.0, 0);
    CHECK(p.n_communities == 2);
    CHECK(p.modularity == doctest::Approx(0.5));
}

TEST_CASE("leiden hits the exhaustive optimum on every small corpus graph") {
    std::vector<Graph> corpus = {
        two_triangles_bridge(),
        two_disjoint_triangles(),
        clique(6),
        clique(8),
        cycle(5),
        cycle(8),
        path(3),
        path(8),
        star(7),
        Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}),  // C4 = K_{2,2}
        Graph::from_edges(7, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5},
                              {3, 5}, {5, 6}}),
    };
    for (std::uint64_t seed = 0; seed < 4; ++seed)
        corpus.push_back(erdos_renyi(8, 0.4, seed));

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Graph& g = corpus[i];
        CAPTURE(i);
        Partition p = detect_communities(g, 1.0, 1);
        const double best = brute_force_best_modularity(g);
        CHECK(std::abs(p.modularity - best) < 1e-9);
    }
}

TEST_CASE("leiden beats the trivial partitions and is deterministic") {
    for (std::uint64_t seed : {0ull, 1ull, 2ull}) {
        Graph g = erdos_renyi(80, 0.06, 77 + seed);
        Partition p = detect_communities(g, 1.0, seed);
        std::vector<int> singletons(g.num_nodes());
        std::iota(singletons.begin(), singletons.end(), 0);
        std::vector<int> all_one(g.num_nodes(), 0);
        CHECK(p.modularity >= modularity(g, singletons) - 1e-12);
        CHECK(p.modularity >= modularity(g, all_one) - 1e-12);

        Partition again = detect_communities(g, 1.0, seed);
        CHECK(again.assignment == p.assignment);
    }
}

TEST_CASE("leiden communities are internally connected") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Graph g = erdos_renyi(70, 0.07, 900 + seed);
        Partition p = detect_communities(g, 1.0, seed);
        // Removing all boundary edges must leave every community as exactly
        // one connected component.
        auto b = boundary(g, p);
        std::set<std::pair<int, int>> cut(b.edges.begin(), b.edges.end());
        std::vector<std::pair<int, int>> kept;
        for (auto e : g.edges())
            if (!cut.count(e)) kept.push_back(e);
        Graph inner = Graph::from_edges(g.num_nodes(), kept);
        std::set<int> seen_labels;
        for (const auto& comp : connected_components(inner)) {
            std::set<int> labels;
            for (int v : comp) labels.insert(p.assignment[v]);
            CHECK(labels.size() == 1);  // component inside one community
            CHECK(seen_labels.insert(*labels.begin()).second);  // one per community
        }
    }
}

TEST_CASE("boundary on named graphs") {
    Graph g = two_triangles_bridge();
    Partition p = detect_communities(g, 1.0, 0);
    auto b = boundary(g, p);
    REQUIRE(b.edges.size() == 1);
    CHECK(b.edges[0] == std::pair<int, int>{2, 3});
    CHECK(b.nodes == std::vector<int>{2, 3});

    Partition one;
    one.assignment.assign(6, 0);
    one.n_communities = 1;
    auto none = boundary(g, one);
    CHECK(none.edges.empty());
    CHECK(none.nodes.empty());

    // K_{2,2} with sides as communities: every edge crosses.
    Graph k22 = Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    Partition sides;
    sides.assignment = {0, 0, 1, 1};
    sides.n_communities = 2;
    CHECK(boundary(k22, sides).edges.size() == 4);
    CHECK(boundary(k22, sides).nodes.size() == 4);
}

TEST_CASE("resolution parameter shifts community granularity") {
    Graph g = two_triangles_bridge();
    Partition coarse = detect_communities(g, 0.1, 0);
    CHECK(coarse.n_communities <= 2);
    Partition fine = detect_communities(g, 1.0, 0);
    CHECK(fine.n_communities == 2);
}
