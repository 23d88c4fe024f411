#include <doctest.h>

#include <cmath>

#include "spmkit/errors.hpp"
#include "spmkit/model_fit.hpp"

#include "../support/builders.hpp"

using namespace spmkit;
using namespace spmkit::test;

namespace {

EpidemicCurve observed_curve(Model model, const SiidrParams& p, int n_hosts,
                             int steps, std::uint64_t seed) {
    Graph g = clique(n_hosts);
    Trajectory t = simulate(g, model, p, 0, steps, seed);
    EpidemicCurve curve;
    curve.bin_width = 1.0;
    curve.n_hosts = n_hosts;
    curve.t_end = steps;
    for (int b = 0; b <= steps; ++b) {
        const std::size_t idx = std::min<std::size_t>(b, t.ever_infected.size() - 1);
        curve.infected.push_back(t.ever_infected[idx]);
    }
    return curve;
}

}  // namespace

TEST_CASE("abc_smc input validation") {
    EpidemicCurve curve = observed_curve(Model::Si, {0.05, 0, 0, 0, 1}, 30, 20, 1);
    CHECK_THROWS_AS(abc_smc(curve, Model::Si, PriorBox::uniform01(Model::Si), 3, 50, 1),
                    ConfigError);  // population too small
    PriorBox wrong;
    wrong.bounds = {{0.0, 1.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(abc_smc(curve, Model::Si, wrong, 3, 100, 1), ConfigError);
}

TEST_CASE("abc_smc tolerances strictly decrease and variance shrinks") {
    SiidrParams truth{0.08, 0.0, 0.0, 0.0, 1.0};
    EpidemicCurve curve = observed_curve(Model::Si, truth, 50, 30, 7);
    Posterior post =
        abc_smc(curve, Model::Si, PriorBox::uniform01(Model::Si), 4, 150, 3);
    REQUIRE(post.tolerances.size() >= 2);
    for (std::size_t t = 1; t < post.tolerances.size(); ++t)
        CHECK(post.tolerances[t] < post.tolerances[t - 1]);
    CHECK_FALSE(post.aborted);
    CHECK(post.acceptance_rates.front() == doctest::Approx(1.0));
}

TEST_CASE("abc_smc recovers beta on a synthetic SI curve") {
    SiidrParams truth{0.08, 0.0, 0.0, 0.0, 1.0};
    EpidemicCurve curve = observed_curve(Model::Si, truth, 50, 30, 7);
    Posterior post =
        abc_smc(curve, Model::Si, PriorBox::uniform01(Model::Si), 5, 200, 5);
    auto mean = post.posterior_mean();
    REQUIRE(mean.size() == 1);
    CHECK(std::abs(mean[0] - truth.beta) < 0.05);
}

TEST_CASE("point-mass prior passes through unchanged") {
    SiidrParams truth{0.08, 0.0, 0.0, 0.0, 1.0};
    EpidemicCurve curve = observed_curve(Model::Si, truth, 40, 25, 9);
    PriorBox point;
    point.bounds = {{0.08, 0.08 + 1e-12}};
    Posterior post = abc_smc(curve, Model::Si, point, 3, 100, 2);
    CHECK_FALSE(post.aborted);
    for (const auto& particle : post.particles)
        CHECK(particle[0] == doctest::Approx(0.08).epsilon(1e-9));
    auto mean = post.posterior_mean();
    CHECK(mean[0] == doctest::Approx(0.08).epsilon(1e-9));
}

TEST_CASE("SI posteriors carry exactly one dimension") {
    SiidrParams truth{0.08, 0.0, 0.0, 0.0, 1.0};
    EpidemicCurve curve = observed_curve(Model::Si, truth, 40, 25, 4);
    Posterior post =
        abc_smc(curve, Model::Si, PriorBox::uniform01(Model::Si), 3, 120, 8);
    for (const auto& particle : post.particles) CHECK(particle.size() == 1);
}
