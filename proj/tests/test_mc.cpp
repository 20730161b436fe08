#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "gpsparsify/bench.hpp"
#include "gpsparsify/mc.hpp"
#include "gpsparsify/quadrature.hpp"
#include "gpsparsify/rng.hpp"
#include "oracles.hpp"

using namespace gpsparsify;

namespace {
const McConfig kCfg = McConfig::make(100000, 7);
}

TEST_CASE("golden variates pin the generator") {
    // Box-Muller over SplitMix64 substreams; fixed per release.
    double g[4];
    fill_gaussian(derive_seed(42, 0), g);
    CHECK(g[0] == doctest::Approx(1.0021283449150271).epsilon(1e-15));
    CHECK(g[1] == doctest::Approx(1.4655247145451082).epsilon(1e-15));
    CHECK(g[2] == doctest::Approx(0.83848331586413971).epsilon(1e-15));
    CHECK(g[3] == doctest::Approx(0.63804392870854365).epsilon(1e-15));
    fill_gaussian(derive_seed(42, 1), g);
    CHECK(g[0] == doctest::Approx(-0.41470806191192544).epsilon(1e-15));
}

TEST_CASE("golden width estimate") {
    const VectorSet pm(2, {{1.0, 0.0}, {-1.0, 0.0}});
    const Estimate w = estimate_width(pm, McConfig::make(4096, 42));
    CHECK(w.mean == 0.79518043379889936);
    CHECK(w.std_err == 0.0093680209688407207);
    CHECK(w.n_samples == 4096);
    CHECK(w.seed == 42);
}

TEST_CASE("width of simple sets") {
    const VectorSet e1(2, {{1.0, 0.0}});
    const Estimate w0 = estimate_width(e1, kCfg);
    CHECK(std::abs(w0.mean) <= 3.0 * w0.std_err);

    const VectorSet pm(2, {{1.0, 0.0}, {-1.0, 0.0}});
    const Estimate w1 = estimate_width(pm, kCfg);
    CHECK(std::abs(w1.mean - std::sqrt(2.0 / std::numbers::pi)) <=
          3.0 * w1.std_err);

    // E[max(g1, g2)] cross-checked against the quadrature oracle
    const VectorSet two(2, {{1.0, 0.0}, {0.0, 1.0}});
    const Estimate w2 = estimate_width(two, kCfg);
    CHECK(std::abs(w2.mean - expected_max_gaussians(2)) <= 3.0 * w2.std_err);
}

TEST_CASE("width scales linearly with the set, same draws") {
    const VectorSet T = gen_random_unit_cloud(8, 20, 3);
    const Estimate w = estimate_width(T, kCfg);
    const Estimate w3 = estimate_width(T.scaled(3.0), kCfg);
    CHECK(w3.mean == doctest::Approx(3.0 * w.mean).epsilon(1e-12));
}

TEST_CASE("estimates are deterministic and batch-independent") {
    const VectorSet T = gen_random_unit_cloud(16, 50, 4);
    McConfig a = McConfig::make(30000, 99);
    const Estimate first = estimate_width(T, a);
    const Estimate again = estimate_width(T, a);
    CHECK(first.mean == again.mean);
    CHECK(first.std_err == again.std_err);

    McConfig b = a;
    b.batch_size = 977;
    const Estimate other = estimate_width(T, b);
    CHECK(first.mean == other.mean);
    CHECK(first.std_err == other.std_err);
}

TEST_CASE("estimates are thread-count independent") {
    const VectorSet T = gen_random_unit_cloud(16, 50, 4);
    setenv("GPSPARSIFY_THREADS", "1", 1);
    const Estimate one = estimate_width(T, McConfig::make(30000, 99));
    setenv("GPSPARSIFY_THREADS", "2", 1);
    const Estimate two = estimate_width(T, McConfig::make(30000, 99));
    unsetenv("GPSPARSIFY_THREADS");
    CHECK(one.mean == two.mean);
    CHECK(one.std_err == two.std_err);
}

TEST_CASE("antithetic pairing changes draws but stays deterministic") {
    const VectorSet T = gen_random_unit_cloud(8, 20, 3);
    McConfig cfg = McConfig::make(20000, 5);
    cfg.antithetic = true;
    const Estimate a = estimate_width(T, cfg);
    const Estimate b = estimate_width(T, cfg);
    CHECK(a.mean == b.mean);
    cfg.antithetic = false;
    CHECK(estimate_width(T, cfg).mean != a.mean);
}

TEST_CASE("McConfig validation") {
    McConfig bad = McConfig::make(100, 1);
    bad.batch_size = 1000;
    const VectorSet T(1, {{1.0}});
    CHECK_THROWS_AS(estimate_width(T, bad), std::invalid_argument);
}

TEST_CASE("l1 gap: structurally identical forms short-circuit") {
    const VectorSet T = gen_random_unit_cloud(8, 10, 6);
    const SupForm F(T, std::vector<double>(10, 0.25));
    const Estimate g = estimate_l1_gap(F, F, 8, kCfg);
    CHECK(g.mean == 0.0);
    CHECK(g.std_err == 0.0);
}

TEST_CASE("l1 gap of a constant shift") {
    const VectorSet T(1, {{1.0}});
    const SupForm F(T);
    const SupForm G(T, {0.7});
    const Estimate g = estimate_l1_gap(F, G, 1, kCfg);
    CHECK(std::abs(g.mean - 0.7) <= 3.0 * g.std_err + 1e-12);
}

TEST_CASE("l1 gap of a coordinate-set prefix matches the order-statistics oracle") {
    // S keeps the first m of n scaled coordinate vectors, so f_T >= f_S
    // pointwise and E|f_T - f_S| = (a(n) - a(m)) / a(n) exactly.
    const int n = 256, m = 16;
    const VectorSet T = gen_coordinate_example(n);
    std::vector<std::vector<double>> head(T.points.begin(), T.points.begin() + m);
    const Estimate g = estimate_l1_gap(SupForm(T), SupForm(VectorSet(n, head)), n, kCfg);
    const double oracle = 1.0 - a_n(m) / a_n(n);
    CHECK(std::abs(g.mean - oracle) <= 3.0 * g.std_err + 1e-6);
}

TEST_CASE("gaussian distance basics") {
    const Polytope K = Polytope::intersection(1, {Halfspace({1.0}, 0.0)});
    const Estimate zero = estimate_gaussian_distance(K, K, kCfg);
    CHECK(zero.mean == 0.0);

    const Polytope L = Polytope::intersection(1, {Halfspace({1.0}, 0.5)});
    const Estimate d = estimate_gaussian_distance(K, L, kCfg);
    CHECK(std::abs(d.mean - (oracles::phi_cdf(0.5) - 0.5)) <= 3.0 * d.std_err);

    CHECK_THROWS_AS(estimate_gaussian_distance(K, Polytope::empty(2), kCfg),
                    std::invalid_argument);
}

TEST_CASE("gaussian distance of 256-gon vs square matches 2-D quadrature") {
    const Polytope gon = gen_regular_polygon(256);
    const Polytope square = Polytope::intersection(
        2, {Halfspace({1.0, 0.0}, 1.0), Halfspace({-1.0, 0.0}, 1.0),
            Halfspace({0.0, 1.0}, 1.0), Halfspace({0.0, -1.0}, 1.0)});
    const Estimate d = estimate_gaussian_distance(gon, square, kCfg);
    const double oracle = oracles::polar_distance_2d(gon, square);
    CHECK(std::abs(d.mean - oracle) <= 3.0 * d.std_err + 1e-6);
}

TEST_CASE("event probabilities") {
    const Estimate one = estimate_event_prob(
        [](std::span<const double>) { return true; }, 3, kCfg);
    CHECK(one.mean == 1.0);

    const Estimate half = estimate_event_prob(
        [](std::span<const double> g) { return g[0] >= 0.0; }, 3, kCfg);
    CHECK(std::abs(half.mean - 0.5) <= 3.0 * half.std_err);

    const Estimate chi = estimate_event_prob(
        [](std::span<const double> g) { return g[0] * g[0] + g[1] * g[1] <= 2.0; },
        2, kCfg);
    CHECK(std::abs(chi.mean - (1.0 - std::exp(-1.0))) <= 3.0 * chi.std_err);
}

TEST_CASE("form events agree with the scalar predicate path") {
    const VectorSet T = gen_random_unit_cloud(16, 40, 8);
    const SupForm F(T);
    const Estimate a = estimate_form_event(
        F, [](double v) { return v >= 1.5; }, 16, kCfg);
    const Estimate b = estimate_event_prob(
        [&](std::span<const double> g) { return F.eval(g) >= 1.5; }, 16, kCfg);
    CHECK(std::abs(a.mean - b.mean) <= 1e-12);
}

TEST_CASE("subgaussian tail bound holds empirically") {
    const VectorSet T = gen_random_unit_cloud(16, 100, 11);
    const Estimate w = estimate_width(T, kCfg.with_seed(1234));
    double max_norm = 0.0;
    for (const auto& t : T.points) max_norm = std::max(max_norm, euclidean_norm(t));
    for (double mult : {1.0, 2.0, 3.0}) {
        const double rho = mult * max_norm;
        const Estimate p = estimate_form_event(
            SupForm(T), [&](double v) { return std::abs(v - w.mean) >= rho; }, 16,
            kCfg);
        const double bound = 2.0 * std::exp(-rho * rho / (2.0 * max_norm * max_norm));
        CHECK(p.mean <= bound + 3.0 * p.std_err);
    }
}
