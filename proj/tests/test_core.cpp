#include <doctest.h>

#include <cmath>
#include <limits>

#include "gpsparsify/core.hpp"
#include "oracles.hpp"

using namespace gpsparsify;

TEST_CASE("eval_sup on small sets") {
    VectorSet T(2, {{1.0, 0.0}, {0.0, 1.0}});
    std::vector<double> x{3.0, -1.0};
    CHECK(eval_sup(T, x) == 3.0);

    VectorSet single(3, {{0.5, -2.0, 1.0}});
    std::vector<double> y{1.0, 1.0, 4.0};
    CHECK(eval_sup(single, y) == doctest::Approx(0.5 - 2.0 + 4.0));

    VectorSet pm(2, {{1.0, 0.0}, {-1.0, 0.0}});
    std::vector<double> z{-2.0, 5.0};
    CHECK(eval_sup(pm, z) == 2.0);
}

TEST_CASE("eval_sup rejects dimension mismatch") {
    VectorSet T(2, {{1.0, 0.0}});
    std::vector<double> x{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(eval_sup(T, x), std::invalid_argument);
}

TEST_CASE("eval_sup is positively homogeneous") {
    const VectorSet T(4, {oracles::random_vector(3, 0, 4),
                          oracles::random_vector(3, 1, 4),
                          oracles::random_vector(3, 2, 4)});
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto x = oracles::random_vector(4, i, 4);
        for (double alpha : {0.0, 0.5, 2.0, 17.25}) {
            std::vector<double> ax(4);
            for (int k = 0; k < 4; ++k) ax[k] = alpha * x[k];
            CHECK(eval_sup(T, ax) ==
                  doctest::Approx(alpha * eval_sup(T, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("diameter basics") {
    CHECK(diameter(VectorSet(2, {{1.0, 2.0}})) == 0.0);
    CHECK(diameter(VectorSet(2, {{1.0, 0.0}, {-1.0, 0.0}})) == 2.0);
    CHECK(diameter(VectorSet(2, {{0.0, 0.0}, {3.0, 4.0}})) == 5.0);
}

TEST_CASE("diameter is permutation- and translation-invariant") {
    std::vector<std::vector<double>> pts;
    for (std::uint64_t i = 0; i < 12; ++i) pts.push_back(oracles::random_vector(9, i, 5));
    const double base = diameter(VectorSet(5, pts));

    std::vector<std::vector<double>> rev(pts.rbegin(), pts.rend());
    CHECK(diameter(VectorSet(5, rev)) == base);

    const auto shift = oracles::random_vector(10, 0, 5);
    auto moved = pts;
    for (auto& p : moved)
        for (int k = 0; k < 5; ++k) p[k] += shift[k];
    CHECK(diameter(VectorSet(5, moved)) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("symmetrize") {
    const VectorSet e1(2, {{1.0, 0.0}});
    const VectorSet sym = symmetrize(e1);
    REQUIRE(sym.size() == 2);
    CHECK(sym.points[1][0] == -1.0);

    const VectorSet pair(2, {{1.0, 1.0}, {-1.0, -1.0}});
    CHECK(symmetrize(pair).size() == 2);

    // idempotence: a symmetric set stays the same as a set
    const VectorSet twice = symmetrize(sym);
    CHECK(twice.size() == sym.size());
}

TEST_CASE("sup of symmetrized set equals max over both signs") {
    std::vector<std::vector<double>> pts;
    for (std::uint64_t i = 0; i < 6; ++i) pts.push_back(oracles::random_vector(21, i, 3));
    const VectorSet T(3, pts);
    const VectorSet S = symmetrize(T);
    for (std::uint64_t i = 0; i < 100; ++i) {
        const auto x = oracles::random_vector(22, i, 3);
        std::vector<double> nx(3);
        for (int k = 0; k < 3; ++k) nx[k] = -x[k];
        CHECK(eval_sup(S, x) ==
              doctest::Approx(std::max(eval_sup(T, x), eval_sup(T, nx)))
                  .epsilon(1e-12));
    }
}

TEST_CASE("VectorSet validation") {
    CHECK_THROWS_AS(VectorSet(2, {}), std::invalid_argument);
    CHECK_THROWS_AS(VectorSet(2, {{1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(VectorSet(2, {{1.0, std::numeric_limits<double>::quiet_NaN()}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(VectorSet(1, {{1.0}}, {"a", "b"}), std::invalid_argument);
}

TEST_CASE("Halfspace normalizes on ingest") {
    const Halfspace h({3.0, 4.0}, 10.0);
    CHECK(euclidean_norm(h.normal) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.normal[0] == doctest::Approx(0.6));
    CHECK(h.offset == doctest::Approx(2.0));
    CHECK_THROWS_AS(Halfspace({0.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("Polytope membership and sentinels") {
    const Polytope box = Polytope::intersection(
        2, {Halfspace({1.0, 0.0}, 1.0), Halfspace({-1.0, 0.0}, 1.0),
            Halfspace({0.0, 1.0}, 1.0), Halfspace({0.0, -1.0}, 1.0)});
    std::vector<double> in{0.5, -0.5}, out{1.5, 0.0};
    CHECK(box.contains(in));
    CHECK(!box.contains(out));
    CHECK(!Polytope::empty(2).contains(in));
    CHECK(Polytope::full(2).contains(out));
    CHECK_THROWS_AS(Polytope::intersection(3, {Halfspace({1.0, 0.0}, 1.0)}),
                    std::invalid_argument);
}
