#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gpsparsify/bench.hpp"
#include "gpsparsify/sparsify.hpp"
#include "oracles.hpp"

using namespace gpsparsify;

namespace {

bool partition_covers(const ChopPartition& p, std::size_t n) {
    std::vector<char> seen(n, 0);
    for (const auto& part : p.parts)
        for (int idx : part.indices) {
            if (seen[idx]) return false;
            seen[idx] = 1;
        }
    for (char c : seen)
        if (!c) return false;
    return true;
}

double part_diam(const VectorSet& T, const std::vector<int>& idx) {
    double d = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
            d = std::max(d, euclidean_distance(T.points[idx[i]], T.points[idx[j]]));
    return d;
}

}  // namespace

TEST_CASE("chop keeps a tight set whole at stage one") {
    const double delta = 0.4;
    // diameter <= delta * 2^{-1/2} / 2
    std::vector<std::vector<double>> pts;
    for (std::uint64_t i = 0; i < 10; ++i) {
        auto v = oracles::random_vector(41, i, 3);
        for (double& x : v) x *= 0.02;
        pts.push_back(v);
    }
    const VectorSet T(3, pts);
    REQUIRE(diameter(T) <= delta * std::exp2(-0.5) / 2.0);
    const AdmissibleSequence seq = build_admissible_sequence(T, default_depth(10));
    const ChopPartition p = chop(T, seq, delta);
    REQUIRE(p.parts.size() == 1);
    CHECK(p.parts[0].stage == 1);
    CHECK(p.parts[0].indices.size() == 10);
}

TEST_CASE("chop splits distant points into singletons under a tiny delta") {
    const VectorSet T(2, {{0.0, 0.0}, {10.0, 0.0}});
    const AdmissibleSequence seq = build_admissible_sequence(T, default_depth(2));
    const ChopPartition p = chop(T, seq, 1e-9);
    REQUIRE(p.parts.size() == 2);
    for (const auto& part : p.parts) CHECK(part.indices.size() == 1);
}

TEST_CASE("chop on the coordinate set satisfies the stage condition and budget") {
    const VectorSet T = gen_coordinate_example(64);
    const AdmissibleSequence seq = build_admissible_sequence(T, default_depth(64));
    const double delta = 0.25;
    const ChopPartition p = chop(T, seq, delta);
    CHECK(partition_covers(p, 64));
    int terminal = 0;
    for (const auto& part : p.parts) terminal = std::max(terminal, part.stage);
    // every placed part satisfies the stage bound or is a fallback singleton
    for (const auto& part : p.parts) {
        const double d = part_diam(T, part.indices);
        if (part.stage <= seq.depth()) {
            CHECK(2.0 * d <= delta * std::exp2(-0.5 * part.stage) + 1e-12);
        } else {
            CHECK(part.indices.size() == 1);
        }
        // representative is a member
        bool member = false;
        for (int idx : part.indices) member |= idx == part.representative;
        CHECK(member);
    }
    std::uint64_t budget = 0;
    for (int h = 1; h <= terminal; ++h) budget += level_budget(h, 64);
    CHECK(p.parts.size() <= budget);
}

TEST_CASE("compute_shifts: singletons are exactly zero, pairs match closed form") {
    const VectorSet T(2, {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 3.0}});
    ChopPartition p;
    p.delta = 1.0;
    p.parts.push_back({{0, 1}, 0, 1});  // {e1, -e1} with representative e1
    p.parts.push_back({{2}, 2, 1});
    const SparseSup sp = compute_shifts(T, p, McConfig::make(100000, 13));
    REQUIRE(sp.shifts.size() == 2);
    CHECK(sp.shifts[1] == 0.0);
    // c = E[max(0, -2 g1)] = 2/sqrt(2 pi)
    CHECK(sp.shifts[0] ==
          doctest::Approx(2.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(0.03));
    CHECK(sp.source_indices == std::vector<int>{0, 2});
}

TEST_CASE("compute_shifts respects the union-bound envelope") {
    // one blob of 12 points with a designated representative
    std::vector<std::vector<double>> pts;
    for (std::uint64_t i = 0; i < 12; ++i) {
        auto v = oracles::random_vector(47, i, 6);
        for (double& x : v) x *= 0.3;
        pts.push_back(v);
    }
    const VectorSet T(6, pts);
    ChopPartition p;
    p.delta = 10.0;
    ChopPartition::PlacedPart part;
    for (int i = 0; i < 12; ++i) part.indices.push_back(i);
    part.representative = 0;
    part.stage = 1;
    p.parts.push_back(part);
    const SparseSup sp = compute_shifts(T, p, McConfig::make(50000, 2));
    const double envelope =
        part_diam(T, p.parts[0].indices) * std::sqrt(2.0 * std::log(12.0));
    CHECK(sp.shifts[0] >= 0.0);
    CHECK(sp.shifts[0] <= envelope + 0.05);
}

TEST_CASE("compute_shifts validates the partition") {
    const VectorSet T(2, {{1.0, 0.0}, {0.0, 1.0}});
    ChopPartition p;
    p.parts.push_back({{0}, 0, 1});
    CHECK_THROWS_AS(compute_shifts(T, p, McConfig::make(1000, 1)),
                    std::invalid_argument);
}

TEST_CASE("sparsify of a singleton returns it with zero shift") {
    const VectorSet T(3, {{2.0, 0.0, 1.0}});
    const SparseSup sp = sparsify(T, 0.2, McConfig::make(20000, 3));
    REQUIRE(sp.support.size() == 1);
    CHECK(sp.shifts[0] == 0.0);
    CHECK(sp.support.points[0] == T.points[0]);
    const Estimate gap = estimate_l1_gap(SupForm(T), sp.form(), 3,
                                         McConfig::make(20000, 4));
    CHECK(gap.mean == 0.0);
}

TEST_CASE("sparsify collapses a tight cluster to one vector") {
    // diameter well below eps * width / 4 after normalization
    std::vector<std::vector<double>> pts;
    for (std::uint64_t i = 0; i < 20; ++i) {
        auto v = oracles::random_vector(53, i, 4);
        for (double& x : v) x *= 1e-4;
        v[0] += 2.0;
        pts.push_back(v);
    }
    const VectorSet T(4, pts);
    const SparseSup sp = sparsify(T, 0.2, McConfig::make(50000, 5));
    CHECK(sp.support.size() == 1);
}

TEST_CASE("sparsify rejects degenerate widths and bad eps") {
    const VectorSet tiny(2, {{1e-9, 0.0}, {0.0, 1e-9}});
    CHECK_THROWS_AS(sparsify(tiny, 0.2, McConfig::make(10000, 6)),
                    std::invalid_argument);
    const VectorSet ok(2, {{1.0, 0.0}, {0.0, 1.0}});
    CHECK_THROWS_AS(sparsify(ok, 0.0, McConfig::make(10000, 6)),
                    std::invalid_argument);
    CHECK_THROWS_AS(sparsify(ok, 0.5, McConfig::make(10000, 6)),
                    std::invalid_argument);
}

TEST_CASE("sparsify on the cluster mix: subset property, shifts, bounds") {
    const VectorSet T = gen_cluster_mix(16, 6, 12, 2e-3, 61);
    const McConfig cfg = McConfig::make(60000, 8);
    const double eps = 0.25;
    const SparseSup sp = sparsify(T, eps, cfg);
    CHECK(sp.support.size() < T.size());

    // subset property: support vectors are bit-identical members of T
    for (std::size_t i = 0; i < sp.support.size(); ++i)
        CHECK(sp.support.points[i] == T.points[sp.source_indices[i]]);

    // shift range (Prop 3.1 with MC slack)
    for (double c : sp.shifts) {
        CHECK(c >= 0.0);
        CHECK(c <= sp.width_used * (1.0 + 1e-6));
    }

    // the realized partition is reproducible from width_used
    const VectorSet scaled = T.scaled(1.0 / sp.width_used);
    const AdmissibleSequence seq =
        build_admissible_sequence(scaled, default_depth(T.size()));
    const ChopPartition part = chop(scaled, seq, eps / 2.0);
    REQUIRE(part.parts.size() == sp.support.size());

    // Lemma bound: measured gap <= delta (1 + sum exp(-2 delta^2/diam^2)) w
    double series = 0.0;
    for (const auto& pp : part.parts) {
        const double d = part_diam(scaled, pp.indices);
        if (pp.indices.size() > 1)
            series += std::exp(-2.0 * part.delta * part.delta / (d * d));
    }
    CHECK(series <= 1.0);  // geometric-series bound over non-singletons
    const Estimate gap =
        estimate_l1_gap(SupForm(T), sp.form(), T.dim, cfg.with_seed(909));
    CHECK(gap.mean <=
          part.delta * (1.0 + series) * sp.width_used + 3.0 * gap.std_err);

    // nonnegative shifts dominate the bare subset supremum pointwise
    const SupForm bare(sp.support);
    const SupForm shifted = sp.form();
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto g = oracles::random_vector(71, i, T.dim);
        CHECK(shifted.eval(g) >= bare.eval(g) - 1e-12);
    }
}

TEST_CASE("accuracy is monotone in eps for a fixed seed") {
    const VectorSet T = gen_cluster_mix(16, 6, 12, 5e-2, 67);
    const McConfig cfg = McConfig::make(60000, 10);
    const SparseSup tight = sparsify(T, 0.1, cfg);
    const SparseSup loose = sparsify(T, 0.4, cfg);
    const Estimate g_tight =
        estimate_l1_gap(SupForm(T), tight.form(), T.dim, cfg.with_seed(311));
    const Estimate g_loose =
        estimate_l1_gap(SupForm(T), loose.form(), T.dim, cfg.with_seed(311));
    CHECK(g_tight.mean <=
          g_loose.mean + 3.0 * (g_tight.std_err + g_loose.std_err) + 1e-12);
}

TEST_CASE("center: zero shifts collapse to padded support") {
    SparseSup sp;
    sp.dim = 2;
    sp.support = VectorSet(2, {{1.0, 0.0}, {0.0, 1.0}});
    sp.shifts = {0.0, 0.0};
    sp.source_indices = {0, 1};
    sp.width_used = 1.0;
    const CenteredResult res = center(sp, 0.2, 16);
    CHECK(res.directions.size() == 2);
    REQUIRE(res.directions.dim == 2 + res.aux_dim);
    for (const auto& v : res.directions.points)
        for (int k = 2; k < res.directions.dim; ++k) CHECK(v[k] == 0.0);
}

TEST_CASE("center: a positive shift becomes 2A mirrored aux vectors") {
    SparseSup sp;
    sp.dim = 1;
    sp.support = VectorSet(1, {{1.0}});
    sp.shifts = {1.0};
    sp.source_indices = {0};
    sp.width_used = 1.0;
    const CenteredResult res = center(sp, 0.01, 8);
    CHECK(res.cap_bound);
    CHECK(res.aux_dim == 8);
    REQUIRE(res.directions.size() == 16);
    // every (s, alpha e_j) has its mirror (s, -alpha e_j)
    for (const auto& v : res.directions.points) {
        std::vector<double> mirror = v;
        for (int k = 1; k < res.directions.dim; ++k) mirror[k] = -mirror[k];
        bool found = false;
        for (const auto& q : res.directions.points) found |= q == mirror;
        CHECK(found);
    }
    // aux magnitude is c / mu_A
    CHECK(std::abs(res.directions.points[0][1]) ==
          doctest::Approx(1.0 / res.mu).epsilon(1e-12));
    CHECK_THROWS_AS(center(sp, 0.01, 1), std::invalid_argument);
}
