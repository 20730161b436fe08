#include "gpsparsify/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "gpsparsify/quadrature.hpp"
#include "gpsparsify/rng.hpp"

namespace gpsparsify {

namespace {

// Substream tags so width, per-part shifts, and callers never share draws.
constexpr std::uint64_t kWidthTag = 0x77696474ull;  // "widt"
constexpr std::uint64_t kShiftTag = 0x73686674ull;  // "shft"

void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

double part_diameter(const VectorSet& T, const std::vector<int>& indices) {
    double d = 0.0;
    for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t j = i + 1; j < indices.size(); ++j)
            d = std::max(d, euclidean_distance(T.points[indices[i]],
                                               T.points[indices[j]]));
    return d;
}

// Shifts in the scale of T, clamped into [0, width]; raw values more than
// 3 standard errors outside trigger a warning.
SparseSup shifts_for_partition(const VectorSet& T, const ChopPartition& partition,
                               const McConfig& cfg, double width) {
    SparseSup sp;
    sp.dim = T.dim;
    sp.width_used = width;
    std::vector<std::vector<double>> support;
    for (std::size_t p = 0; p < partition.parts.size(); ++p) {
        const auto& part = partition.parts[p];
        support.push_back(T.points[part.representative]);
        sp.source_indices.push_back(part.representative);
        if (part.indices.size() == 1) {
            sp.shifts.push_back(0.0);
            continue;
        }
        // c_P = E[sup over t in P of g.(t - s_P)], one substream per part
        std::vector<std::vector<double>> rel;
        rel.reserve(part.indices.size());
        const auto& rep = T.points[part.representative];
        for (int idx : part.indices) {
            std::vector<double> d(T.dim);
            for (int k = 0; k < T.dim; ++k) d[k] = T.points[idx][k] - rep[k];
            rel.push_back(std::move(d));
        }
        const McConfig part_cfg =
            cfg.with_seed(derive_seed(cfg.seed, kShiftTag + p));
        const Estimate c = estimate_width(VectorSet(T.dim, std::move(rel)), part_cfg);
        double value = c.mean;
        if (value < 0.0) value = 0.0;
        if (value > width) {
            if (value > width + 3.0 * c.std_err)
                warn("shift estimate exceeds width by more than 3 standard errors; "
                     "clamping");
            value = width;
        }
        sp.shifts.push_back(value);
    }
    sp.support = VectorSet(T.dim, std::move(support));
    return sp;
}

}  // namespace

ChopPartition chop(const VectorSet& T, const AdmissibleSequence& seq, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("chop: delta must be positive");
    validate_sequence(T, seq);

    ChopPartition out;
    out.delta = delta;
    std::vector<char> covered(T.size(), 0);
    std::size_t n_covered = 0;

    // Stage 1 first offers the whole set: when T itself meets the stage-1
    // bound the partition is a single part rather than the level-1 split.
    if (2.0 * part_diameter(T, seq.levels[0][0].indices) <=
        delta * std::exp2(-0.5)) {
        ChopPartition::PlacedPart placed;
        placed.indices = seq.levels[0][0].indices;
        placed.representative = seq.levels[0][0].center;
        placed.stage = 1;
        out.parts.push_back(std::move(placed));
        return out;
    }

    for (int h = 1; h <= seq.depth() && n_covered < T.size(); ++h) {
        const double limit = delta * std::exp2(-0.5 * h);
        for (const Part& part : seq.levels[h]) {
            if (covered[part.indices.front()]) continue;  // parts refine: all-or-none
            if (2.0 * part_diameter(T, part.indices) > limit) continue;
            ChopPartition::PlacedPart placed;
            placed.indices = part.indices;
            placed.representative = part.center;
            placed.stage = h;
            for (int idx : part.indices) covered[idx] = 1;
            n_covered += part.indices.size();
            out.parts.push_back(std::move(placed));
        }
    }
    // Fallback for sequences that are too shallow: remaining points become
    // singletons one stage past the deepest level.
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (covered[i]) continue;
        ChopPartition::PlacedPart placed;
        placed.indices = {static_cast<int>(i)};
        placed.representative = static_cast<int>(i);
        placed.stage = seq.depth() + 1;
        out.parts.push_back(std::move(placed));
    }
    return out;
}

SparseSup compute_shifts(const VectorSet& T, const ChopPartition& partition,
                         const McConfig& cfg) {
    std::vector<char> seen(T.size(), 0);
    std::size_t total = 0;
    for (const auto& part : partition.parts) {
        for (int idx : part.indices) {
            if (idx < 0 || idx >= static_cast<int>(T.size()) || seen[idx])
                throw std::invalid_argument("compute_shifts: parts must partition T");
            seen[idx] = 1;
        }
        total += part.indices.size();
    }
    if (total != T.size())
        throw std::invalid_argument("compute_shifts: parts must cover T");

    const Estimate w =
        estimate_width(T, cfg.with_seed(derive_seed(cfg.seed, kWidthTag)));
    return shifts_for_partition(T, partition, cfg, std::max(w.mean, 0.0));
}

SparseSup sparsify(const VectorSet& T, double eps, const McConfig& cfg,
                   const SparsifyOptions& opts) {
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("sparsify: eps must lie in (0, 0.5)");

    const Estimate w =
        estimate_width(T, cfg.with_seed(derive_seed(cfg.seed, kWidthTag)));

    if (T.size() == 1) {
        SparseSup sp;
        sp.dim = T.dim;
        sp.support = T;
        sp.shifts = {0.0};
        sp.source_indices = {0};
        sp.width_used = std::max(w.mean, 0.0);
        return sp;
    }
    if (w.mean <= 3.0 * w.std_err)
        throw std::invalid_argument(
            "sparsify: width statistically indistinguishable from zero; "
            "use T itself");

    const VectorSet scaled = T.scaled(1.0 / w.mean);
    const int h_max = opts.h_max >= 0 ? opts.h_max
                                      : default_depth(T.size());
    const AdmissibleSequence seq = build_admissible_sequence(scaled, h_max);
    const ChopPartition partition = chop(scaled, seq, eps / 2.0);

    // Shifts are estimated at unit width and rescaled; support vectors are
    // taken from T directly so the subset property holds bit-for-bit.
    SparseSup norm_sp = shifts_for_partition(scaled, partition, cfg, 1.0);
    SparseSup sp;
    sp.dim = T.dim;
    sp.width_used = w.mean;
    sp.source_indices = norm_sp.source_indices;
    std::vector<std::vector<double>> support;
    for (int idx : sp.source_indices) support.push_back(T.points[idx]);
    sp.support = VectorSet(T.dim, std::move(support));
    sp.shifts.reserve(norm_sp.shifts.size());
    for (double c : norm_sp.shifts) sp.shifts.push_back(c * w.mean);
    return sp;
}

CenteredResult center(const SparseSup& sp, double eps, std::uint64_t a_cap,
                      double kappa) {
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("center: eps must lie in (0, 0.5)");
    if (a_cap < 2) throw std::invalid_argument("center: a_cap must be at least 2");

    CenteredResult out;
    const double exponent = kappa * sp.width_used / eps;
    std::uint64_t a = a_cap;
    if (exponent < std::log(static_cast<double>(a_cap))) {
        a = static_cast<std::uint64_t>(std::ceil(std::exp(exponent)));
        a = std::max<std::uint64_t>(a, 2);
    } else {
        out.cap_bound = true;
        warn("center: auxiliary dimension capped at " + std::to_string(a_cap));
    }
    out.aux_dim = static_cast<int>(a);
    out.mu = expected_max_abs_gaussians(a);

    const int full_dim = sp.dim + out.aux_dim;
    std::vector<std::vector<double>> dirs;
    for (std::size_t i = 0; i < sp.support.size(); ++i) {
        const double c = sp.shifts[i];
        std::vector<double> base(full_dim, 0.0);
        std::copy(sp.support.points[i].begin(), sp.support.points[i].end(),
                  base.begin());
        if (c == 0.0) {
            dirs.push_back(std::move(base));
            continue;
        }
        const double alpha = c / out.mu;
        for (int j = 0; j < out.aux_dim; ++j) {
            std::vector<double> plus = base;
            plus[sp.dim + j] = alpha;
            std::vector<double> minus = base;
            minus[sp.dim + j] = -alpha;
            dirs.push_back(std::move(plus));
            dirs.push_back(std::move(minus));
        }
    }
    out.directions = VectorSet(full_dim, std::move(dirs));
    return out;
}

}  // namespace gpsparsify
