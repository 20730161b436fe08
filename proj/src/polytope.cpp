#include "gpsparsify/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gpsparsify/rng.hpp"
#include "gpsparsify/sparsify.hpp"

namespace gpsparsify {

namespace {

constexpr std::uint64_t kVolTag = 0x766f6c00ull;   // "vol"
constexpr std::uint64_t kUniTag = 0x756e6900ull;   // "uni"
constexpr std::uint64_t kLiftTag = 0x6c696674ull;  // "lift"
constexpr std::uint64_t kCandTag = 0x63616e64ull;  // "cand"

void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

Estimate estimate_volume(const Polytope& K, const McConfig& cfg) {
    // vol(K) = dist_G(K, empty set)
    return estimate_gaussian_distance(K, Polytope::empty(K.dim), cfg);
}

Polytope identity_polytope(const VectorSet& T) {
    std::vector<Halfspace> hs;
    hs.reserve(T.size());
    for (const auto& t : T.points) hs.emplace_back(t, 1.0);
    return Polytope::intersection(T.dim, std::move(hs));
}

}  // namespace

Polytope sparsify_uniform(const VectorSet& T, double r, double eps,
                          const McConfig& cfg) {
    if (!(eps > 0.0 && eps <= 0.5))
        throw std::invalid_argument("sparsify_uniform: eps must lie in (0, 0.5]");
    if (!(r >= 1.0)) throw std::invalid_argument("sparsify_uniform: r >= 1 required");
    for (const auto& t : T.points)
        if (std::abs(euclidean_norm(t) - 1.0 / r) > 1e-6)
            throw std::invalid_argument(
                "sparsify_uniform: all vectors must have norm 1/r "
                "(use sparsify_polytope for mixed widths)");

    const Polytope K = identity_polytope(T);
    const Estimate vol =
        estimate_volume(K, cfg.with_seed(derive_seed(cfg.seed, kVolTag)));
    if (vol.mean + 3.0 * vol.std_err <= eps) return Polytope::empty(T.dim);
    if (vol.mean - 3.0 * vol.std_err >= 1.0 - eps) return Polytope::full(T.dim);

    const double eta2 = eps / (8.0 * r * (2.0 * r + std::sqrt(2.0 * std::log(2.0 / eps))));
    const double eta1 = eta2 * eta2 / 4.0;

    const Estimate w =
        estimate_width(T, cfg.with_seed(derive_seed(cfg.seed, kUniTag)));
    SparseSup sp;
    if (T.size() == 1 || w.mean <= 3.0 * w.std_err) {
        // Degenerate width: the supremum already concentrates, keep T as is.
        sp.dim = T.dim;
        sp.support = T;
        sp.shifts.assign(T.size(), 0.0);
        sp.width_used = std::max(w.mean, 0.0);
    } else {
        const double eps_rel = std::min(eta1 / w.mean, 0.499);
        sp = sparsify(T, eps_rel, cfg);
    }

    std::vector<Halfspace> hs;
    hs.reserve(sp.support.size());
    for (std::size_t i = 0; i < sp.support.size(); ++i)
        hs.emplace_back(sp.support.points[i], 1.0 - sp.shifts[i]);
    return Polytope::intersection(T.dim, std::move(hs));
}

LiftedPolytope lift(const Polytope& P, double r, double eps, const LiftConfig& lc) {
    if (P.kind != Polytope::Kind::List || P.halfspaces.empty())
        throw std::invalid_argument("lift: a nonempty halfspace list is required");
    if (!(r >= 1.0)) throw std::invalid_argument("lift: r >= 1 required");
    if (lc.q < 1 || lc.m_cap < 1)
        throw std::invalid_argument("lift: Q and m_cap must be positive");
    const std::size_t n_half = P.size();
    const double n_halfd = static_cast<double>(n_half);

    LiftedPolytope out;
    out.base_dim = P.dim;
    out.delta.reserve(n_half);
    double delta_min = std::numeric_limits<double>::infinity();
    double delta_max = 0.0;
    for (const auto& h : P.halfspaces) {
        if (h.offset > r + 1e-12)
            throw std::invalid_argument("lift: halfspace offset exceeds r");
        const double d = 2.0 * r - h.offset;
        out.delta.push_back(d);
        delta_min = std::min(delta_min, d);
        delta_max = std::max(delta_max, d);
    }

    // Proof constraints on Q, then the m_cap budget: M_t = exp((delta_t Q)^2)
    // must stay within m_cap for the widest slack.
    const double q1 = std::ceil(std::pow(3.0, 0.25) * std::sqrt(100.0 * lc.tau) *
                                std::pow(n_halfd / eps, 0.75) / std::sqrt(delta_min));
    const double q2 = std::ceil((20.0 / delta_min) *
                                std::sqrt(n_halfd * delta_min / eps));
    out.q_required = std::max({q1, q2, static_cast<double>(lc.q)});
    const double q_budget =
        std::floor(std::sqrt(std::log(static_cast<double>(lc.m_cap))) / delta_max);
    out.q_used = static_cast<int>(std::max(1.0, std::min(out.q_required, q_budget)));
    out.q_capped = static_cast<double>(out.q_used) < out.q_required;
    if (out.q_capped)
        warn("lift: Q reduced from " + std::to_string(out.q_required) + " to " +
             std::to_string(out.q_used) + " by the m_cap budget");

    const double q = static_cast<double>(out.q_used);
    std::uint64_t total = 0;
    out.block_size.reserve(n_half);
    const double log_cap = std::log(static_cast<double>(lc.m_cap));
    for (double d : out.delta) {
        const double arg = (d * q) * (d * q);
        std::uint64_t m = lc.m_cap;
        if (arg < log_cap)
            m = std::min<std::uint64_t>(
                lc.m_cap, static_cast<std::uint64_t>(std::ceil(std::exp(arg))));
        m = std::max<std::uint64_t>(m, 1);
        out.block_size.push_back(m);
        total += m;
    }
    out.aux_dim = static_cast<int>(total);

    const double nu = std::sqrt(1.0 + 1.0 / (2.0 * q * q));
    out.width = 2.0 * r / nu;
    const int full_dim = out.base_dim + out.aux_dim;
    const double aux_coef = 1.0 / (std::numbers::sqrt2 * q * nu);

    std::vector<Halfspace> lifted;
    lifted.reserve(total);
    std::size_t aux_start = 0;
    for (std::size_t t = 0; t < n_half; ++t) {
        const auto& base = P.halfspaces[t].normal;
        for (std::uint64_t i = 0; i < out.block_size[t]; ++i) {
            Halfspace h;
            h.normal.assign(full_dim, 0.0);
            for (int k = 0; k < out.base_dim; ++k) h.normal[k] = base[k] / nu;
            h.normal[out.base_dim + aux_start + i] = aux_coef;
            h.offset = out.width;
            lifted.push_back(std::move(h));
        }
        aux_start += out.block_size[t];
    }
    out.halfspaces = Polytope::intersection(full_dim, std::move(lifted));
    return out;
}

Polytope choose_cross_section(const Polytope& lifted, const Polytope& K,
                              const LiftConfig& lc, const McConfig& cfg) {
    if (lifted.kind != Polytope::Kind::List)
        return lifted.kind == Polytope::Kind::Empty ? Polytope::empty(K.dim)
                                                    : Polytope::full(K.dim);
    const int base_dim = K.dim;
    const int aux_dim = lifted.dim - base_dim;
    if (aux_dim < 0)
        throw std::invalid_argument("choose_cross_section: dimension mismatch");
    if (lc.y_candidates < 1)
        throw std::invalid_argument("choose_cross_section: y_candidates must be >= 1");

    Polytope best = Polytope::empty(base_dim);
    double best_dist = std::numeric_limits<double>::infinity();
    for (int c = 0; c < lc.y_candidates; ++c) {
        std::vector<double> y(aux_dim);
        fill_gaussian(derive_seed(cfg.seed, kCandTag + 2 * c), y);

        bool infeasible = false;
        std::vector<Halfspace> hs;
        for (const auto& h : lifted.halfspaces) {
            std::vector<double> base(h.normal.begin(), h.normal.begin() + base_dim);
            double aux_term = 0.0;
            for (int k = 0; k < aux_dim; ++k)
                aux_term += h.normal[base_dim + k] * y[k];
            const double rhs = h.offset - aux_term;
            if (euclidean_norm(base) <= 1e-12) {
                if (rhs < 0.0) {
                    infeasible = true;
                    break;
                }
                continue;  // constraint is vacuous at this cross-section
            }
            hs.emplace_back(std::move(base), rhs);
        }
        Polytope cand = infeasible ? Polytope::empty(base_dim)
                                   : Polytope::intersection(base_dim, std::move(hs));
        const Estimate d = estimate_gaussian_distance(
            K, cand, cfg.with_seed(derive_seed(cfg.seed, kCandTag + 2 * c + 1)));
        if (d.mean < best_dist) {
            best_dist = d.mean;
            best = std::move(cand);
        }
    }
    return best;
}

Polytope sparsify_polytope(const Polytope& P, double eps, const McConfig& cfg,
                           const LiftConfig& lc) {
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("sparsify_polytope: eps must lie in (0, 0.5)");
    if (P.kind == Polytope::Kind::Empty) return Polytope::empty(P.dim);
    if (P.kind == Polytope::Kind::Full || P.halfspaces.empty())
        return Polytope::full(P.dim);

    const double prune_bound = -std::sqrt(2.0 * std::log(2.0 / eps));
    double off_min = std::numeric_limits<double>::infinity();
    double off_max = -std::numeric_limits<double>::infinity();
    for (const auto& h : P.halfspaces) {
        off_min = std::min(off_min, h.offset);
        off_max = std::max(off_max, h.offset);
    }
    if (off_min < prune_bound) return Polytope::empty(P.dim);

    if (P.size() == 1) return P;

    const double r = std::max(1.0, off_max);
    if (off_max - off_min <= 1e-12 && off_min >= 1.0) {
        // Uniform width: rescale normals onto the sphere of radius 1/r.
        std::vector<std::vector<double>> pts;
        pts.reserve(P.size());
        for (const auto& h : P.halfspaces) {
            std::vector<double> t = h.normal;
            for (double& x : t) x /= off_min;
            pts.push_back(std::move(t));
        }
        return sparsify_uniform(VectorSet(P.dim, std::move(pts)), off_min, eps, cfg);
    }

    const LiftedPolytope lifted = lift(P, r, eps, lc);
    // The lifted family has common offset `width`, so its index set lives
    // on the sphere of radius 1/width.
    std::vector<std::vector<double>> pts;
    pts.reserve(lifted.halfspaces.size());
    for (const auto& h : lifted.halfspaces.halfspaces) {
        std::vector<double> t = h.normal;
        for (double& x : t) x /= lifted.width;
        pts.push_back(std::move(t));
    }
    const Polytope sparse_lifted = sparsify_uniform(
        VectorSet(lifted.halfspaces.dim, std::move(pts)), lifted.width,
        188.0 * eps / 300.0, cfg.with_seed(derive_seed(cfg.seed, kLiftTag)));
    return choose_cross_section(sparse_lifted, P, lc,
                                cfg.with_seed(derive_seed(cfg.seed, kLiftTag + 1)));
}

}  // namespace gpsparsify
