#pragma once

#include <cstdint>
#include <vector>

#include "gpsparsify/core.hpp"
#include "gpsparsify/mc.hpp"

namespace gpsparsify {

struct LiftConfig {
    int q = 1;                     // lower bound on Q; constraints may raise it
    std::uint64_t m_cap = 4096;    // per-halfspace cap on the block size M_t
    int y_candidates = 16;         // cross-section search width
    double tau = 1.0;              // variance constant in the Q formula
};

/// Family of lifted halfspaces over R^(base_dim + aux_dim). Halfspace t
/// with slack delta_t = 2r - r_t receives a block of M_t auxiliary
/// coordinates; block i contributes {(x,y) : t.x + y_i/(sqrt(2) Q) <= 2r},
/// stored with unit normals. Aux indices are disjoint across blocks.
struct LiftedPolytope {
    int base_dim = 0;
    int aux_dim = 0;
    Polytope halfspaces;

    // bookkeeping, one entry per input halfspace
    std::vector<double> delta;
    std::vector<std::uint64_t> block_size;

    int q_used = 1;
    double q_required = 1.0;  // max of the two proof constraints
    bool q_capped = false;    // true when m_cap forced q_used below q_required
    double width = 0.0;       // common offset 2r / sqrt(1 + 1/(2 Q^2))
};

/// Sparsifies K = intersection over t in T of {x : t.x <= 1} where T lies
/// on the sphere of radius 1/r, r >= 1. Volume shortcuts return EMPTY or
/// FULL (3 std-err guard band toward the safe side); otherwise the
/// supremum is sparsified at the absolute additive target
/// eta1 = eta2^2/4, eta2 = eps / (8r(2r + sqrt(2 ln(2/eps)))), and the
/// sublevel set {J <= 1} is returned as unit-normal halfspaces.
Polytope sparsify_uniform(const VectorSet& T, double r, double eps,
                          const McConfig& cfg);

/// Lifts a polytope with offsets r_t <= r into the blocked family above.
/// Q is the largest integer satisfying the proof constraints that keeps
/// max_t M_t <= m_cap; a warning reports when the cap binds.
LiftedPolytope lift(const Polytope& halfspaces, double r, double eps,
                    const LiftConfig& lc);

/// Substitutes y_candidates Gaussian draws for the auxiliary coordinates
/// of lifted (a polytope over R^(K.dim + M')) and returns the candidate
/// cross-section with the smallest estimated Gaussian distance to K.
Polytope choose_cross_section(const Polytope& lifted, const Polytope& K,
                              const LiftConfig& lc, const McConfig& cfg);

/// Full pipeline: prune deeply negative offsets (EMPTY), delegate equal
/// offsets >= 1 to the uniform path, otherwise lift, sparsify the lifted
/// family with budget 188 eps/300, and pick a cross-section.
Polytope sparsify_polytope(const Polytope& halfspaces, double eps,
                           const McConfig& cfg, const LiftConfig& lc = {});

}  // namespace gpsparsify
