#pragma once

#include <cstdint>
#include <vector>

#include "gpsparsify/chaining.hpp"
#include "gpsparsify/core.hpp"
#include "gpsparsify/mc.hpp"

namespace gpsparsify {

/// Sparsified supremum: a subset S of the source set with one
/// nonnegative shift per vector. Value at x is max_s (s.x + shifts[s]).
/// Every shift lies in [0, width_used * (1 + 1e-6)].
struct SparseSup {
    int dim = 0;
    VectorSet support;
    std::vector<double> shifts;
    std::vector<int> source_indices;  // positions in the source set
    double width_used = 0.0;

    SupForm form() const { return SupForm(support, shifts); }
};

/// Result of the chop procedure: a partition of [|T|] harvested from an
/// admissible sequence stage by stage. Each part either satisfies
/// 2*diam(P) <= delta * 2^(-h/2) at its stage h, or is a singleton
/// placed at the fallback stage depth+1.
struct ChopPartition {
    struct PlacedPart {
        std::vector<int> indices;
        int representative = -1;
        int stage = 0;
    };
    std::vector<PlacedPart> parts;
    double delta = 0.0;
};

/// Harvests parts from seq in stages h = 1, 2, ...: every not-yet-covered
/// part P at level h with 2*diam(P) <= delta * 2^(-h/2) is placed with
/// its k-center center as representative. Uncovered points left after the
/// deepest level become singleton fallback parts.
ChopPartition chop(const VectorSet& T, const AdmissibleSequence& seq, double delta);

/// Estimates the shift c_P = E[sup over t in P of g.(t - s_P)] per part.
/// Singleton parts get exactly zero; negative estimates clamp to zero.
/// Shift estimation uses a per-part substream derived from cfg.seed;
/// width_used is estimated on its own substream.
SparseSup compute_shifts(const VectorSet& T, const ChopPartition& partition,
                         const McConfig& cfg);

struct SparsifyOptions {
    int h_max = -1;  // -1: default depth for |T|
};

/// Full pipeline: estimate w(T), rescale to unit width, build the
/// admissible sequence, chop with delta = eps/2, estimate shifts, and
/// return the result in the original scale. Support vectors are taken
/// from T itself (bit-identical members). Throws when the width is
/// statistically indistinguishable from zero.
SparseSup sparsify(const VectorSet& T, double eps, const McConfig& cfg,
                   const SparsifyOptions& opts = {});

struct CenteredResult {
    VectorSet directions;    // in R^(dim + aux_dim), all shifts zero
    int aux_dim = 0;         // the A that was used
    double mu = 0.0;         // E[max of A iid |N(0,1)|], by quadrature
    bool cap_bound = false;  // true when a_cap limited A
};

/// Centering via auxiliary coordinates: each vector s with shift c > 0
/// becomes the 2A vectors (s, +/- c e_j / mu_A); zero-shift vectors are
/// kept once, zero-padded. A = min(a_cap, ceil(exp(kappa * width / eps))),
/// with a warning when the cap binds.
CenteredResult center(const SparseSup& sp, double eps, std::uint64_t a_cap,
                      double kappa = 1.0);

}  // namespace gpsparsify
