#pragma once

#include <cstdint>

#include "gpsparsify/core.hpp"
#include "gpsparsify/mc.hpp"

namespace gpsparsify {

/// Norm given by a finite symmetric direction set, possibly living in an
/// ambient space padded with auxiliary coordinates:
/// psi(x) = max over s in directions of s.x.
struct JuntaNorm {
    int dim = 0;          // dimension of the original space
    VectorSet directions;  // in R^(dim + ambient_pad), symmetric
    int ambient_pad = 0;
    Estimate additive_gap;  // measured E|f_T - psi| at unit width

    bool is_symmetric(double tol = 1e-12) const;
};

/// psi(x) for x of length dim (zero-padded) or dim + ambient_pad.
double eval_norm(const JuntaNorm& psi, std::span<const double> x);

/// Junta approximation of the norm whose dual-ball cloud is T_dual:
/// normalize to unit width, sparsify at additive target eps^3/160 per
/// side, mirror the result into a symmetric shifted form, and replace
/// shifts by auxiliary max-of-Gaussians coordinates. When every shift is
/// zero the form is already centered and no padding is added.
JuntaNorm sparsify_norm(const VectorSet& T_dual, double eps, const McConfig& cfg,
                        std::uint64_t a_cap);

}  // namespace gpsparsify
