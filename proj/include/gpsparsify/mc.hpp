#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "gpsparsify/core.hpp"

namespace gpsparsify {

/// Sampling configuration for all Monte Carlo estimators.
///
/// Draws are keyed per sample index, so a given (seed, n_samples) pair
/// yields bit-identical estimates regardless of thread count and of batch
/// partitioning; batch_size only bounds scheduling granularity.
struct McConfig {
    std::uint64_t n_samples = 100000;
    std::uint64_t seed = 0;
    std::uint64_t batch_size = 4096;
    bool antithetic = false;  // pair (g, -g); changes draws, off by default

    static McConfig make(std::uint64_t n_samples, std::uint64_t seed);
    McConfig with_seed(std::uint64_t s) const;
    void validate() const;
};

/// Finite supremum of affine forms: x -> max_i (points[i] . x + shifts[i]).
/// Empty shifts mean all zero. Evaluating on a longer vector uses the
/// leading dim() coordinates (zero-padding of the form's directions).
struct SupForm {
    VectorSet points;
    std::vector<double> shifts;

    explicit SupForm(VectorSet pts, std::vector<double> sh = {});

    int dim() const { return points.dim; }
    double eval(std::span<const double> x) const;
};

/// Gaussian width: mean of eval_sup(T, g) over g ~ N(0, I_dim).
Estimate estimate_width(const VectorSet& T, const McConfig& cfg);

/// E |F(g) - G(g)| over g ~ N(0, I_dim). dim must cover both forms.
/// Structurally identical forms short-circuit to an exact zero.
Estimate estimate_l1_gap(const SupForm& F, const SupForm& G, int dim,
                         const McConfig& cfg);

/// Gaussian measure of the symmetric difference of K and L.
Estimate estimate_gaussian_distance(const Polytope& K, const Polytope& L,
                                    const McConfig& cfg);

/// Probability of a pure predicate over g ~ N(0, I_dim).
Estimate estimate_event_prob(const std::function<bool(std::span<const double>)>& pred,
                             int dim, const McConfig& cfg);

/// Probability of a predicate on the value F(g); same engine as
/// estimate_event_prob but with the batched form evaluator.
Estimate estimate_form_event(const SupForm& F, const std::function<bool(double)>& pred,
                             int dim, const McConfig& cfg);

}  // namespace gpsparsify
