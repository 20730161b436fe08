#pragma once

// Independent reference computations used by the tests. Everything here is
// deterministic quadrature or closed form and shares no code with the
// Monte Carlo engine it is checking.

#include <cmath>
#include <vector>

#include "gpsparsify/core.hpp"
#include "gpsparsify/quadrature.hpp"
#include "gpsparsify/rng.hpp"

namespace oracles {

inline double phi_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Gaussian volume of a 2-D polytope containing the origin, by polar
// integration. Sector-wise so facet kinks never alias the quadrature.
inline double polar_volume_2d(const gpsparsify::Polytope& P, int sectors = 512) {
    const double pi = std::acos(-1.0);
    auto radius = [&](double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        double r = 1e300;
        for (const auto& h : P.halfspaces) {
            const double denom = h.normal[0] * c + h.normal[1] * s;
            if (denom > 1e-15) r = std::min(r, h.offset / denom);
        }
        return r;
    };
    auto mass = [&](double theta) {
        const double r = radius(theta);
        return r > 1e100 ? 1.0 : 1.0 - std::exp(-0.5 * r * r);
    };
    double total = 0.0;
    for (int k = 0; k < sectors; ++k) {
        const double a = 2.0 * pi * k / sectors;
        const double b = 2.0 * pi * (k + 1) / sectors;
        total += gpsparsify::adaptive_simpson(mass, a, b, 1e-12);
    }
    return total / (2.0 * pi);
}

// dist_G for 2-D polytopes: vol(A) + vol(B) - 2 vol(A intersect B).
inline double polar_distance_2d(const gpsparsify::Polytope& A,
                                const gpsparsify::Polytope& B) {
    std::vector<gpsparsify::Halfspace> both = A.halfspaces;
    both.insert(both.end(), B.halfspaces.begin(), B.halfspaces.end());
    const gpsparsify::Polytope inter =
        gpsparsify::Polytope::intersection(2, std::move(both));
    return polar_volume_2d(A) + polar_volume_2d(B) - 2.0 * polar_volume_2d(inter);
}

// Simple deterministic pseudo-random vectors for property tests.
inline std::vector<double> random_vector(std::uint64_t seed, std::uint64_t index,
                                         int dim) {
    std::vector<double> v(dim);
    gpsparsify::fill_gaussian(gpsparsify::derive_seed(seed, index), v);
    return v;
}

}  // namespace oracles
