#pragma once

#include <cstdint>
#include <functional>

namespace gpsparsify {

double normal_pdf(double x);
double normal_cdf(double x);

/// Adaptive Simpson integration of f on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol);

/// E[max of n iid N(0,1)] by deterministic quadrature:
///   int_0^inf (1 - Phi(x)^n) dx - int_{-inf}^0 Phi(x)^n dx.
/// Absolute accuracy ~1e-6 or better for n up to 2^40.
double expected_max_gaussians(std::uint64_t n);

/// E[max of n iid |N(0,1)|] = int_0^inf (1 - (2 Phi(x) - 1)^n) dx.
double expected_max_abs_gaussians(std::uint64_t n);

}  // namespace gpsparsify
