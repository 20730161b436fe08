#include "gpsparsify/quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace gpsparsify {

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa,
                     double b, double fb, double m, double fm, double whole,
                     double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = simpson(a, fa, b, fb, fm);
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

double expected_max_gaussians(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("expected_max_gaussians: n >= 1 required");
    const double nn = static_cast<double>(n);
    // Beyond |x| = 10 both integrands are < n * 8e-24; negligible at this scale.
    const double upper = adaptive_simpson(
        [nn](double x) { return 1.0 - std::pow(normal_cdf(x), nn); }, 0.0, 10.0, 1e-9);
    const double lower = adaptive_simpson(
        [nn](double x) { return std::pow(normal_cdf(x), nn); }, -10.0, 0.0, 1e-9);
    return upper - lower;
}

double expected_max_abs_gaussians(std::uint64_t n) {
    if (n < 1)
        throw std::invalid_argument("expected_max_abs_gaussians: n >= 1 required");
    const double nn = static_cast<double>(n);
    return adaptive_simpson(
        [nn](double x) {
            const double c = 2.0 * normal_cdf(x) - 1.0;
            return 1.0 - std::pow(c, nn);
        },
        0.0, 12.0, 1e-9);
}

}  // namespace gpsparsify
