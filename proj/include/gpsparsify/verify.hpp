#pragma once

#include <string>
#include <vector>

#include "gpsparsify/core.hpp"
#include "gpsparsify/mc.hpp"
#include "gpsparsify/sparsify.hpp"

namespace gpsparsify {

/// One statistical validation of a one-sided inequality. The pass flag is
/// a pure function of the other fields: measured <= bound + 3 * std_err.
struct CheckReport {
    std::string name;
    double bound = 0.0;
    double measured = 0.0;
    double std_err = 0.0;
    bool pass = false;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

CheckReport make_report(std::string name, double bound, double measured,
                        double std_err, std::uint64_t n_samples, std::uint64_t seed);

/// Subgaussian tail of the supremum:
/// Pr[|f_T(g) - w| >= rho] <= 2 exp(-rho^2 / (2 max_t ||t||^2)).
CheckReport check_tail(const VectorSet& T, double rho, const McConfig& cfg);

/// Anti-concentration around zero for symmetric T:
/// Pr[|f_T(g)| <= eps * w] <= 10 eps.
CheckReport check_anticoncentration(const VectorSet& T, double eps,
                                    const McConfig& cfg);

/// Anti-concentration at any level theta for unit-norm T:
/// Pr[|f_T(g) - theta| <= eps] <= 4 eps (1 + w).
CheckReport check_cck(const VectorSet& T, double theta, double eps,
                      const McConfig& cfg);

/// Relative L1 accuracy of a sparsifier: E|f_T - sp| / w <= eps.
CheckReport check_sparsifier(const VectorSet& T, const SparseSup& sp, double eps,
                             const McConfig& cfg);

/// One side of the chaining sandwich: w <= C * gamma2_upper(T, default seq).
CheckReport check_gamma2_sandwich(const VectorSet& T, double C, const McConfig& cfg);

struct SuiteOptions {
    std::string filter = "all";  // all | tail | anticoncentration | cck |
                                 // sparsifier | gamma2
    double c_sandwich = 30.0;
    double eps_anticoncentration = 0.05;
    double eps_cck = 0.05;
    double eps_sparsifier = 0.2;
};

/// Runs every applicable check over the built-in benchmark sets
/// (coordinate sets, +/- e1, a random unit cloud and its symmetrization,
/// and the two-scale cluster mix). Report names are check/set.
std::vector<CheckReport> run_check_suite(const McConfig& cfg,
                                         const SuiteOptions& opts = {});

}  // namespace gpsparsify
