#pragma once

#include <cstdint>

#include "gpsparsify/core.hpp"

namespace gpsparsify {

/// E[max of n iid N(0,1)] by deterministic quadrature, accurate to 1e-6.
double a_n(std::uint64_t n);

/// Coordinate benchmark: T = {e_i / a_n(n)} in R^n, Gaussian width 1.
VectorSet gen_coordinate_example(int n);

/// The n halfspaces x_0 + x_i / a(n) <= sqrt(1 + 1/a(n)^2) over R^(n+1),
/// unit normals with every offset exactly 1 (geometric width 1).
Polytope gen_shifted_polytope(int n);

/// m iid uniform unit vectors in R^n, deterministic per seed.
VectorSet gen_random_unit_cloud(int n, int m, std::uint64_t seed);

/// Two-scale benchmark: `clusters` unit-vector centers, each surrounded by
/// per_cluster points at distance ~spread. Inter-cluster distances dwarf
/// the intra-cluster diameters, so sparsification keeps one point per
/// cluster at moderate eps.
VectorSet gen_cluster_mix(int dim, int clusters, int per_cluster, double spread,
                          std::uint64_t seed);

/// Regular m-gon inscribed in the unit circle (vertex at angle 0) as an
/// intersection of m halfspaces at distance cos(pi/m).
Polytope gen_regular_polygon(int m);

}  // namespace gpsparsify
