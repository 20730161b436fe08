#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gpsparsify {

/// A finite index set T in R^n. The canonical process on T is
/// X_t = t.g for g ~ N(0, I_n); its supremum is eval_sup(T, g).
/// Point order is stable: indices are meaningful for tie-breaking.
struct VectorSet {
    int dim = 0;
    std::vector<std::vector<double>> points;
    std::vector<std::string> labels;  // optional; empty or one per point

    VectorSet() = default;
    VectorSet(int dim, std::vector<std::vector<double>> pts,
              std::vector<std::string> labels = {});

    std::size_t size() const { return points.size(); }
    const std::vector<double>& operator[](std::size_t i) const { return points[i]; }

    /// Copy of the set with every entry scaled by alpha.
    VectorSet scaled(double alpha) const;
};

/// Monte Carlo estimate: mean with standard error, plus the sample count
/// and seed needed to reproduce it exactly.
struct Estimate {
    double mean = 0.0;
    double std_err = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

/// Closed halfspace {x : normal.x <= offset} with a unit normal.
/// Inputs are re-normalized on ingest and the offset rescaled to match.
struct Halfspace {
    std::vector<double> normal;
    double offset = 0.0;

    Halfspace() = default;
    Halfspace(std::vector<double> raw_normal, double raw_offset);

    int dim() const { return static_cast<int>(normal.size()); }
};

/// Intersection of finitely many halfspaces, or one of the two sentinels
/// EMPTY and FULL.
struct Polytope {
    enum class Kind { List, Empty, Full };

    int dim = 0;
    Kind kind = Kind::List;
    std::vector<Halfspace> halfspaces;

    static Polytope empty(int dim);
    static Polytope full(int dim);
    static Polytope intersection(int dim, std::vector<Halfspace> hs);

    std::size_t size() const { return halfspaces.size(); }
    bool contains(std::span<const double> x) const;
};

/// max over t in T of t.x. Exact (no sampling).
double eval_sup(const VectorSet& T, std::span<const double> x);

/// Exact Euclidean diameter, pairwise max. O(|P|^2).
double diameter(const VectorSet& P);

/// T united with -T, duplicates within 1e-12 removed. Original order is
/// kept; mirrored points are appended in order of their sources.
VectorSet symmetrize(const VectorSet& T);

double dot(std::span<const double> a, std::span<const double> b);
double euclidean_norm(std::span<const double> v);
double euclidean_distance(std::span<const double> a, std::span<const double> b);

}  // namespace gpsparsify
