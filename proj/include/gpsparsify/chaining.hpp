#pragma once

#include <cstdint>
#include <vector>

#include "gpsparsify/core.hpp"

namespace gpsparsify {

/// One part of a partition: member indices into T plus a center chosen
/// from the members by farthest-first traversal.
struct Part {
    std::vector<int> indices;
    int center = -1;
};

using Partition = std::vector<Part>;

/// Hierarchy of refining partitions of T. Level 0 is the whole set;
/// level h holds at most min(2^(2^h), |T|) parts; level h+1 refines
/// level h. Once a level is all singletons, deeper levels repeat it.
struct AdmissibleSequence {
    std::vector<Partition> levels;  // levels[h], h = 0..depth
    int depth() const { return static_cast<int>(levels.size()) - 1; }
};

/// Part-count budget at level h: min(2^(2^h), n), saturating.
std::uint64_t level_budget(int h, std::uint64_t n);

/// Default depth: smallest h with 2^(2^h) >= |T|, plus one. At that
/// depth every part is a singleton.
int default_depth(std::size_t n);

/// Builds an admissible sequence by recursive greedy k-center: the level
/// budget is split among the parent parts proportionally to cardinality
/// (largest-remainder rounding, each parent gets at least one child) and
/// child centers are picked by farthest-first traversal inside each
/// parent, seeded at the lowest index; points go to the nearest center,
/// ties to the lowest center index. Deterministic given point order.
AdmissibleSequence build_admissible_sequence(const VectorSet& T, int h_max);

/// Throws unless seq is a valid admissible sequence for T.
void validate_sequence(const VectorSet& T, const AdmissibleSequence& seq);

/// Chaining functional upper bound for the given sequence:
/// max over t of sum_h 2^(h/2) * diam(part of t at level h), truncated
/// at seq.depth().
double gamma2_upper(const VectorSet& T, const AdmissibleSequence& seq);

}  // namespace gpsparsify
