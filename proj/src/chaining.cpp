#include "gpsparsify/chaining.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gpsparsify {

namespace {

/// Farthest-first traversal: picks k center indices from part.indices.
/// First center is the lowest index; each next center maximizes the
/// distance to the chosen set, ties broken by lowest index.
std::vector<int> farthest_first(const VectorSet& T, const std::vector<int>& members,
                                int k) {
    std::vector<int> centers;
    centers.reserve(k);
    centers.push_back(members.front());
    std::vector<double> dist(members.size(), std::numeric_limits<double>::infinity());
    while (static_cast<int>(centers.size()) < k) {
        const auto& c = T.points[centers.back()];
        int best = -1;
        double best_d = -1.0;
        for (std::size_t i = 0; i < members.size(); ++i) {
            dist[i] = std::min(dist[i], euclidean_distance(T.points[members[i]], c));
            if (dist[i] > best_d) {
                best_d = dist[i];
                best = static_cast<int>(i);
            }
        }
        centers.push_back(members[best]);
    }
    return centers;
}

/// Splits a part into k children around farthest-first centers.
std::vector<Part> split_part(const VectorSet& T, const Part& parent, int k) {
    k = std::min<int>(k, static_cast<int>(parent.indices.size()));
    if (k <= 1) {
        Part copy = parent;
        copy.center = parent.indices.front();  // farthest-first with k = 1
        return {copy};
    }
    const std::vector<int> centers = farthest_first(T, parent.indices, k);
    std::vector<Part> children(k);
    for (int c = 0; c < k; ++c) children[c].center = centers[c];
    for (int idx : parent.indices) {
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            const double d = euclidean_distance(T.points[idx], T.points[centers[c]]);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        children[best].indices.push_back(idx);
    }
    std::erase_if(children, [](const Part& p) { return p.indices.empty(); });
    return children;
}

/// Largest-remainder allocation of `budget` children over parents, at
/// least one and at most the parent's cardinality each.
std::vector<int> allocate_children(const std::vector<std::size_t>& sizes,
                                   std::uint64_t budget, std::size_t total) {
    const std::size_t k = sizes.size();
    if (budget < k)
        throw std::logic_error("allocate_children: budget below parent count");
    std::vector<int> give(k, 1);
    std::uint64_t avail = budget - k;
    std::vector<std::pair<double, std::size_t>> frac;
    frac.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double quota =
            static_cast<double>(budget) * static_cast<double>(sizes[i]) /
            static_cast<double>(total);
        const double extra = std::max(0.0, quota - 1.0);
        int base = static_cast<int>(std::floor(extra));
        base = std::min<int>(base, static_cast<int>(sizes[i]) - 1);
        base = std::min<int>(base, static_cast<int>(std::min<std::uint64_t>(
                                       avail, std::numeric_limits<int>::max())));
        give[i] += base;
        avail -= base;
        frac.emplace_back(extra - std::floor(extra), i);
    }
    std::sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (const auto& [f, i] : frac) {
        if (avail == 0) break;
        if (give[i] < static_cast<int>(sizes[i])) {
            ++give[i];
            --avail;
        }
    }
    return give;
}

}  // namespace

std::uint64_t level_budget(int h, std::uint64_t n) {
    if (h >= 6) return n;  // 2^(2^6) already exceeds any desk-scale |T|
    const std::uint64_t budget = 1ull << (1ull << h);
    return std::min(budget, n);
}

int default_depth(std::size_t n) {
    int h = 0;
    while (h < 6 && (1ull << (1ull << h)) < n) ++h;
    return h + 1;
}

AdmissibleSequence build_admissible_sequence(const VectorSet& T, int h_max) {
    if (h_max < 0)
        throw std::invalid_argument("build_admissible_sequence: h_max must be >= 0");
    const std::size_t n = T.size();
    AdmissibleSequence seq;
    Part root;
    root.indices.resize(n);
    std::iota(root.indices.begin(), root.indices.end(), 0);
    root.center = 0;
    seq.levels.push_back({root});

    for (int h = 1; h <= h_max; ++h) {
        const Partition& prev = seq.levels.back();
        const std::uint64_t budget = level_budget(h, n);
        std::vector<std::size_t> sizes;
        sizes.reserve(prev.size());
        for (const auto& p : prev) sizes.push_back(p.indices.size());
        const std::vector<int> give = allocate_children(sizes, budget, n);
        Partition next;
        for (std::size_t i = 0; i < prev.size(); ++i) {
            auto children = split_part(T, prev[i], give[i]);
            for (auto& c : children) next.push_back(std::move(c));
        }
        seq.levels.push_back(std::move(next));
    }
    return seq;
}

void validate_sequence(const VectorSet& T, const AdmissibleSequence& seq) {
    const std::size_t n = T.size();
    if (seq.levels.empty())
        throw std::invalid_argument("admissible sequence: no levels");
    if (seq.levels[0].size() != 1 || seq.levels[0][0].indices.size() != n)
        throw std::invalid_argument("admissible sequence: level 0 must be {T}");

    std::vector<int> prev_owner(n), owner(n);
    for (std::size_t h = 0; h < seq.levels.size(); ++h) {
        const Partition& level = seq.levels[h];
        if (static_cast<std::uint64_t>(level.size()) >
            level_budget(static_cast<int>(h), n))
            throw std::invalid_argument("admissible sequence: level budget exceeded");
        std::fill(owner.begin(), owner.end(), -1);
        for (std::size_t p = 0; p < level.size(); ++p) {
            const Part& part = level[p];
            bool center_member = false;
            for (int idx : part.indices) {
                if (idx < 0 || idx >= static_cast<int>(n) || owner[idx] != -1)
                    throw std::invalid_argument(
                        "admissible sequence: not a partition");
                owner[idx] = static_cast<int>(p);
                center_member |= idx == part.center;
            }
            if (!center_member)
                throw std::invalid_argument(
                    "admissible sequence: center must belong to its part");
        }
        for (int o : owner)
            if (o == -1)
                throw std::invalid_argument("admissible sequence: uncovered index");
        if (h > 0) {
            for (const Part& part : level) {
                const int parent = prev_owner[part.indices.front()];
                for (int idx : part.indices)
                    if (prev_owner[idx] != parent)
                        throw std::invalid_argument(
                            "admissible sequence: not a refinement");
            }
        }
        std::swap(prev_owner, owner);
    }
}

double gamma2_upper(const VectorSet& T, const AdmissibleSequence& seq) {
    validate_sequence(T, seq);
    const std::size_t n = T.size();
    std::vector<double> acc(n, 0.0);
    for (std::size_t h = 0; h < seq.levels.size(); ++h) {
        const double weight = std::exp2(0.5 * static_cast<double>(h));
        for (const Part& part : seq.levels[h]) {
            double diam = 0.0;
            for (std::size_t i = 0; i < part.indices.size(); ++i)
                for (std::size_t j = i + 1; j < part.indices.size(); ++j)
                    diam = std::max(diam,
                                    euclidean_distance(T.points[part.indices[i]],
                                                       T.points[part.indices[j]]));
            for (int idx : part.indices) acc[idx] += weight * diam;
        }
    }
    return *std::max_element(acc.begin(), acc.end());
}

}  // namespace gpsparsify
