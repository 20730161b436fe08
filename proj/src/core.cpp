#include "gpsparsify/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gpsparsify {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double euclidean_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

VectorSet::VectorSet(int dim_, std::vector<std::vector<double>> pts,
                     std::vector<std::string> labels_)
    : dim(dim_), points(std::move(pts)), labels(std::move(labels_)) {
    require(dim > 0, "VectorSet: dim must be positive");
    require(!points.empty(), "VectorSet: point list must be nonempty");
    for (const auto& p : points) {
        require(static_cast<int>(p.size()) == dim, "VectorSet: point length != dim");
        for (double x : p)
            require(std::isfinite(x), "VectorSet: entries must be finite");
    }
    require(labels.empty() || labels.size() == points.size(),
            "VectorSet: labels must be empty or one per point");
}

VectorSet VectorSet::scaled(double alpha) const {
    VectorSet out = *this;
    for (auto& p : out.points)
        for (double& x : p) x *= alpha;
    return out;
}

Halfspace::Halfspace(std::vector<double> raw_normal, double raw_offset) {
    require(!raw_normal.empty(), "Halfspace: empty normal");
    for (double x : raw_normal)
        require(std::isfinite(x), "Halfspace: normal entries must be finite");
    require(std::isfinite(raw_offset), "Halfspace: offset must be finite");
    const double nrm = euclidean_norm(raw_normal);
    require(nrm > 0.0, "Halfspace: zero normal");
    for (double& x : raw_normal) x /= nrm;
    normal = std::move(raw_normal);
    offset = raw_offset / nrm;
}

Polytope Polytope::empty(int dim) {
    Polytope p;
    p.dim = dim;
    p.kind = Kind::Empty;
    return p;
}

Polytope Polytope::full(int dim) {
    Polytope p;
    p.dim = dim;
    p.kind = Kind::Full;
    return p;
}

Polytope Polytope::intersection(int dim, std::vector<Halfspace> hs) {
    require(dim > 0, "Polytope: dim must be positive");
    Polytope p;
    p.dim = dim;
    p.kind = Kind::List;
    for (const auto& h : hs)
        require(h.dim() == dim, "Polytope: halfspace dimension mismatch");
    p.halfspaces = std::move(hs);
    return p;
}

bool Polytope::contains(std::span<const double> x) const {
    switch (kind) {
        case Kind::Empty: return false;
        case Kind::Full: return true;
        case Kind::List: break;
    }
    for (const auto& h : halfspaces)
        if (dot(h.normal, x) > h.offset) return false;
    return true;
}

double eval_sup(const VectorSet& T, std::span<const double> x) {
    if (static_cast<int>(x.size()) != T.dim)
        throw std::invalid_argument("eval_sup: dimension mismatch");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& t : T.points) best = std::max(best, dot(t, x));
    return best;
}

double diameter(const VectorSet& P) {
    double best = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = i + 1; j < P.size(); ++j)
            best = std::max(best, euclidean_distance(P.points[i], P.points[j]));
    return best;
}

VectorSet symmetrize(const VectorSet& T) {
    VectorSet out = T;
    out.labels.clear();
    for (const auto& t : T.points) {
        std::vector<double> neg(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) neg[i] = -t[i];
        bool dup = false;
        for (const auto& q : out.points) {
            if (euclidean_distance(q, neg) <= 1e-12) {
                dup = true;
                break;
            }
        }
        if (!dup) out.points.push_back(std::move(neg));
    }
    return out;
}

}  // namespace gpsparsify
