#include "gpsparsify/bench.hpp"

#include <cmath>
#include <stdexcept>

#include "gpsparsify/quadrature.hpp"
#include "gpsparsify/rng.hpp"

namespace gpsparsify {

double a_n(std::uint64_t n) { return expected_max_gaussians(n); }

VectorSet gen_coordinate_example(int n) {
    if (n < 2) throw std::invalid_argument("gen_coordinate_example: n >= 2 required");
    const double scale = 1.0 / a_n(static_cast<std::uint64_t>(n));
    std::vector<std::vector<double>> pts(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) pts[i][i] = scale;
    return VectorSet(n, std::move(pts));
}

Polytope gen_shifted_polytope(int n) {
    if (n < 2) throw std::invalid_argument("gen_shifted_polytope: n >= 2 required");
    const double a = a_n(static_cast<std::uint64_t>(n));
    const double nrm = std::sqrt(1.0 + 1.0 / (a * a));
    std::vector<Halfspace> hs;
    hs.reserve(n);
    for (int i = 1; i <= n; ++i) {
        Halfspace h;
        h.normal.assign(n + 1, 0.0);
        h.normal[0] = 1.0 / nrm;
        h.normal[i] = 1.0 / (a * nrm);
        h.offset = 1.0;  // sqrt(1 + 1/a^2) / nrm, exactly
        hs.push_back(std::move(h));
    }
    return Polytope::intersection(n + 1, std::move(hs));
}

VectorSet gen_cluster_mix(int dim, int clusters, int per_cluster, double spread,
                          std::uint64_t seed) {
    if (dim < 1 || clusters < 1 || per_cluster < 1 || spread < 0.0)
        throw std::invalid_argument("gen_cluster_mix: bad parameters");
    const VectorSet centers = gen_random_unit_cloud(dim, clusters, seed);
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(clusters) * per_cluster);
    for (int c = 0; c < clusters; ++c) {
        for (int i = 0; i < per_cluster; ++i) {
            std::vector<double> noise(dim);
            fill_gaussian(derive_seed(seed ^ 0x636c7573ull,
                                      static_cast<std::uint64_t>(c) * per_cluster + i),
                          noise);
            const double nrm = euclidean_norm(noise);
            std::vector<double> p = centers.points[c];
            if (nrm > 0.0)
                for (int k = 0; k < dim; ++k) p[k] += spread * noise[k] / nrm;
            pts.push_back(std::move(p));
        }
    }
    return VectorSet(dim, std::move(pts));
}

Polytope gen_regular_polygon(int m) {
    if (m < 3) throw std::invalid_argument("gen_regular_polygon: m >= 3 required");
    const double pi = std::acos(-1.0);
    const double offset = std::cos(pi / m);
    std::vector<Halfspace> hs;
    hs.reserve(m);
    for (int k = 0; k < m; ++k) {
        const double angle = (2.0 * k + 1.0) * pi / m;
        Halfspace h;
        h.normal = {std::cos(angle), std::sin(angle)};
        h.offset = offset;
        hs.push_back(std::move(h));
    }
    return Polytope::intersection(2, std::move(hs));
}

VectorSet gen_random_unit_cloud(int n, int m, std::uint64_t seed) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("gen_random_unit_cloud: n, m >= 1 required");
    std::vector<std::vector<double>> pts;
    pts.reserve(m);
    for (int i = 0; i < m; ++i) {
        std::vector<double> v(n);
        fill_gaussian(derive_seed(seed, static_cast<std::uint64_t>(i)), v);
        const double nrm = euclidean_norm(v);
        if (nrm == 0.0) {
            v.assign(n, 0.0);
            v[0] = 1.0;
        } else {
            for (double& x : v) x /= nrm;
        }
        pts.push_back(std::move(v));
    }
    return VectorSet(n, std::move(pts));
}

}  // namespace gpsparsify
