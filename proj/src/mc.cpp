#include "gpsparsify/mc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

#include "gpsparsify/rng.hpp"

namespace gpsparsify {

namespace {

// Accumulation block size. A fixed internal constant (not cfg.batch_size),
// so partial-sum grouping never depends on configuration or scheduling.
constexpr std::uint64_t kBlock = 4096;

// Column chunk per matrix fill, capped so the sample matrix and the
// product stay around 8 MB each.
int chunk_cols(int dim, int rows) {
    const int widest = std::max(dim, std::max(rows, 1));
    const std::int64_t cap = (8u << 20) / (8 * static_cast<std::int64_t>(widest));
    return static_cast<int>(std::clamp<std::int64_t>(cap, 16, kBlock));
}

void fill_sample_column(std::uint64_t seed, bool antithetic, std::uint64_t index,
                        double* col, int dim) {
    if (!antithetic) {
        fill_gaussian(derive_seed(seed, index), {col, static_cast<std::size_t>(dim)});
        return;
    }
    fill_gaussian(derive_seed(seed, index >> 1), {col, static_cast<std::size_t>(dim)});
    if (index & 1)
        for (int i = 0; i < dim; ++i) col[i] = -col[i];
}

// Linear map x -> A x with a CSR fast path for sparse direction sets
// (coordinate-style sets and Aux clouds are mostly zeros).
struct LinPlan {
    int in_dim = 0;
    int rows = 0;
    bool sparse = false;
    Eigen::MatrixXd dense;  // rows x in_dim
    std::vector<std::int64_t> row_ptr;
    std::vector<int> col_idx;
    std::vector<double> val;

    static LinPlan build(const std::vector<std::vector<double>>& vectors, int dim) {
        LinPlan p;
        p.in_dim = dim;
        p.rows = static_cast<int>(vectors.size());
        std::int64_t nnz = 0;
        for (const auto& v : vectors)
            for (double x : v)
                if (x != 0.0) ++nnz;
        const std::int64_t total =
            static_cast<std::int64_t>(p.rows) * static_cast<std::int64_t>(dim);
        p.sparse = dim >= 32 && nnz * 4 <= total;
        if (p.sparse) {
            p.row_ptr.reserve(p.rows + 1);
            p.row_ptr.push_back(0);
            p.col_idx.reserve(nnz);
            p.val.reserve(nnz);
            for (const auto& v : vectors) {
                for (int j = 0; j < static_cast<int>(v.size()); ++j) {
                    if (v[j] != 0.0) {
                        p.col_idx.push_back(j);
                        p.val.push_back(v[j]);
                    }
                }
                p.row_ptr.push_back(static_cast<std::int64_t>(p.col_idx.size()));
            }
        } else {
            p.dense.resize(p.rows, dim);
            for (int r = 0; r < p.rows; ++r)
                for (int j = 0; j < dim; ++j)
                    p.dense(r, j) = j < static_cast<int>(vectors[r].size())
                                        ? vectors[r][j]
                                        : 0.0;
        }
        return p;
    }

    // out must hold rows x ncols values (column-major, leading dim rows).
    // G may have more rows than in_dim; only the leading in_dim are read.
    void apply(const Eigen::MatrixXd& G, int ncols, Eigen::MatrixXd& out) const {
        if (!sparse) {
            out.resize(rows, ncols);
            out.noalias() = dense * G.topLeftCorner(in_dim, ncols);
            return;
        }
        out.resize(rows, ncols);
        for (int j = 0; j < ncols; ++j) {
            const double* g = G.col(j).data();
            for (int r = 0; r < rows; ++r) {
                double acc = 0.0;
                for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
                    acc += val[k] * g[col_idx[k]];
                out(r, j) = acc;
            }
        }
    }
};

struct SupPlan {
    LinPlan lin;
    std::vector<double> shifts;

    static SupPlan build(const SupForm& f) {
        SupPlan p;
        p.lin = LinPlan::build(f.points.points, f.points.dim);
        p.shifts = f.shifts.empty() ? std::vector<double>(f.points.size(), 0.0)
                                    : f.shifts;
        return p;
    }

    void values(const Eigen::MatrixXd& G, int ncols, Eigen::MatrixXd& scratch,
                double* out) const {
        lin.apply(G, ncols, scratch);
        for (int j = 0; j < ncols; ++j) {
            double best = -std::numeric_limits<double>::infinity();
            for (int r = 0; r < lin.rows; ++r)
                best = std::max(best, scratch(r, j) + shifts[r]);
            out[j] = best;
        }
    }
};

struct MemberPlan {
    Polytope::Kind kind;
    LinPlan lin;
    std::vector<double> offsets;

    static MemberPlan build(const Polytope& P) {
        MemberPlan p;
        p.kind = P.kind;
        if (P.kind != Polytope::Kind::List) return p;
        std::vector<std::vector<double>> normals;
        normals.reserve(P.size());
        p.offsets.reserve(P.size());
        for (const auto& h : P.halfspaces) {
            normals.push_back(h.normal);
            p.offsets.push_back(h.offset);
        }
        if (normals.empty()) {
            p.kind = Polytope::Kind::Full;  // empty intersection is all of R^n
            return p;
        }
        p.lin = LinPlan::build(normals, P.dim);
        return p;
    }

    void membership(const Eigen::MatrixXd& G, int ncols, Eigen::MatrixXd& scratch,
                    unsigned char* out) const {
        if (kind == Polytope::Kind::Empty) {
            std::fill(out, out + ncols, 0);
            return;
        }
        if (kind == Polytope::Kind::Full) {
            std::fill(out, out + ncols, 1);
            return;
        }
        lin.apply(G, ncols, scratch);
        for (int j = 0; j < ncols; ++j) {
            bool inside = true;
            for (int r = 0; r < lin.rows && inside; ++r)
                inside = scratch(r, j) <= offsets[r];
            out[j] = inside ? 1 : 0;
        }
    }
};

struct BlockStats {
    double sum = 0.0;
    double sumsq = 0.0;
};

// Runs eval over all samples in fixed-size blocks, in parallel, and
// reduces block partials in block order so results do not depend on the
// number of worker threads.
template <class BlockFn>
Estimate run_engine(int dim, int plan_rows, const McConfig& cfg, bool binomial,
                    BlockFn&& eval) {
    cfg.validate();
    const std::uint64_t n = cfg.n_samples;
    const std::uint64_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<BlockStats> partial(nblocks);

    const int cols = chunk_cols(dim, plan_rows);
    auto work = [&](std::uint64_t b) {
        const std::uint64_t first = b * kBlock;
        const std::uint64_t count = std::min(kBlock, n - first);
        Eigen::MatrixXd G(dim, cols);
        Eigen::MatrixXd scratch;
        std::vector<double> vals(cols);
        BlockStats st;
        for (std::uint64_t off = 0; off < count; off += cols) {
            const int nc = static_cast<int>(std::min<std::uint64_t>(cols, count - off));
            for (int j = 0; j < nc; ++j)
                fill_sample_column(cfg.seed, cfg.antithetic, first + off + j,
                                   G.col(j).data(), dim);
            eval(G, nc, scratch, vals.data());
            for (int j = 0; j < nc; ++j) {
                st.sum += vals[j];
                st.sumsq += vals[j] * vals[j];
            }
        }
        partial[b] = st;
    };

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("GPSPARSIFY_THREADS")) {
        const long forced = std::strtol(env, nullptr, 10);
        if (forced >= 1) hw = static_cast<unsigned>(forced);
    }
    const unsigned nthreads =
        static_cast<unsigned>(std::min<std::uint64_t>(hw, nblocks));
    if (nthreads <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b) work(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) {
            pool.emplace_back([&] {
                for (std::uint64_t b = next.fetch_add(1); b < nblocks;
                     b = next.fetch_add(1))
                    work(b);
            });
        }
        for (auto& th : pool) th.join();
    }

    double sum = 0.0, sumsq = 0.0;
    for (const auto& st : partial) {
        sum += st.sum;
        sumsq += st.sumsq;
    }
    Estimate e;
    e.n_samples = n;
    e.seed = cfg.seed;
    e.mean = sum / static_cast<double>(n);
    if (binomial) {
        e.std_err = std::sqrt(std::max(0.0, e.mean * (1.0 - e.mean)) /
                              static_cast<double>(n));
    } else if (n > 1) {
        const double var =
            std::max(0.0, (sumsq - sum * sum / static_cast<double>(n)) /
                              static_cast<double>(n - 1));
        e.std_err = std::sqrt(var / static_cast<double>(n));
    }
    return e;
}

bool structurally_equal(const SupForm& F, const SupForm& G) {
    if (F.points.dim != G.points.dim || F.points.size() != G.points.size())
        return false;
    auto keyed = [](const SupForm& f) {
        std::vector<std::pair<std::vector<double>, double>> k;
        k.reserve(f.points.size());
        for (std::size_t i = 0; i < f.points.size(); ++i)
            k.emplace_back(f.points.points[i],
                           f.shifts.empty() ? 0.0 : f.shifts[i]);
        std::sort(k.begin(), k.end());
        return k;
    };
    return keyed(F) == keyed(G);
}

}  // namespace

McConfig McConfig::make(std::uint64_t n_samples, std::uint64_t seed) {
    McConfig cfg;
    cfg.n_samples = n_samples;
    cfg.seed = seed;
    cfg.batch_size = std::min<std::uint64_t>(4096, n_samples);
    return cfg;
}

McConfig McConfig::with_seed(std::uint64_t s) const {
    McConfig cfg = *this;
    cfg.seed = s;
    return cfg;
}

void McConfig::validate() const {
    if (n_samples == 0) throw std::invalid_argument("McConfig: n_samples must be positive");
    if (batch_size == 0) throw std::invalid_argument("McConfig: batch_size must be positive");
    if (batch_size > n_samples)
        throw std::invalid_argument("McConfig: batch_size must not exceed n_samples");
}

SupForm::SupForm(VectorSet pts, std::vector<double> sh)
    : points(std::move(pts)), shifts(std::move(sh)) {
    if (!shifts.empty() && shifts.size() != points.size())
        throw std::invalid_argument("SupForm: one shift per point required");
}

double SupForm::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) < dim())
        throw std::invalid_argument("SupForm::eval: input too short");
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        double v = dot(points.points[i], x.first(points.points[i].size()));
        if (!shifts.empty()) v += shifts[i];
        best = std::max(best, v);
    }
    return best;
}

Estimate estimate_width(const VectorSet& T, const McConfig& cfg) {
    SupPlan plan = SupPlan::build(SupForm(T));
    return run_engine(
        T.dim, plan.lin.rows, cfg, /*binomial=*/false,
        [&](const Eigen::MatrixXd& G, int nc, Eigen::MatrixXd& scratch, double* out) {
            plan.values(G, nc, scratch, out);
        });
}

Estimate estimate_l1_gap(const SupForm& F, const SupForm& G, int dim,
                         const McConfig& cfg) {
    if (F.dim() > dim || G.dim() > dim)
        throw std::invalid_argument("estimate_l1_gap: dim must cover both forms");
    if (structurally_equal(F, G)) {
        Estimate e;
        e.mean = 0.0;
        e.std_err = 0.0;
        e.n_samples = cfg.n_samples;
        e.seed = cfg.seed;
        return e;
    }
    SupPlan pf = SupPlan::build(F);
    SupPlan pg = SupPlan::build(G);
    const int rows = std::max(pf.lin.rows, pg.lin.rows);
    return run_engine(
        dim, rows, cfg, /*binomial=*/false,
        [&](const Eigen::MatrixXd& M, int nc, Eigen::MatrixXd& scratch, double* out) {
            std::vector<double> other(nc);
            pf.values(M, nc, scratch, out);
            pg.values(M, nc, scratch, other.data());
            for (int j = 0; j < nc; ++j) out[j] = std::abs(out[j] - other[j]);
        });
}

Estimate estimate_gaussian_distance(const Polytope& K, const Polytope& L,
                                    const McConfig& cfg) {
    if (K.dim != L.dim)
        throw std::invalid_argument("estimate_gaussian_distance: dimension mismatch");
    MemberPlan pk = MemberPlan::build(K);
    MemberPlan pl = MemberPlan::build(L);
    const int rows = std::max(static_cast<int>(K.size()), static_cast<int>(L.size()));
    return run_engine(
        K.dim, rows, cfg, /*binomial=*/true,
        [&](const Eigen::MatrixXd& G, int nc, Eigen::MatrixXd& scratch, double* out) {
            std::vector<unsigned char> mk(nc), ml(nc);
            pk.membership(G, nc, scratch, mk.data());
            pl.membership(G, nc, scratch, ml.data());
            for (int j = 0; j < nc; ++j) out[j] = mk[j] != ml[j] ? 1.0 : 0.0;
        });
}

Estimate estimate_event_prob(const std::function<bool(std::span<const double>)>& pred,
                             int dim, const McConfig& cfg) {
    if (dim <= 0) throw std::invalid_argument("estimate_event_prob: dim must be positive");
    return run_engine(
        dim, 1, cfg, /*binomial=*/true,
        [&](const Eigen::MatrixXd& G, int nc, Eigen::MatrixXd&, double* out) {
            for (int j = 0; j < nc; ++j) {
                std::span<const double> col{G.col(j).data(),
                                            static_cast<std::size_t>(dim)};
                out[j] = pred(col) ? 1.0 : 0.0;
            }
        });
}

Estimate estimate_form_event(const SupForm& F, const std::function<bool(double)>& pred,
                             int dim, const McConfig& cfg) {
    if (F.dim() > dim)
        throw std::invalid_argument("estimate_form_event: dim must cover the form");
    SupPlan plan = SupPlan::build(F);
    return run_engine(
        dim, plan.lin.rows, cfg, /*binomial=*/true,
        [&](const Eigen::MatrixXd& G, int nc, Eigen::MatrixXd& scratch, double* out) {
            plan.values(G, nc, scratch, out);
            for (int j = 0; j < nc; ++j) out[j] = pred(out[j]) ? 1.0 : 0.0;
        });
}

}  // namespace gpsparsify
