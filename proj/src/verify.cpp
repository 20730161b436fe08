#include "gpsparsify/verify.hpp"

#include <cmath>
#include <stdexcept>

#include "gpsparsify/bench.hpp"
#include "gpsparsify/chaining.hpp"
#include "gpsparsify/rng.hpp"

namespace gpsparsify {

namespace {

// Checks never share draws with each other or with the object under test;
// each consumes substreams derived from its own tag.
constexpr std::uint64_t kCheckWidthTag = 0x636b7700ull;  // "ckw"
constexpr std::uint64_t kCheckProbTag = 0x636b7000ull;   // "ckp"

double max_point_norm(const VectorSet& T) {
    double m = 0.0;
    for (const auto& t : T.points) m = std::max(m, euclidean_norm(t));
    return m;
}

bool is_symmetric_set(const VectorSet& T, double tol) {
    for (const auto& t : T.points) {
        std::vector<double> neg(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) neg[i] = -t[i];
        bool found = false;
        for (const auto& q : T.points) {
            if (euclidean_distance(q, neg) <= tol) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

CheckReport make_report(std::string name, double bound, double measured,
                        double std_err, std::uint64_t n_samples,
                        std::uint64_t seed) {
    CheckReport r;
    r.name = std::move(name);
    r.bound = bound;
    r.measured = measured;
    r.std_err = std_err;
    r.n_samples = n_samples;
    r.seed = seed;
    r.pass = measured <= bound + 3.0 * std_err;
    return r;
}

CheckReport check_tail(const VectorSet& T, double rho, const McConfig& cfg) {
    if (rho < 0.0) throw std::invalid_argument("check_tail: rho must be >= 0");
    const Estimate w =
        estimate_width(T, cfg.with_seed(derive_seed(cfg.seed, kCheckWidthTag)));
    const double sigma2 = max_point_norm(T) * max_point_norm(T);
    const double bound =
        sigma2 > 0.0 ? 2.0 * std::exp(-rho * rho / (2.0 * sigma2)) : (rho > 0 ? 0.0 : 2.0);
    const Estimate p = estimate_form_event(
        SupForm(T), [&](double v) { return std::abs(v - w.mean) >= rho; }, T.dim,
        cfg.with_seed(derive_seed(cfg.seed, kCheckProbTag)));
    return make_report("tail", bound, p.mean, p.std_err, p.n_samples, cfg.seed);
}

CheckReport check_anticoncentration(const VectorSet& T, double eps,
                                    const McConfig& cfg) {
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("check_anticoncentration: eps must lie in (0, 0.5)");
    if (!is_symmetric_set(T, 1e-9))
        throw std::invalid_argument("check_anticoncentration: T must be symmetric");
    const Estimate w =
        estimate_width(T, cfg.with_seed(derive_seed(cfg.seed, kCheckWidthTag)));
    if (w.mean <= 3.0 * w.std_err)
        throw std::invalid_argument(
            "check_anticoncentration: width indistinguishable from zero");
    const double level = eps * w.mean;
    const Estimate p = estimate_form_event(
        SupForm(T), [&](double v) { return std::abs(v) <= level; }, T.dim,
        cfg.with_seed(derive_seed(cfg.seed, kCheckProbTag)));
    return make_report("anticoncentration", 10.0 * eps, p.mean, p.std_err,
                       p.n_samples, cfg.seed);
}

CheckReport check_cck(const VectorSet& T, double theta, double eps,
                      const McConfig& cfg) {
    if (!(eps > 0.0)) throw std::invalid_argument("check_cck: eps must be positive");
    for (const auto& t : T.points)
        if (std::abs(euclidean_norm(t) - 1.0) > 1e-6)
            throw std::invalid_argument("check_cck: all vectors must be unit norm");
    const Estimate w =
        estimate_width(T, cfg.with_seed(derive_seed(cfg.seed, kCheckWidthTag)));
    const Estimate p = estimate_form_event(
        SupForm(T), [&](double v) { return std::abs(v - theta) <= eps; }, T.dim,
        cfg.with_seed(derive_seed(cfg.seed, kCheckProbTag)));
    return make_report("cck", 4.0 * eps * (1.0 + w.mean), p.mean, p.std_err,
                       p.n_samples, cfg.seed);
}

CheckReport check_sparsifier(const VectorSet& T, const SparseSup& sp, double eps,
                             const McConfig& cfg) {
    if (sp.dim != T.dim)
        throw std::invalid_argument("check_sparsifier: dimension mismatch");
    const Estimate w =
        estimate_width(T, cfg.with_seed(derive_seed(cfg.seed, kCheckWidthTag)));
    if (w.mean <= 3.0 * w.std_err)
        throw std::invalid_argument("check_sparsifier: width indistinguishable "
                                    "from zero");
    const Estimate gap =
        estimate_l1_gap(SupForm(T), sp.form(), T.dim,
                        cfg.with_seed(derive_seed(cfg.seed, kCheckProbTag)));
    return make_report("sparsifier", eps, gap.mean / w.mean, gap.std_err / w.mean,
                       gap.n_samples, cfg.seed);
}

CheckReport check_gamma2_sandwich(const VectorSet& T, double C, const McConfig& cfg) {
    if (!(C > 0.0))
        throw std::invalid_argument("check_gamma2_sandwich: C must be positive");
    const Estimate w =
        estimate_width(T, cfg.with_seed(derive_seed(cfg.seed, kCheckWidthTag)));
    const AdmissibleSequence seq =
        build_admissible_sequence(T, default_depth(T.size()));
    const double g2 = gamma2_upper(T, seq);
    return make_report("gamma2_sandwich", C * g2, w.mean, w.std_err, w.n_samples,
                       cfg.seed);
}

std::vector<CheckReport> run_check_suite(const McConfig& cfg,
                                         const SuiteOptions& opts) {
    struct NamedSet {
        std::string name;
        VectorSet set;
        bool symmetric;
        bool unit;
    };
    const std::uint64_t suite_seed = derive_seed(cfg.seed, 0x7375697465ull);
    std::vector<NamedSet> sets;
    sets.push_back({"coordinate64", gen_coordinate_example(64), false, false});
    sets.push_back({"coordinate256", gen_coordinate_example(256), false, false});
    sets.push_back(
        {"pm_e1", VectorSet(2, {{1.0, 0.0}, {-1.0, 0.0}}), true, true});
    const VectorSet cloud = gen_random_unit_cloud(64, 512, suite_seed);
    sets.push_back({"cloud64x512", cloud, false, true});
    sets.push_back({"symcloud64", symmetrize(gen_random_unit_cloud(64, 256,
                                                                   suite_seed + 1)),
                    true, true});
    sets.push_back({"cluster_mix",
                    gen_cluster_mix(32, 8, 16, 2e-3, suite_seed + 2), false, false});

    const auto want = [&](const std::string& check) {
        return opts.filter == "all" || opts.filter == check;
    };
    std::vector<CheckReport> reports;
    std::uint64_t tag = 1;
    auto sub = [&] { return cfg.with_seed(derive_seed(cfg.seed, tag++)); };
    for (const auto& ns : sets) {
        if (want("tail")) {
            CheckReport r = check_tail(ns.set, 3.0 * max_point_norm(ns.set), sub());
            r.name += "/" + ns.name;
            reports.push_back(std::move(r));
        }
        if (want("anticoncentration") && ns.symmetric) {
            CheckReport r =
                check_anticoncentration(ns.set, opts.eps_anticoncentration, sub());
            r.name += "/" + ns.name;
            reports.push_back(std::move(r));
        }
        if (want("cck") && ns.unit) {
            for (double theta : {0.0, 1.0}) {
                CheckReport r = check_cck(ns.set, theta, opts.eps_cck, sub());
                r.name += "/" + ns.name + "/theta" +
                          std::to_string(static_cast<int>(theta));
                reports.push_back(std::move(r));
            }
        }
        if (want("gamma2")) {
            CheckReport r = check_gamma2_sandwich(ns.set, opts.c_sandwich, sub());
            r.name += "/" + ns.name;
            reports.push_back(std::move(r));
        }
        if (want("sparsifier")) {
            const McConfig c = sub();
            const SparseSup sp = sparsify(ns.set, opts.eps_sparsifier, c);
            CheckReport r = check_sparsifier(ns.set, sp, opts.eps_sparsifier, sub());
            r.name += "/" + ns.name;
            reports.push_back(std::move(r));
        }
    }
    return reports;
}

}  // namespace gpsparsify
