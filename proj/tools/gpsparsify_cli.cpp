// Command-line front end: width / sparsify / center / norm / polytope /
// check / bench. Output is line-oriented key=value (or one JSON report
// with --json); every run prints the seed it used. Exit codes: 0 success,
// 1 failed check, 2 invalid input.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "gpsparsify/bench.hpp"
#include "gpsparsify/core.hpp"
#include "gpsparsify/io.hpp"
#include "gpsparsify/mc.hpp"
#include "gpsparsify/norm.hpp"
#include "gpsparsify/polytope.hpp"
#include "gpsparsify/rng.hpp"
#include "gpsparsify/sparsify.hpp"
#include "gpsparsify/verify.hpp"

namespace {

using namespace gpsparsify;

struct Common {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    bool antithetic = false;
    bool json = false;

    McConfig cfg() const {
        McConfig c = McConfig::make(samples, seed);
        c.antithetic = antithetic;
        return c;
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--samples", c.samples, "Monte Carlo sample count");
    cmd->add_option("--seed", c.seed, "RNG seed")->envname("GPSPARSIFY_SEED");
    cmd->add_flag("--antithetic", c.antithetic, "pair draws (g, -g)");
    cmd->add_flag("--json", c.json, "emit a single JSON report");
}

class Emitter {
  public:
    explicit Emitter(bool as_json) : as_json_(as_json) {}
    template <class T>
    void put(const std::string& key, const T& value) {
        if (as_json_) {
            report_[key] = value;
        } else {
            std::cout << key << "=" << io::json(value).dump() << "\n";
        }
    }
    void put_raw(const std::string& key, const io::json& value) {
        if (as_json_) {
            report_[key] = value;
        } else {
            std::cout << key << "=" << value.dump() << "\n";
        }
    }
    void finish() {
        if (as_json_) std::cout << report_.dump() << "\n";
    }

  private:
    bool as_json_;
    io::json report_;
};

int cmd_width(const std::string& input, const Common& common) {
    const VectorSet T = io::vectorset_from_json(io::load_file(input));
    const Estimate w = estimate_width(T, common.cfg());
    Emitter out(common.json);
    out.put("seed", common.seed);
    out.put("n_samples", w.n_samples);
    out.put("width", w.mean);
    out.put("std_err", w.std_err);
    out.finish();
    return 0;
}

int cmd_sparsify(const std::string& input, const std::string& output, double eps,
                 const Common& common) {
    const VectorSet T = io::vectorset_from_json(io::load_file(input));
    const McConfig cfg = common.cfg();
    const SparseSup sp = sparsify(T, eps, cfg);
    if (!output.empty()) io::save_file(output, io::to_json(sp));
    const CheckReport gap = check_sparsifier(
        T, sp, eps, cfg.with_seed(derive_seed(cfg.seed, 0x636c69ull)));
    Emitter out(common.json);
    out.put("seed", common.seed);
    out.put("support_size", sp.support.size());
    out.put("width_used", sp.width_used);
    out.put("relative_gap", gap.measured);
    out.put("gap_std_err", gap.std_err);
    out.put("eps", eps);
    out.finish();
    return 0;
}

int cmd_center(const std::string& input, const std::string& output, double eps,
               std::uint64_t a_cap, double kappa, const Common& common) {
    const SparseSup sp = io::sparsesup_from_json(io::load_file(input));
    const CenteredResult res = center(sp, eps, a_cap, kappa);
    if (!output.empty()) io::save_file(output, io::to_json(res.directions));
    Emitter out(common.json);
    out.put("seed", common.seed);
    out.put("aux_dim", res.aux_dim);
    out.put("mu", res.mu);
    out.put("cap_bound", res.cap_bound);
    out.put("directions", res.directions.size());
    out.finish();
    return 0;
}

int cmd_norm(const std::string& input, const std::string& output, double eps,
             std::uint64_t a_cap, bool pre_symmetrize, const Common& common) {
    VectorSet T = io::vectorset_from_json(io::load_file(input));
    if (pre_symmetrize) T = symmetrize(T);
    const McConfig cfg = common.cfg();
    const JuntaNorm psi = sparsify_norm(T, eps, cfg, a_cap);
    if (!output.empty()) io::save_file(output, io::to_json(psi.directions));
    // multiplicative failure probability, on a fresh substream
    SupForm nu(T);
    SupForm approx(psi.directions);
    const Estimate fail = estimate_event_prob(
        [&](std::span<const double> g) {
            const double v = nu.eval(g);
            const double p = approx.eval(g);
            return v < (1.0 - eps) * p || v > (1.0 + eps) * p;
        },
        T.dim + psi.ambient_pad, cfg.with_seed(derive_seed(cfg.seed, 0x636c69ull)));
    Emitter out(common.json);
    out.put("seed", common.seed);
    out.put("directions", psi.directions.size());
    out.put("ambient_pad", psi.ambient_pad);
    out.put("additive_gap", psi.additive_gap.mean);
    out.put("failure_prob", fail.mean);
    out.put("failure_std_err", fail.std_err);
    out.finish();
    return 0;
}

int cmd_polytope(const std::string& input, const std::string& output, double eps,
                 const LiftConfig& lc, const Common& common) {
    const Polytope K = io::polytope_from_json(io::load_file(input));
    const McConfig cfg = common.cfg();
    const Polytope L = sparsify_polytope(K, eps, cfg, lc);
    if (!output.empty()) io::save_file(output, io::to_json(L));
    const Estimate dist = estimate_gaussian_distance(
        K, L, cfg.with_seed(derive_seed(cfg.seed, 0x636c69ull)));
    Emitter out(common.json);
    out.put("seed", common.seed);
    out.put("input_halfspaces", K.size());
    out.put("output_halfspaces", L.size());
    out.put("kind", L.kind == Polytope::Kind::List
                        ? "list"
                        : (L.kind == Polytope::Kind::Empty ? "empty" : "full"));
    out.put("dist", dist.mean);
    out.put("dist_std_err", dist.std_err);
    out.put("eps", eps);
    out.finish();
    return 0;
}

int cmd_check(const std::string& suite, double c_sandwich, const Common& common) {
    SuiteOptions opts;
    opts.filter = suite;
    opts.c_sandwich = c_sandwich;
    const std::vector<CheckReport> reports = run_check_suite(common.cfg(), opts);
    bool all_pass = true;
    io::json arr = io::json::array();
    for (const auto& r : reports) {
        all_pass &= r.pass;
        if (common.json) {
            arr.push_back(io::to_json(r));
        } else {
            std::cout << "check=" << r.name << " measured=" << r.measured
                      << " bound=" << r.bound << " std_err=" << r.std_err
                      << " pass=" << (r.pass ? "true" : "false") << "\n";
        }
    }
    if (common.json) {
        io::json rep;
        rep["seed"] = common.seed;
        rep["checks"] = arr;
        rep["all_pass"] = all_pass;
        std::cout << rep.dump() << "\n";
    } else {
        std::cout << "seed=" << common.seed << "\n"
                  << "all_pass=" << (all_pass ? "true" : "false") << "\n";
    }
    return all_pass ? 0 : 1;
}

int cmd_bench(const std::string& bench_case, int n, int m, double subset_frac,
              double eps, const Common& common) {
    const McConfig cfg = common.cfg();
    Emitter out(common.json);
    out.put("seed", common.seed);
    out.put("case", bench_case);
    int exit_code = 0;

    if (bench_case == "coordinate") {
        // Proper-subset experiment: keep the first n^(1-c) vectors with no
        // shifts and measure the L1 gap against the full supremum.
        const VectorSet T = gen_coordinate_example(n);
        const int keep = m > 0
                             ? m
                             : static_cast<int>(std::lround(
                                   std::pow(n, 1.0 - subset_frac)));
        std::vector<std::vector<double>> head(T.points.begin(),
                                              T.points.begin() + keep);
        SparseSup sp;
        sp.dim = T.dim;
        sp.support = VectorSet(T.dim, std::move(head));
        sp.shifts.assign(keep, 0.0);
        for (int i = 0; i < keep; ++i) sp.source_indices.push_back(i);
        sp.width_used = 1.0;
        const CheckReport r = check_sparsifier(T, sp, eps, cfg);
        out.put("n", n);
        out.put("subset_size", keep);
        out.put("relative_gap", r.measured);
        out.put("gap_std_err", r.std_err);
        out.put("eps", eps);
        out.put("pass", r.pass);
        exit_code = r.pass ? 0 : 1;
    } else if (bench_case == "shifted-polytope") {
        const Polytope K = gen_shifted_polytope(n);
        const int keep = m > 0
                             ? m
                             : static_cast<int>(std::lround(
                                   std::pow(n, 1.0 - subset_frac)));
        std::vector<Halfspace> head(K.halfspaces.begin(),
                                    K.halfspaces.begin() + keep);
        const Polytope L = Polytope::intersection(K.dim, std::move(head));
        const Estimate dist = estimate_gaussian_distance(K, L, cfg);
        out.put("n", n);
        out.put("subset_size", keep);
        out.put("dist", dist.mean);
        out.put("dist_std_err", dist.std_err);
        out.put("eps", eps);
        out.put("pass", dist.mean <= eps + 3.0 * dist.std_err);
        exit_code = dist.mean <= eps + 3.0 * dist.std_err ? 0 : 1;
    } else if (bench_case == "disk") {
        const Polytope disk = gen_regular_polygon(256);
        io::json sweep = io::json::array();
        std::uint64_t tag = 1;
        for (int sides : {8, 16, 32}) {
            const Estimate dist = estimate_gaussian_distance(
                disk, gen_regular_polygon(sides),
                cfg.with_seed(derive_seed(cfg.seed, tag++)));
            io::json e;
            e["m"] = sides;
            e["dist"] = dist.mean;
            e["std_err"] = dist.std_err;
            sweep.push_back(std::move(e));
        }
        out.put_raw("sweep", sweep);
    } else if (bench_case == "cloud") {
        const VectorSet T = gen_random_unit_cloud(n, m > 0 ? m : 512, cfg.seed);
        const Estimate w = estimate_width(T, cfg);
        out.put("n", n);
        out.put("m", T.size());
        out.put("width", w.mean);
        out.put("std_err", w.std_err);
    } else {
        throw std::invalid_argument("unknown bench case '" + bench_case + "'");
    }
    out.finish();
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparsifiers for suprema of Gaussian processes, junta norms, "
                 "and narrow-halfspace intersections, with Monte Carlo "
                 "verification"};
    app.require_subcommand(1);

    Common common;
    std::string input, output;
    double eps = 0.2;
    double kappa = 1.0;
    double c_sandwich = 30.0;
    std::uint64_t a_cap = 1ull << 16;
    LiftConfig lc;
    std::string suite = "all";
    std::string bench_case = "coordinate";
    int n = 64, m = 0;
    double subset_frac = 0.5;
    bool pre_symmetrize = false;

    auto* width = app.add_subcommand("width", "estimate the Gaussian width of a set");
    width->add_option("--input", input, "VectorSet JSON file")->required();
    add_common(width, common);

    auto* spars = app.add_subcommand("sparsify", "sparsify a supremum");
    spars->add_option("--input", input, "VectorSet JSON file")->required();
    spars->add_option("--out", output, "output SparseSup JSON file");
    spars->add_option("--eps", eps, "relative L1 accuracy target")->required();
    add_common(spars, common);

    auto* cent = app.add_subcommand("center", "replace shifts by aux coordinates");
    cent->add_option("--input", input, "SparseSup JSON file")->required();
    cent->add_option("--out", output, "output VectorSet JSON file");
    cent->add_option("--eps", eps, "centering accuracy")->required();
    cent->add_option("--a-cap", a_cap, "cap on auxiliary dimension");
    cent->add_option("--kappa", kappa, "constant in A = exp(kappa w / eps)");
    add_common(cent, common);

    auto* norm = app.add_subcommand("norm", "junta approximation of a norm");
    norm->add_option("--input", input, "dual-ball cloud JSON file")->required();
    norm->add_option("--out", output, "output directions JSON file");
    norm->add_option("--eps", eps, "multiplicative accuracy")->required();
    norm->add_option("--a-cap", a_cap, "cap on auxiliary dimension");
    norm->add_flag("--symmetrize", pre_symmetrize, "symmetrize the input first");
    add_common(norm, common);

    auto* poly = app.add_subcommand("polytope", "sparsify a halfspace intersection");
    poly->add_option("--input", input, "Polytope JSON file")->required();
    poly->add_option("--out", output, "output Polytope JSON file");
    poly->add_option("--eps", eps, "Gaussian distance target")->required();
    poly->add_option("--m-cap", lc.m_cap, "per-halfspace cap on lifted blocks");
    poly->add_option("--q", lc.q, "minimum Q");
    poly->add_option("--y-candidates", lc.y_candidates, "cross-section candidates");
    poly->add_option("--tau", lc.tau, "variance constant in the Q formula");
    add_common(poly, common);

    auto* check = app.add_subcommand("check", "run the validator suite");
    check->add_option("--suite", suite,
                      "all | tail | anticoncentration | cck | sparsifier | gamma2");
    check->add_option("--c-sandwich", c_sandwich, "constant for the width sandwich");
    add_common(check, common);

    auto* bench = app.add_subcommand("bench", "benchmark instances and experiments");
    bench->add_option("--case", bench_case,
                      "coordinate | shifted-polytope | disk | cloud");
    bench->add_option("--n", n, "instance size");
    bench->add_option("--m", m, "subset size / cloud size (overrides --subset-frac)");
    bench->add_option("--subset-frac", subset_frac,
                      "keep n^(1-c) of the instance, c = this value");
    bench->add_option("--eps", eps, "accuracy used by the embedded check");
    add_common(bench, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (width->parsed()) return cmd_width(input, common);
        if (spars->parsed()) return cmd_sparsify(input, output, eps, common);
        if (cent->parsed())
            return cmd_center(input, output, eps, a_cap, kappa, common);
        if (norm->parsed())
            return cmd_norm(input, output, eps, a_cap, pre_symmetrize, common);
        if (poly->parsed()) return cmd_polytope(input, output, eps, lc, common);
        if (check->parsed()) return cmd_check(suite, c_sandwich, common);
        if (bench->parsed())
            return cmd_bench(bench_case, n, m, subset_frac, eps, common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
