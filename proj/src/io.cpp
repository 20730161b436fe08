#include "gpsparsify/io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace gpsparsify::io {

namespace {

std::string kind_name(Polytope::Kind k) {
    switch (k) {
        case Polytope::Kind::List: return "list";
        case Polytope::Kind::Empty: return "empty";
        case Polytope::Kind::Full: return "full";
    }
    return "list";
}

Polytope::Kind kind_from_name(const std::string& s) {
    if (s == "list") return Polytope::Kind::List;
    if (s == "empty") return Polytope::Kind::Empty;
    if (s == "full") return Polytope::Kind::Full;
    throw std::invalid_argument("Polytope: unknown kind '" + s + "'");
}

}  // namespace

json to_json(const VectorSet& v) {
    json j;
    j["dim"] = v.dim;
    j["points"] = v.points;
    if (!v.labels.empty()) j["labels"] = v.labels;
    return j;
}

json to_json(const SparseSup& s) {
    json j;
    j["dim"] = s.dim;
    j["support"] = s.support.points;
    j["shifts"] = s.shifts;
    j["width_used"] = s.width_used;
    j["source_indices"] = s.source_indices;
    return j;
}

json to_json(const Polytope& p) {
    json j;
    j["dim"] = p.dim;
    j["kind"] = kind_name(p.kind);
    json hs = json::array();
    for (const auto& h : p.halfspaces) {
        json e;
        e["normal"] = h.normal;
        e["offset"] = h.offset;
        hs.push_back(std::move(e));
    }
    j["halfspaces"] = std::move(hs);
    return j;
}

json to_json(const CheckReport& r) {
    json j;
    j["name"] = r.name;
    j["bound"] = r.bound;
    j["measured"] = r.measured;
    j["std_err"] = r.std_err;
    j["pass"] = r.pass;
    j["n_samples"] = r.n_samples;
    j["seed"] = r.seed;
    return j;
}

VectorSet vectorset_from_json(const json& j) {
    VectorSet v(j.at("dim").get<int>(),
                j.at("points").get<std::vector<std::vector<double>>>(),
                j.contains("labels") ? j["labels"].get<std::vector<std::string>>()
                                     : std::vector<std::string>{});
    return v;
}

SparseSup sparsesup_from_json(const json& j) {
    SparseSup s;
    s.dim = j.at("dim").get<int>();
    s.support = VectorSet(s.dim, j.at("support").get<std::vector<std::vector<double>>>());
    s.shifts = j.at("shifts").get<std::vector<double>>();
    s.width_used = j.at("width_used").get<double>();
    s.source_indices = j.at("source_indices").get<std::vector<int>>();
    if (s.shifts.size() != s.support.size() ||
        s.source_indices.size() != s.support.size())
        throw std::invalid_argument("SparseSup: shifts/support/source size mismatch");
    for (double c : s.shifts)
        if (!(c >= 0.0) || c > s.width_used * (1.0 + 1e-6))
            throw std::invalid_argument("SparseSup: shift outside [0, width_used]");
    return s;
}

Polytope polytope_from_json(const json& j) {
    const int dim = j.at("dim").get<int>();
    const Polytope::Kind kind = kind_from_name(j.at("kind").get<std::string>());
    if (kind == Polytope::Kind::Empty) return Polytope::empty(dim);
    if (kind == Polytope::Kind::Full) return Polytope::full(dim);
    std::vector<Halfspace> hs;
    for (const auto& e : j.at("halfspaces")) {
        auto normal = e.at("normal").get<std::vector<double>>();
        const double offset = e.at("offset").get<double>();
        const double nrm = euclidean_norm(normal);
        Halfspace h;
        if (std::abs(nrm - 1.0) <= 1e-9) {
            // Already unit: keep bits untouched so round-trips are exact.
            for (double x : normal)
                if (!std::isfinite(x))
                    throw std::invalid_argument("Halfspace: non-finite normal");
            if (!std::isfinite(offset))
                throw std::invalid_argument("Halfspace: non-finite offset");
            h.normal = std::move(normal);
            h.offset = offset;
        } else {
            h = Halfspace(std::move(normal), offset);
        }
        hs.push_back(std::move(h));
    }
    return Polytope::intersection(dim, std::move(hs));
}

CheckReport checkreport_from_json(const json& j) {
    CheckReport r;
    r.name = j.at("name").get<std::string>();
    r.bound = j.at("bound").get<double>();
    r.measured = j.at("measured").get<double>();
    r.std_err = j.at("std_err").get<double>();
    r.pass = j.at("pass").get<bool>();
    r.n_samples = j.at("n_samples").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
}

json load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    json j;
    in >> j;
    return j;
}

void save_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path.string());
    out << j.dump() << "\n";
}

}  // namespace gpsparsify::io
