#pragma once

#include <filesystem>
#include <json.hpp>

#include "gpsparsify/core.hpp"
#include "gpsparsify/sparsify.hpp"
#include "gpsparsify/verify.hpp"

namespace gpsparsify::io {

// JSON codecs with stable key order and shortest round-trip floats, so
// loading a canonical file and storing it again is byte-identical.

using json = nlohmann::ordered_json;

json to_json(const VectorSet& v);
json to_json(const SparseSup& s);
json to_json(const Polytope& p);
json to_json(const CheckReport& r);

VectorSet vectorset_from_json(const json& j);
SparseSup sparsesup_from_json(const json& j);
Polytope polytope_from_json(const json& j);
CheckReport checkreport_from_json(const json& j);

json load_file(const std::filesystem::path& path);
void save_file(const std::filesystem::path& path, const json& j);

}  // namespace gpsparsify::io
