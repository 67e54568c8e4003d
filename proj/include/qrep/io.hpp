#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qrep/representation.hpp"

namespace qrep {

using Json = nlohmann::ordered_json;

// Representation file:
//   quiver <path>             (relative to base_dir), or inline `vertex` / `arrow` lines
//   ring <n>
//   module <vertex> <literal> (e.g. Z/4 + Z/2; vertices without a line get 0)
//   map <arrow> [[..],..]     (rows follow the target literal's summands, columns the source's)
Representation parse_representation(const std::string& text, const std::filesystem::path& base_dir = ".");
Representation load_representation(const std::filesystem::path& path);
Quiver load_quiver(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

// Self-contained text form accepted by parse_representation.
std::string representation_text(const Representation& x);

Json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const Json& j);
Json module_to_json(const FiniteModule& m);
FiniteModule module_from_json(const RingSpec& ring, const Json& j);
Json matrix_to_json(const ModularMatrix& m);
ModuleMap module_map_from_json(const FiniteModule& source, const FiniteModule& target, const Json& j);

// {"modules": [...], "maps": [...]} relative to a known quiver and ring.
Json rep_body_to_json(const Representation& x);
Representation rep_body_from_json(const Quiver& q, const RingSpec& ring, const Json& j);
// Full form with "quiver" and "ring".
Json representation_to_json(const Representation& x);
Representation representation_from_json(const Json& j);

Json morphism_to_json(const std::vector<ModuleMap>& components);
std::vector<ModuleMap> components_from_json(const Representation& source, const Representation& target,
                                            const Json& j);

}  // namespace qrep
