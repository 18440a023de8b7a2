#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <forbh/structure.hpp>

namespace forbh {

struct ParsedStructure {
    Structure structure;
    // optional "parts" attachment: carrier element name -> index element name
    std::optional<std::vector<std::pair<std::string, std::string>>> parts;
};

/// Parses the structure file format. Unknown keys are rejected; "v":1 is
/// required at the top level. When `forced_sig` is given the "signature" and
/// "tau" keys may be omitted (they must match when present).
ParsedStructure parse_structure(const nlohmann::json& j, bool require_version = true,
                                SignaturePtr forced_sig = nullptr);

nlohmann::json emit_structure(const Structure& s);
nlohmann::json emit_structure_with_parts(const Structure& s, const std::vector<int>& part,
                                         const Structure& index);

struct ParsedForbiddenSet {
    SignaturePtr sigma;               // unordered base signature
    std::vector<Structure> forbidden; // σ-structures (trees are checked later)
};

/// Context/forest file: {"v":1, "sigma": {...}, "forbidden": [structure...]}.
ParsedForbiddenSet parse_forbidden_set(const nlohmann::json& j);

nlohmann::json emit_morphism(const Structure& source, const Structure& target, const Morphism& m);

nlohmann::json load_json_file(const std::string& path);

} // namespace forbh
