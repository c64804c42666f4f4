#pragma once

#include <string>

#include "json.hpp"

#include "acg/structure.hpp"

namespace acg {

// {"n": 3, "gamma_n": [expr, ...], "g": [[expr, ...], ...], "phi": [[...]] (optional),
//  "pseudo": false, "name": "..." (optional), "domain": [[lo, hi], ...] (optional)}
StructureSpec structure_from_json(const nlohmann::json& j);
nlohmann::json structure_to_json(const StructureSpec& spec);

// A catalog name, or otherwise a path to a structure JSON file.
StructureSpec load_structure(const std::string& source);

}  // namespace acg
