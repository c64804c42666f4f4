#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acg/structure.hpp"

namespace acg {

// Built-in structures: heisenberg3, warped-heisenberg, curved-heisenberg,
// heisenberg5.
const std::vector<std::string>& catalog_names();
bool in_catalog(const std::string& name);
// Throws SpecMalformed for unknown names.
StructureSpec catalog_structure(const std::string& name);

// Catalog entry number seed % 4 with every g_ab shifted by small seeded
// polynomial terms. Seeds with (seed / 2) odd also add x^n dependence, which
// breaks K-contact.
StructureSpec perturbed_catalog_structure(std::uint64_t seed, double amplitude = 0.05);

}  // namespace acg
