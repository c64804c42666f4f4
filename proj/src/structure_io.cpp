#include "acg/structure_io.hpp"

#include <filesystem>
#include <fstream>

#include "acg/catalog.hpp"
#include "acg/errors.hpp"
#include "acg/expr_json.hpp"

namespace acg {

using nlohmann::json;

namespace {

ExprMatrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw SpecMalformed(std::string(what) + " must be an array of rows");
  ExprMatrix out;
  for (const auto& row : j) {
    if (!row.is_array()) throw SpecMalformed(std::string(what) + " rows must be arrays");
    std::vector<Expr> r;
    for (const auto& e : row) r.push_back(expr_from_json(e));
    out.push_back(std::move(r));
  }
  return out;
}

json matrix_to_json(const ExprMatrix& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_json(e));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

StructureSpec structure_from_json(const json& j) {
  if (!j.is_object()) throw SpecMalformed("structure must be a JSON object");
  for (const char* key : {"n", "gamma_n", "g"})
    if (!j.contains(key)) throw SpecMalformed(std::string("missing key '") + key + "'");
  if (!j["n"].is_number_integer()) throw SpecMalformed("n must be an integer");

  StructureSpec spec;
  spec.n = j["n"].get<int>();
  spec.name = j.value("name", std::string("file"));
  if (!j["gamma_n"].is_array()) throw SpecMalformed("gamma_n must be an array");
  for (const auto& e : j["gamma_n"]) spec.gamma_n.push_back(expr_from_json(e));
  spec.g = matrix_from_json(j["g"], "g");
  if (j.contains("phi") && !j["phi"].is_null()) spec.phi = matrix_from_json(j["phi"], "phi");
  spec.pseudo = j.value("pseudo", false);
  if (j.contains("domain")) {
    for (const auto& iv : j["domain"]) {
      if (!iv.is_array() || iv.size() != 2) throw SpecMalformed("domain entries are [lo, hi]");
      spec.domain.emplace_back(iv[0].get<double>(), iv[1].get<double>());
    }
  }
  check_well_formed(spec);
  return spec;
}

json structure_to_json(const StructureSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["n"] = spec.n;
  json gn = json::array();
  for (const auto& e : spec.gamma_n) gn.push_back(to_json(e));
  j["gamma_n"] = std::move(gn);
  j["g"] = matrix_to_json(spec.g);
  if (spec.phi) j["phi"] = matrix_to_json(*spec.phi);
  j["pseudo"] = spec.pseudo;
  if (!spec.domain.empty()) {
    json d = json::array();
    for (const auto& [lo, hi] : spec.domain) d.push_back({lo, hi});
    j["domain"] = std::move(d);
  }
  return j;
}

StructureSpec load_structure(const std::string& source) {
  if (in_catalog(source)) return catalog_structure(source);
  if (!std::filesystem::exists(source))
    throw SpecMalformed("'" + source + "' is neither a catalog name nor a file");
  std::ifstream in(source);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
  StructureSpec spec = structure_from_json(j);
  if (!j.contains("name")) spec.name = std::filesystem::path(source).stem().string();
  return spec;
}

}  // namespace acg
