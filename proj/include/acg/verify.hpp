#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "acg/expr.hpp"
#include "acg/structure.hpp"

namespace acg {

struct VerifyConfig {
  int points = 100;
  std::uint64_t seed = 42;
  double tol = 0.0;  // 0 keeps each check's own tolerance
  bool printed_christoffel_signs = false;
};

enum class Verdict { Pass, Fail, Skipped };

struct CheckRecord {
  std::string name;
  std::string anchor;  // which statement the check exercises
  double max_residual = 0.0;
  double tol = 0.0;
  Verdict verdict = Verdict::Pass;
  std::string note;
};

struct Report {
  std::string structure;
  std::uint64_t seed = 0;
  int points = 0;
  std::vector<CheckRecord> checks;
  bool pass() const;  // every non-skipped check passed
};

// Runs the full suite in a fixed order. Deterministic for a given config.
Report run_verification(const StructureSpec& spec, const VerifyConfig& config);

std::string verdict_name(Verdict v);
nlohmann::ordered_json report_to_json(const Report& report);
std::string render_human(const Report& report);

// Tensor names understood by evaluate_tensor, in listing order.
const std::vector<std::string>& tensor_names();
// Whether the tensor lives on the total space of D (point has 2n-1 coordinates).
bool tensor_on_prolonged(const std::string& name);

// Components at p as nested arrays plus index metadata. Throws UnknownTensor
// or DimensionMismatch.
nlohmann::ordered_json evaluate_tensor(const StructureSpec& spec, const std::string& name,
                                       const std::vector<double>& point);

std::vector<double> parse_point(const std::string& text);

}  // namespace acg
