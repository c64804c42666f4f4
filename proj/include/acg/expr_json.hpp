#pragma once

#include "json.hpp"

#include "acg/expr.hpp"

namespace acg {

// {"const": r} | {"var": "x2"} | {"op": "add"|..., "args": [...]}.
// "pow" takes [base, integer exponent]; the exponent may be a bare integer
// or an integral {"const": k}.
nlohmann::json to_json(const Expr& e);
Expr expr_from_json(const nlohmann::json& j);

}  // namespace acg
