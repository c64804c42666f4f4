#include "acg/expr_json.hpp"

#include <cmath>
#include <string>

#include "acg/errors.hpp"

namespace acg {

using nlohmann::json;

namespace {

const char* op_name(Op op) {
  switch (op) {
    case Op::Add: return "add";
    case Op::Mul: return "mul";
    case Op::Neg: return "neg";
    case Op::Div: return "div";
    case Op::Pow: return "pow";
    case Op::Exp: return "exp";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    default: return "";
  }
}

int integer_exponent(const json& j) {
  double v = 0.0;
  if (j.is_number()) {
    v = j.get<double>();
  } else if (j.is_object() && j.contains("const") && j["const"].is_number()) {
    v = j["const"].get<double>();
  } else {
    throw ParseError("pow exponent must be an integer");
  }
  if (std::trunc(v) != v || std::abs(v) > 1e6) throw ParseError("pow exponent must be an integer");
  return static_cast<int>(v);
}

}  // namespace

json to_json(const Expr& e) {
  switch (e.op()) {
    case Op::Const:
      return json{{"const", e.const_value()}};
    case Op::Var:
      return json{{"var", coordinate_name(e.var_index())}};
    case Op::Pow:
      return json{{"op", "pow"}, {"args", json::array({to_json(e.arg(0)), e.exponent()})}};
    default: {
      json args = json::array();
      for (int i = 0; i < e.arity(); ++i) args.push_back(to_json(e.arg(i)));
      return json{{"op", op_name(e.op())}, {"args", std::move(args)}};
    }
  }
}

Expr expr_from_json(const json& j) {
  if (j.is_number()) return Expr(j.get<double>());
  if (!j.is_object()) throw ParseError("expression node must be an object: " + j.dump());
  if (j.contains("const")) {
    if (!j["const"].is_number()) throw ParseError("const must be a number");
    return Expr(j["const"].get<double>());
  }
  if (j.contains("var")) {
    if (!j["var"].is_string()) throw ParseError("var must be a string");
    return Expr::var(j["var"].get<std::string>());
  }
  if (!j.contains("op") || !j["op"].is_string()) throw ParseError("unrecognised node: " + j.dump());
  const std::string op = j["op"].get<std::string>();
  if (!j.contains("args") || !j["args"].is_array()) throw ParseError("op '" + op + "' needs args");
  const json& args = j["args"];

  auto unary = [&](auto f) {
    if (args.size() != 1) throw ParseError("op '" + op + "' takes one argument");
    return f(expr_from_json(args[0]));
  };

  if (op == "add" || op == "mul") {
    if (args.empty()) throw ParseError("op '" + op + "' needs arguments");
    Expr acc = expr_from_json(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i)
      acc = op == "add" ? acc + expr_from_json(args[i]) : acc * expr_from_json(args[i]);
    return acc;
  }
  if (op == "div") {
    if (args.size() != 2) throw ParseError("div takes two arguments");
    return expr_from_json(args[0]) / expr_from_json(args[1]);
  }
  if (op == "pow") {
    if (args.size() != 2) throw ParseError("pow takes [base, exponent]");
    return pow(expr_from_json(args[0]), integer_exponent(args[1]));
  }
  if (op == "neg") return unary([](const Expr& a) { return -a; });
  if (op == "exp") return unary([](const Expr& a) { return exp(a); });
  if (op == "sin") return unary([](const Expr& a) { return sin(a); });
  if (op == "cos") return unary([](const Expr& a) { return cos(a); });
  throw ParseError("unknown op '" + op + "'");
}

}  // namespace acg
