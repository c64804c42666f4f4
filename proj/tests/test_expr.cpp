#include "doctest.h"

#include <cmath>
#include <vector>

#include "acg/errors.hpp"
#include "acg/expr.hpp"
#include "acg/expr_json.hpp"
#include "acg/sampling.hpp"

using namespace acg;

namespace {

Expr x(int k) { return Expr::var(k - 1); }

// Expressions exercising every node kind; all finite on [-1, 1]^3.
std::vector<Expr> catalog_expressions() {
  return {
      pow(x(1), 2),
      sin(x(1)) * x(2),
      exp(x(3)) * x(2),
      x(2) / (Expr(1.0) + pow(x(1), 2)),
      cos(x(1) * x(2)) + pow(x(3), 3),
      Expr(1.0) / (Expr(2.0) + x(1)) - x(3),
      exp(sin(x(1))) * cos(x(2) - x(3)),
      Expr(0.5) * (Expr(1.0) + pow(x(2), 2)),
      pow(Expr(3.0) + x(1) * x(3), -2) * sin(x(2)),
      -(x(1) * x(2) * x(3)) / exp(x(1)),
  };
}

std::vector<Point> cube_points(int count, std::uint64_t seed) {
  Sampler s(seed);
  std::vector<Point> out;
  for (int k = 0; k < count; ++k) out.push_back(Point{s.uniform(-1, 1), s.uniform(-1, 1), s.uniform(-1, 1)});
  return out;
}

}  // namespace

TEST_CASE("eval basics") {
  CHECK(pow(x(1), 2).eval(Point{{"x1", 3.0}}) == 9.0);
  CHECK(sin(x(1)).eval(Point{{"x1", 0.0}}) == 0.0);
  CHECK((exp(x(3)) * x(2)).eval(Point{{"x2", 2.0}, {"x3", 0.0}}) == 2.0);
}

TEST_CASE("eval errors") {
  CHECK_THROWS_AS(x(2).eval(Point{{"x1", 1.0}}), UnboundVariable);
  CHECK_THROWS_AS((Expr(1.0) / x(1)).eval(Point{{"x1", 0.0}}), DivisionByZero);
  CHECK_THROWS_AS(pow(x(1), -1).eval(Point{{"x1", 0.0}}), DivisionByZero);
  // A literal zero denominator is kept so evaluation still reports it.
  CHECK_THROWS_AS((x(1) / Expr(0.0)).eval(Point{{"x1", 1.0}}), DivisionByZero);
}

TEST_CASE("diff examples") {
  CHECK(diff(sin(x(1)), "x1").eval(Point{{"x1", 0.0}}) == 1.0);
  CHECK(diff(Expr(4.2), "x1").is_zero());
  CHECK(diff(pow(x(2), 2) * x(1), "x2").eval(Point{{"x1", 3.0}, {"x2", 2.0}}) == doctest::Approx(12.0));
  // Independence is detected structurally.
  CHECK(diff(exp(x(1)) * sin(x(2)), "x3").is_zero());
}

TEST_CASE("central difference oracle") {
  CHECK(std::abs(fd_diff(pow(x(1), 2), "x1", Point{{"x1", 3.0}}, 1e-5) - 6.0) < 1e-8);
  CHECK(fd_diff(Expr(2.5), "x1", Point{{"x1", 0.3}}, 1e-5) == 0.0);

  const auto pts = cube_points(100, 7);
  double worst = 0.0;
  for (const auto& e : catalog_expressions())
    for (int v = 0; v < 3; ++v) {
      const Expr d = diff(e, v);
      for (const auto& p : pts) worst = std::max(worst, std::abs(fd_diff(e, v, p, 1e-5) - d.eval(p)));
    }
  CHECK(worst < 1e-6);
}

TEST_CASE("linearity of diff") {
  Sampler s(11);
  const auto exprs = catalog_expressions();
  for (int trial = 0; trial < 50; ++trial) {
    const double a = s.uniform(-3, 3);
    const Expr& e1 = exprs[trial % exprs.size()];
    const Expr& e2 = exprs[(trial * 7 + 3) % exprs.size()];
    const int v = trial % 3;
    const Point p{s.uniform(-1, 1), s.uniform(-1, 1), s.uniform(-1, 1)};
    const double lhs = diff(Expr(a) * e1 + e2, v).eval(p);
    const double rhs = a * diff(e1, v).eval(p) + diff(e2, v).eval(p);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("mixed partials commute") {
  const auto pts = cube_points(30, 5);
  double worst = 0.0;
  for (const auto& e : catalog_expressions())
    for (int u = 0; u < 3; ++u)
      for (int v = u + 1; v < 3; ++v) {
        const Expr uv = diff(diff(e, u), v);
        const Expr vu = diff(diff(e, v), u);
        for (const auto& p : pts) worst = std::max(worst, std::abs(uv.eval(p) - vu.eval(p)));
      }
  CHECK(worst < 1e-10);
}

TEST_CASE("third derivatives match a difference of second derivatives") {
  const Expr e = x(2) / (Expr(1.0) + pow(x(1), 2)) * exp(x(3));
  const Expr d3 = diff(diff(diff(e, 0), 0), 1);
  const Expr d2 = diff(diff(e, 0), 0);
  for (const auto& p : cube_points(20, 3)) CHECK(std::abs(fd_diff(d2, 1, p, 1e-5) - d3.eval(p)) < 1e-6);
}

TEST_CASE("constant folding keeps values") {
  const Expr folded = (Expr(2.0) * Expr(3.0) + Expr(0.0) * x(1)) / Expr(1.0);
  CHECK(folded.is_const(6.0));
  CHECK(same(Expr(1.0) * x(1) + Expr(0.0), x(1)));
  CHECK(same(-(-x(2)), x(2)));
  const Expr e = exp(Expr(0.3)) * sin(x(1)) + pow(Expr(2.0), 3);
  const Point p{{"x1", 0.7}};
  CHECK(std::abs(e.eval(p) - (std::exp(0.3) * std::sin(0.7) + 8.0)) < 1e-14 * 9.0);
}

TEST_CASE("coordinate names") {
  CHECK(coordinate_index("x1") == 0);
  CHECK(coordinate_index("x12") == 11);
  CHECK(coordinate_name(4) == "x5");
  CHECK_THROWS_AS(coordinate_index("y1"), ParseError);
  CHECK_THROWS_AS(coordinate_index("x0"), ParseError);
  CHECK_THROWS_AS(coordinate_index("x"), ParseError);
}

TEST_CASE("json encoding") {
  const auto j = nlohmann::json::parse(R"({"op": "mul", "args": [
      {"op": "exp", "args": [{"var": "x3"}]},
      {"op": "pow", "args": [{"var": "x2"}, 2]},
      {"const": 0.5}]})");
  const Expr e = expr_from_json(j);
  CHECK(e.eval(Point{0.0, 2.0, 0.0}) == doctest::Approx(2.0));

  // Every catalog expression survives a round trip with identical values.
  for (const auto& c : catalog_expressions()) {
    const Expr back = expr_from_json(nlohmann::json::parse(to_json(c).dump()));
    for (const auto& p : cube_points(5, 1)) CHECK(back.eval(p) == c.eval(p));
  }

  CHECK(expr_from_json(nlohmann::json::parse(R"({"op":"pow","args":[{"var":"x1"},{"const":3}]})"))
            .eval(Point{2.0}) == 8.0);
  CHECK_THROWS_AS(expr_from_json(nlohmann::json::parse(R"({"op":"pow","args":[{"var":"x1"},1.5]})")),
                  ParseError);
  CHECK_THROWS_AS(expr_from_json(nlohmann::json::parse(R"({"op":"tan","args":[{"var":"x1"}]})")),
                  ParseError);
  CHECK_THROWS_AS(expr_from_json(nlohmann::json::parse(R"({"var":"z"})")), ParseError);
}
