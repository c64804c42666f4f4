#include "doctest.h"

#include <cmath>

#include "acg/catalog.hpp"
#include "acg/errors.hpp"
#include "acg/interior.hpp"
#include "acg/sampling.hpp"

using namespace acg;

namespace {

AdmissibleField frame_vector(int m, int a) {
  AdmissibleField f(m);
  f[a] = Expr(1.0);
  return f;
}

}  // namespace

TEST_CASE("interior connection is metric and torsion-free on the catalog") {
  for (const auto& name : catalog_names()) {
    const StructureSpec s = catalog_structure(name);
    const auto pts = sample_base(s, 100, 42);
    const InteriorConnection conn = interior_metric_connection(s);
    CHECK(metricity_residual(s, conn, pts) < 1e-12);
    CHECK(max_abs(torsion(conn), pts) < 1e-12);
  }
}

TEST_CASE("metric torsion-free connection on perturbed metrics") {
  for (std::uint64_t k = 0; k < 10; ++k) {
    const StructureSpec s = perturbed_catalog_structure(k);
    const auto pts = sample_base(s, 20, 42 + k);
    const InteriorConnection conn = interior_metric_connection(s);
    CHECK(metricity_residual(s, conn, pts) < 1e-10);
    CHECK(max_abs(torsion(conn), pts) < 1e-12);
  }
}

TEST_CASE("uniqueness: perturbing a coefficient breaks metricity or symmetry") {
  const StructureSpec s = catalog_structure("curved-heisenberg");
  const auto pts = sample_base(s, 20, 42);
  const InteriorConnection base = interior_metric_connection(s);
  for (int k = 0; k < static_cast<int>(base.gamma.size()); ++k) {
    InteriorConnection c = base;
    c.gamma.components()[k] = c.gamma.components()[k] + Expr(0.01);
    const double worst = std::max(metricity_residual(s, c, pts), max_abs(torsion(c), pts));
    CHECK(worst > 1e-3);
  }
}

TEST_CASE("printed sign pattern is not metric") {
  const StructureSpec s = catalog_structure("curved-heisenberg");
  const auto pts = sample_base(s, 50, 42);
  const InteriorConnection printed = interior_metric_connection(s, ChristoffelSigns::Printed);
  CHECK(metricity_residual(s, printed, pts) > 1e-3);
}

TEST_CASE("schouten tensor matches the curvature operator") {
  for (const auto& name : catalog_names()) {
    const StructureSpec s = catalog_structure(name);
    const int m = s.m();
    const InteriorConnection conn = interior_metric_connection(s);
    const AdmissibleTensor r = schouten(s, conn);
    const auto pts = sample_base(s, 20, 42);
    double worst = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
          const AdmissibleField op =
              curvature_operator(s, conn, frame_vector(m, a), frame_vector(m, b), frame_vector(m, c));
          for (const auto& p : pts)
            for (int d = 0; d < m; ++d) worst = std::max(worst, std::abs(op[d].eval(p) - r(d, a, b, c).eval(p)));
        }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("curvature on the catalog") {
  const auto flat = catalog_structure("heisenberg3");
  CHECK(is_zero_curvature(flat, interior_metric_connection(flat), sample_base(flat, 50, 42)));
  const auto flat5 = catalog_structure("heisenberg5");
  CHECK(is_zero_curvature(flat5, interior_metric_connection(flat5), sample_base(flat5, 50, 42)));

  const auto curved = catalog_structure("curved-heisenberg");
  CHECK_FALSE(is_zero_curvature(curved, interior_metric_connection(curved), sample_base(curved, 50, 42)));

  // The conformal factor depends on x^n only through d_n, which the frame
  // derivatives see via Gamma^n; the result is not flat.
  const auto warped = catalog_structure("warped-heisenberg");
  const AdmissibleTensor r = schouten(warped, interior_metric_connection(warped));
  CHECK(r(0, 0, 1, 0).eval(Point{0.3, 0.7, -0.2}) == doctest::Approx(-0.5));
}

TEST_CASE("P tensor and N endomorphism") {
  const auto h = catalog_structure("heisenberg3");
  const auto hp = sample_base(h, 50, 42);
  const InteriorConnection hc = interior_metric_connection(h);
  CHECK(max_abs(p_tensor(h, hc), hp) == 0.0);
  CHECK(max_abs(n_endomorphism(h), hp) == 0.0);
  CHECK(is_k_contact(h, hp));

  const auto w = catalog_structure("warped-heisenberg");
  const auto wp = sample_base(w, 50, 42);
  const AdmissibleTensor n = n_endomorphism(w);
  CHECK(n(0, 0).eval(wp[0]) == doctest::Approx(0.5));
  CHECK(n(1, 1).eval(wp[0]) == doctest::Approx(0.5));
  CHECK(n(0, 1).is_zero());
  CHECK(n_symmetry_residual(w, n, wp) < 1e-12);
  CHECK_FALSE(is_k_contact(w, wp));
  // Metricity of the Levi-Civita-type part along xi fails by d_n g.
  CHECK(std::abs(diff(w.g[0][0], w.xn()).eval(Point{0.1, 0.2, 0.0}) - 0.5) < 1e-15);
}

TEST_CASE("implicit formula for N") {
  for (const auto& name : catalog_names()) {
    const StructureSpec s = catalog_structure(name);
    const auto pts = sample_base(s, 100, 42);
    const ImplicitNReport rep = n_implicit_check(s, interior_metric_connection(s), pts);
    CHECK(rep.implicit_vs_direct < 1e-9);
    CHECK(rep.alternation < 1e-9);
  }
  // The identity with omega transposed fails wherever d_n g is nonzero.
  const StructureSpec w = catalog_structure("warped-heisenberg");
  const auto rep = n_implicit_check(w, interior_metric_connection(w), sample_base(w, 20, 42));
  CHECK(rep.alternation_transposed > 1e-3);

  for (std::uint64_t k = 0; k < 10; ++k) {
    const StructureSpec s = perturbed_catalog_structure(100 + k);
    const auto r = n_implicit_check(s, interior_metric_connection(s), sample_base(s, 20, k));
    CHECK(r.implicit_vs_direct < 1e-9);
    CHECK(r.alternation < 1e-9);
  }
}

TEST_CASE("degenerate omega is reported") {
  StructureSpec s = catalog_structure("heisenberg3");
  s.gamma_n = {Expr(0.0), Expr(0.0)};
  CHECK_THROWS_AS(n_implicit_check(s, interior_metric_connection(s), sample_base(s, 3, 1)), DegenerateOmega);
}
