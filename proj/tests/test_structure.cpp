#include "doctest.h"

#include <cmath>

#include <Eigen/Dense>

#include "acg/catalog.hpp"
#include "acg/errors.hpp"
#include "acg/sampling.hpp"
#include "acg/structure.hpp"
#include "acg/structure_io.hpp"

using namespace acg;

namespace {

Expr x(int k) { return Expr::var(k - 1); }

double max_over(const std::vector<Point>& pts, const Expr& e) {
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, std::abs(e.eval(p)));
  return r;
}

}  // namespace

TEST_CASE("catalog structures validate") {
  for (const auto& name : catalog_names()) {
    const StructureSpec s = catalog_structure(name);
    const auto report = validate_structure(s, sample_base(s, 50, 1));
    CHECK_MESSAGE(report.pass, name);
  }
  const StructureSpec h3 = catalog_structure("heisenberg3");
  const auto report = validate_structure(h3, sample_base(h3, 50, 1));
  for (const auto& a : report.axioms) CHECK(a.residual == 0.0);
  CHECK(report.find("eta(xi) = 1")->structural);
}

TEST_CASE("zero phi fails the square axiom") {
  StructureSpec s = catalog_structure("heisenberg3");
  s.phi = zero_matrix(2, 2);
  const auto report = validate_structure(s, sample_base(s, 10, 2));
  CHECK_FALSE(report.pass);
  CHECK(report.find("phi^2 = -Id")->residual == 1.0);
  CHECK_FALSE(report.find("phi^2 = -Id")->pass);
}

TEST_CASE("malformed structures") {
  StructureSpec s = catalog_structure("heisenberg3");
  s.gamma_n[0] = x(3);
  CHECK_THROWS_AS(validate_structure(s, sample_base(catalog_structure("heisenberg3"), 2, 1)), SpecMalformed);

  StructureSpec even = catalog_structure("heisenberg3");
  even.n = 4;
  CHECK_THROWS_AS(check_well_formed(even), SpecMalformed);

  StructureSpec short_g = catalog_structure("heisenberg3");
  short_g.g.pop_back();
  CHECK_THROWS_AS(check_well_formed(short_g), SpecMalformed);

  StructureSpec stray = catalog_structure("heisenberg3");
  stray.g[0][0] = x(4);
  CHECK_THROWS_AS(check_well_formed(stray), SpecMalformed);
}

TEST_CASE("indefinite metric needs the pseudo flag") {
  StructureSpec s = catalog_structure("heisenberg3");
  s.phi.reset();
  s.g[1][1] = Expr(-0.5);
  auto pts = sample_base(s, 5, 3);
  CHECK_FALSE(validate_structure(s, pts).pass);
  s.pseudo = true;
  CHECK(validate_structure(s, pts).pass);
}

TEST_CASE("adapted frame of heisenberg3") {
  const StructureSpec s = catalog_structure("heisenberg3");
  const AdaptedFrame f = adapted_frame(s);
  // e_1 = d_1 + x2 d_3
  CHECK(f.e[0][0].is_const(1.0));
  CHECK(f.e[0][1].is_zero());
  CHECK(same(f.e[0][2], x(2)));
  // e_2 = d_2
  CHECK(f.e[1][0].is_zero());
  CHECK(f.e[1][1].is_const(1.0));
  CHECK(f.e[1][2].is_zero());
  CHECK(f.xi[2].is_const(1.0));
  CHECK(f.xi[0].is_zero());

  const Point p{0.3, -0.2, 0.9};
  const Eigen::MatrixXd prod = eval(f.coframe_matrix(s), p) * eval(f.frame_matrix(), p);
  CHECK((prod - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lie brackets") {
  const VectorField d1 = coordinate_field(3, 0);
  const VectorField d2 = coordinate_field(3, 1);
  for (const auto& c : lie_bracket(d1, d2)) CHECK(c.is_zero());

  const AdaptedFrame f = adapted_frame(catalog_structure("heisenberg3"));
  const VectorField br = lie_bracket(f.e[0], f.e[1]);
  CHECK(br[0].is_zero());
  CHECK(br[1].is_zero());
  CHECK(br[2].is_const(-1.0));
  for (const auto& c : lie_bracket(f.e[0], f.e[0])) CHECK(c.is_zero());
}

TEST_CASE("bracket identity [e_a, e_b] = 2 omega_ba d_n") {
  for (const auto& name : catalog_names()) {
    const StructureSpec s = catalog_structure(name);
    const AdaptedFrame f = adapted_frame(s);
    const AdmissibleTensor w = omega(s);
    const auto pts = sample_base(s, 100, 9);
    double worst = 0.0;
    for (int a = 0; a < s.m(); ++a)
      for (int b = a + 1; b < s.m(); ++b) {
        const VectorField br = lie_bracket(f.e[a], f.e[b]);
        for (int i = 0; i < s.n; ++i) {
          const Expr expected = i == s.xn() ? Expr(2.0) * w(b, a) : Expr();
          worst = std::max(worst, max_over(pts, br[i] - expected));
        }
      }
    CHECK_MESSAGE(worst < 1e-10, name);
  }
}

TEST_CASE("exterior derivative uses the one-half convention") {
  // d eta(X, Y) = 1/2 (X eta(Y) - Y eta(X) - eta([X, Y])) on the adapted frame
  const StructureSpec s = catalog_structure("heisenberg5");
  const AdaptedFrame f = adapted_frame(s);
  std::vector<Expr> eta(s.n);
  for (int a = 0; a < s.m(); ++a) eta[a] = s.gamma_n[a];
  eta[s.xn()] = Expr(1.0);
  auto eta_of = [&](const VectorField& v) {
    Expr r;
    for (int i = 0; i < s.n; ++i) r += eta[i] * v[i];
    return r;
  };
  const AdmissibleTensor w = omega(s);
  const Point p{0.1, 0.2, 0.3, -0.4, 0.5};
  for (int a = 0; a < s.m(); ++a)
    for (int b = 0; b < s.m(); ++b) {
      const Expr deta = Expr(0.5) * (directional_derivative(f.e[a], eta_of(f.e[b])) - directional_derivative(f.e[b], eta_of(f.e[a])) -
                                     eta_of(lie_bracket(f.e[a], f.e[b])));
      CHECK(deta.eval(p) == w(a, b).eval(p));
    }
}

TEST_CASE("omega") {
  const Point p{0.2, 0.4, -0.1};
  const NumTensor w3 = omega(catalog_structure("heisenberg3")).eval(p);
  CHECK(w3.at({1, 0}) == -0.5);
  CHECK(w3.at({0, 1}) == 0.5);

  StructureSpec flat = catalog_structure("heisenberg3");
  flat.gamma_n = {Expr(), Expr()};
  CHECK(omega(flat).is_structurally_zero());

  const StructureSpec h5 = catalog_structure("heisenberg5");
  const NumTensor w5 = omega(h5).eval(Point{0.1, 0.2, 0.3, 0.4, 0.5});
  Eigen::MatrixXd m(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) m(a, b) = w5.at({a, b});
  CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(m).rank() == 4);
  CHECK(w5.at({0, 2}) == 0.5);
  CHECK(w5.at({1, 3}) == 0.5);

  // Antisymmetric and independent of x^n on every catalog entry.
  for (const auto& name : catalog_names()) {
    const StructureSpec s = catalog_structure(name);
    const AdmissibleTensor w = omega(s);
    for (int a = 0; a < s.m(); ++a)
      for (int b = 0; b < s.m(); ++b) {
        CHECK((w(a, b) + w(b, a)).is_zero());
        CHECK(diff(w(a, b), s.xn()).is_zero());
      }
  }
}

TEST_CASE("derived fields") {
  const Point p{0.3, -0.7, 0.4};
  const DerivedFields h3 = derived_fields(catalog_structure("heisenberg3"));
  CHECK(h3.c_lower.is_structurally_zero());
  CHECK(h3.c_mixed.is_structurally_zero());
  const NumTensor psi = h3.psi.eval(p);
  // psi^b_a = g^db omega_da with g^ab = 2 delta
  CHECK(psi.at({0, 1}) == doctest::Approx(1.0));
  CHECK(psi.at({1, 0}) == doctest::Approx(-1.0));
  REQUIRE(h3.h.has_value());
  CHECK(h3.h->is_structurally_zero());

  const DerivedFields warped = derived_fields(catalog_structure("warped-heisenberg"));
  const NumTensor c = warped.c_lower.eval(p);
  const NumTensor cm = warped.c_mixed.eval(p);
  CHECK(c.at({0, 0}) == doctest::Approx(0.25 * std::exp(0.4)).epsilon(1e-14));
  CHECK(c.at({1, 1}) == doctest::Approx(0.25 * std::exp(0.4)).epsilon(1e-14));
  CHECK(c.at({0, 1}) == 0.0);
  CHECK(cm.at({0, 0}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cm.at({1, 1}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cm.at({1, 0}) == 0.0);
  CHECK_FALSE(warped.h.has_value());
  CHECK_THROWS_AS(h_tensor(catalog_structure("warped-heisenberg")), PhiAbsent);
}

TEST_CASE("fundamental form") {
  const StructureSpec h3 = catalog_structure("heisenberg3");
  const Point p{0.5, 0.1, -0.3};
  CHECK(max_abs_diff(fundamental_form(h3).eval(p), omega(h3).eval(p)) == 0.0);

  StructureSpec zero_phi = h3;
  zero_phi.phi = zero_matrix(2, 2);
  CHECK(fundamental_form(zero_phi).is_structurally_zero());

  const NumTensor big = fundamental_form(catalog_structure("heisenberg5")).eval(Point{0.1, 0.2, 0.3, 0.4, 0.5});
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(big.at({a, b}) + big.at({b, a}) == 0.0);

  CHECK_THROWS_AS(fundamental_form(catalog_structure("curved-heisenberg")), PhiAbsent);
}

TEST_CASE("levi-civita blocks on heisenberg3") {
  const StructureSpec s = catalog_structure("heisenberg3");
  const Point p{0.4, -0.3, 0.8};
  const NumTensor lc = levi_civita(s, p);
  const NumTensor w = omega(s).eval(p);
  const NumTensor psi = derived_fields(s).psi.eval(p);
  const int n = 2;  // index of xi
  for (int a = 0; a < 2; ++a) {
    CHECK(lc.at({n, n, a}) == 0.0);
    CHECK(lc.at({a, n, n}) == 0.0);
    for (int b = 0; b < 2; ++b) {
      CHECK(lc.at({n, a, b}) == w.at({b, a}));
      CHECK(lc.at({b, a, n}) == -psi.at({b, a}));
      CHECK(lc.at({b, n, a}) == -psi.at({b, a}));
    }
  }
}

TEST_CASE("levi-civita blocks agree with the holonomic oracle") {
  for (const auto& name : catalog_names()) {
    const StructureSpec s = catalog_structure(name);
    double worst = 0.0;
    for (const auto& p : sample_base(s, 100, 42))
      worst = std::max(worst, max_abs_diff(levi_civita(s, p), levi_civita_oracle(s, p)));
    CHECK_MESSAGE(worst < 1e-9, name << " residual " << worst);
  }
}

TEST_CASE("classification") {
  const StructureSpec h3 = catalog_structure("heisenberg3");
  const auto c3 = classify(h3, sample_base(h3, 30, 4));
  CHECK(c3.k_contact);
  CHECK(c3.contact_metric.value());
  CHECK(c3.almost_normal.value());
  CHECK(c3.almost_normal_residual == 0.0);

  const StructureSpec h5 = catalog_structure("heisenberg5");
  const auto c5 = classify(h5, sample_base(h5, 30, 4));
  CHECK(c5.k_contact);
  CHECK(c5.contact_metric.value());
  CHECK(c5.almost_normal.value());

  const StructureSpec warped = catalog_structure("warped-heisenberg");
  const auto cw = classify(warped, sample_base(warped, 30, 4));
  CHECK_FALSE(cw.k_contact);
  CHECK_FALSE(cw.contact_metric.has_value());

  StructureSpec closed = h3;
  closed.gamma_n = {Expr(), Expr()};
  const auto cc = classify(closed, sample_base(closed, 10, 4));
  CHECK(cc.k_contact);
  CHECK_FALSE(cc.contact_metric.value());
  CHECK(cc.contact_metric_residual == 0.5);
}

TEST_CASE("projectibility") {
  const StructureSpec warped = catalog_structure("warped-heisenberg");
  const auto pts = sample_base(warped, 20, 6);
  AdmissibleTensor constant(2, 1, 1);
  constant(0, 1) = Expr(3.0);
  CHECK(is_projectible(warped, constant, pts));
  CHECK_FALSE(is_projectible(warped, derived_fields(warped).c_lower, pts));
  for (const auto& name : catalog_names()) {
    const StructureSpec s = catalog_structure(name);
    CHECK(is_projectible(s, omega(s), sample_base(s, 20, 6)));
  }
}

TEST_CASE("structure json round trip") {
  for (const auto& name : catalog_names()) {
    const StructureSpec s = catalog_structure(name);
    const StructureSpec back = structure_from_json(nlohmann::json::parse(structure_to_json(s).dump()));
    CHECK(back.n == s.n);
    CHECK(back.phi.has_value() == s.phi.has_value());
    for (const auto& p : sample_base(s, 5, 8)) {
      CHECK((eval(back.g, p) - eval(s.g, p)).cwiseAbs().maxCoeff() == 0.0);
      for (int a = 0; a < s.m(); ++a) CHECK(back.gamma_n[a].eval(p) == s.gamma_n[a].eval(p));
    }
  }
  CHECK_THROWS_AS(structure_from_json(nlohmann::json::parse(R"({"n": 3})")), SpecMalformed);
  CHECK_THROWS_AS(structure_from_json(nlohmann::json::parse(
                      R"({"n": 3, "gamma_n": [{"var": "x3"}, 0], "g": [[1, 0], [0, 1]]})")),
                  SpecMalformed);
}

TEST_CASE("sampling is deterministic and respects the domain") {
  StructureSpec s = catalog_structure("heisenberg3");
  s.domain = {{0.0, 1.0}, {2.0, 3.0}, {-5.0, -4.0}};
  const auto a = sample_base(s, 10, 77);
  const auto b = sample_base(s, 10, 77);
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (int i = 0; i < 3; ++i) CHECK(a[k][i] == b[k][i]);
    CHECK(a[k][1] >= 2.0);
    CHECK(a[k][1] < 3.0);
  }
  const auto pp = sample_prolonged(s, 3, 1);
  CHECK(pp[0].bound(4));
  CHECK_FALSE(pp[0].bound(5));
}
