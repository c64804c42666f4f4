#include "acg/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "acg/errors.hpp"

namespace acg {

namespace {

void require_square(const ExprMatrix& m, int dim, const char* what) {
  if (static_cast<int>(m.size()) != dim) throw SpecMalformed(std::string(what) + " has wrong row count");
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != dim)
      throw SpecMalformed(std::string(what) + " has wrong column count");
}

void require_chart_vars(const Expr& e, int n, const char* what) {
  if (coordinate_extent(e) > n)
    throw SpecMalformed(std::string(what) + " uses a coordinate outside x1..x" + std::to_string(n));
}

ExprMatrix matmul(const ExprMatrix& a, const ExprMatrix& b) {
  const std::size_t rows = a.size();
  const std::size_t inner = b.size();
  const std::size_t cols = inner == 0 ? 0 : b[0].size();
  ExprMatrix out = zero_matrix(static_cast<int>(rows), static_cast<int>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

}  // namespace

void check_well_formed(const StructureSpec& spec) {
  if (spec.n < 3 || spec.n % 2 == 0) throw SpecMalformed("n must be odd and at least 3");
  if (2 * spec.n - 1 > kMaxCoordinates) throw SpecMalformed("n too large for the over-chart");
  const int m = spec.m();
  if (static_cast<int>(spec.gamma_n.size()) != m) throw SpecMalformed("gamma_n needs n-1 entries");
  require_square(spec.g, m, "g");
  if (spec.phi) require_square(*spec.phi, m, "phi");
  for (int a = 0; a < m; ++a) {
    require_chart_vars(spec.gamma_n[a], spec.n, "gamma_n");
    if (spec.gamma_n[a].depends_on(spec.xn()))
      throw SpecMalformed("Gamma^n_" + std::to_string(a + 1) + " depends on x^n");
    for (int b = 0; b < m; ++b) {
      require_chart_vars(spec.g[a][b], spec.n, "g");
      if (spec.phi) require_chart_vars((*spec.phi)[a][b], spec.n, "phi");
    }
  }
  if (!spec.domain.empty()) {
    if (static_cast<int>(spec.domain.size()) != spec.n) throw SpecMalformed("domain needs n intervals");
    for (const auto& [lo, hi] : spec.domain)
      if (!(lo < hi)) throw SpecMalformed("domain interval must satisfy lo < hi");
  }
}

const AxiomResult* ValidationReport::find(const std::string& name) const {
  for (const auto& a : axioms)
    if (a.name == name) return &a;
  return nullptr;
}

ValidationReport validate_structure(const StructureSpec& spec, const std::vector<Point>& sample,
                                    double tol) {
  check_well_formed(spec);
  const int m = spec.m();
  ValidationReport report;

  for (const char* name : {"eta(xi) = 1", "phi(xi) = 0", "eta o phi = 0", "d eta(xi, X) = 0"})
    report.axioms.push_back({name, 0.0, true, true});

  double sym = 0.0;
  double definite = 0.0;
  for (const auto& p : sample) {
    const Eigen::MatrixXd g = eval(spec.g, p);
    sym = std::max(sym, (g - g.transpose()).cwiseAbs().maxCoeff());
    if (spec.pseudo) {
      const double det = g.determinant();
      if (std::abs(det) < std::numeric_limits<double>::epsilon()) definite = std::max(definite, 1.0);
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (g + g.transpose()),
                                                       Eigen::EigenvaluesOnly);
      const double lmin = es.eigenvalues().minCoeff();
      if (lmin <= 0.0) definite = std::max(definite, 1.0 - lmin);
    }
  }
  report.axioms.push_back({"g symmetric", sym, false, sym < tol});
  report.axioms.push_back({spec.pseudo ? "g nondegenerate" : "g positive-definite", definite,
                           false, definite < tol});

  if (spec.phi) {
    double sq = 0.0;
    double compat = 0.0;
    for (const auto& p : sample) {
      const Eigen::MatrixXd phi = eval(*spec.phi, p);
      const Eigen::MatrixXd g = eval(spec.g, p);
      sq = std::max(sq, (phi * phi + Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff());
      compat = std::max(compat, (phi.transpose() * g * phi - g).cwiseAbs().maxCoeff());
    }
    report.axioms.push_back({"phi^2 = -Id", sq, false, sq < tol});
    report.axioms.push_back({"g(phi X, phi Y) = g(X, Y)", compat, false, compat < tol});
  }

  report.pass = std::all_of(report.axioms.begin(), report.axioms.end(),
                            [](const AxiomResult& a) { return a.pass; });
  return report;
}

Expr frame_derivative(const StructureSpec& spec, int a, const Expr& f) {
  return diff(f, a) - spec.gamma_n.at(a) * diff(f, spec.xn());
}

AdaptedFrame adapted_frame(const StructureSpec& spec) {
  AdaptedFrame frame;
  for (int a = 0; a < spec.m(); ++a) {
    VectorField e = coordinate_field(spec.n, a);
    e[spec.xn()] = -spec.gamma_n[a];
    frame.e.push_back(std::move(e));
  }
  frame.xi = coordinate_field(spec.n, spec.xn());
  return frame;
}

ExprMatrix AdaptedFrame::frame_matrix() const {
  const int n = static_cast<int>(xi.size());
  ExprMatrix out = zero_matrix(n, n);
  for (int col = 0; col < n; ++col) {
    const VectorField& v = col + 1 < n ? e[col] : xi;
    for (int row = 0; row < n; ++row) out[row][col] = v[row];
  }
  return out;
}

ExprMatrix AdaptedFrame::coframe_matrix(const StructureSpec& spec) const {
  ExprMatrix out = identity_matrix(spec.n);
  for (int a = 0; a < spec.m(); ++a) out[spec.xn()][a] = spec.gamma_n[a];
  return out;
}

AdmissibleTensor metric(const StructureSpec& spec) {
  AdmissibleTensor g(spec.m(), 0, 2);
  for (int a = 0; a < spec.m(); ++a)
    for (int b = 0; b < spec.m(); ++b) g(a, b) = spec.g[a][b];
  return g;
}

AdmissibleTensor inverse_metric(const StructureSpec& spec) {
  const ExprMatrix inv = inverse(spec.g);
  AdmissibleTensor out(spec.m(), 2, 0);
  for (int a = 0; a < spec.m(); ++a)
    for (int b = 0; b < spec.m(); ++b) out(a, b) = inv[a][b];
  return out;
}

AdmissibleTensor omega(const StructureSpec& spec) {
  AdmissibleTensor w(spec.m(), 0, 2);
  for (int a = 0; a < spec.m(); ++a)
    for (int b = 0; b < spec.m(); ++b)
      w(a, b) = Expr(0.5) * (diff(spec.gamma_n[b], a) - diff(spec.gamma_n[a], b));
  return w;
}

DerivedFields derived_fields(const StructureSpec& spec) {
  const int m = spec.m();
  const AdmissibleTensor ginv = inverse_metric(spec);
  const AdmissibleTensor w = omega(spec);
  DerivedFields out{AdmissibleTensor(m, 0, 2), AdmissibleTensor(m, 1, 1), AdmissibleTensor(m, 1, 1),
                    std::nullopt};
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out.c_lower(a, b) = Expr(0.5) * diff(spec.g[a][b], spec.xn());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int d = 0; d < m; ++d) {
        out.c_mixed(a, b) += ginv(d, a) * out.c_lower(d, b);
        out.psi(a, b) += ginv(d, a) * w(d, b);
      }
  if (spec.phi) out.h = h_tensor(spec);
  return out;
}

AdmissibleTensor h_tensor(const StructureSpec& spec) {
  if (!spec.phi) throw PhiAbsent("h needs phi");
  AdmissibleTensor h(spec.m(), 1, 1);
  for (int a = 0; a < spec.m(); ++a)
    for (int b = 0; b < spec.m(); ++b) h(a, b) = Expr(0.5) * diff((*spec.phi)[a][b], spec.xn());
  return h;
}

AdmissibleTensor fundamental_form(const StructureSpec& spec) {
  if (!spec.phi) throw PhiAbsent("fundamental form needs phi");
  const int m = spec.m();
  AdmissibleTensor out(m, 0, 2);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) out(a, b) += spec.g[a][c] * (*spec.phi)[c][b];
  return out;
}

AdmissibleTensor adapted_christoffel(const StructureSpec& spec, ChristoffelSigns signs) {
  const int m = spec.m();
  const AdmissibleTensor ginv = inverse_metric(spec);
  // dg[e][x][y] = e_e g_xy
  std::vector<Expr> dg(static_cast<std::size_t>(m * m * m));
  auto at = [m](int e, int x, int y) { return static_cast<std::size_t>((e * m + x) * m + y); };
  for (int e = 0; e < m; ++e)
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) dg[at(e, x, y)] = frame_derivative(spec, e, spec.g[x][y]);

  const double s = signs == ChristoffelSigns::Corrected ? 1.0 : -1.0;
  AdmissibleTensor gamma(m, 1, 2);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        Expr acc;
        for (int d = 0; d < m; ++d) {
          if (ginv(a, d).is_zero()) continue;
          const Expr bracket = dg[at(b, c, d)] + Expr(s) * dg[at(c, b, d)] - dg[at(d, b, c)];
          if (!bracket.is_zero()) acc += ginv(a, d) * bracket;
        }
        gamma(a, b, c) = Expr(0.5) * acc;
      }
  return gamma;
}

NumTensor levi_civita(const StructureSpec& spec, const Point& p) {
  const int n = spec.n;
  const int m = spec.m();
  const NumTensor gamma = adapted_christoffel(spec).eval(p);
  const DerivedFields f = derived_fields(spec);
  const NumTensor w = omega(spec).eval(p);
  const NumTensor c = f.c_lower.eval(p);
  const NumTensor cm = f.c_mixed.eval(p);
  const NumTensor psi = f.psi.eval(p);

  NumTensor out({n, n, n});
  const int xn = n - 1;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      for (int cc = 0; cc < m; ++cc) out.at({cc, a, b}) = gamma.at({cc, a, b});
      out.at({xn, a, b}) = w.at({b, a}) - c.at({a, b});
      out.at({b, a, xn}) = cm.at({b, a}) - psi.at({b, a});
      out.at({b, xn, a}) = out.at({b, a, xn});
    }
  return out;
}

ExprMatrix holonomic_metric(const StructureSpec& spec) {
  const int n = spec.n;
  const int m = spec.m();
  ExprMatrix out = zero_matrix(n, n);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) out[a][b] = spec.g[a][b] + spec.gamma_n[a] * spec.gamma_n[b];
    out[a][n - 1] = spec.gamma_n[a];
    out[n - 1][a] = spec.gamma_n[a];
  }
  out[n - 1][n - 1] = Expr(1.0);
  return out;
}

NumTensor levi_civita_oracle(const StructureSpec& spec, const Point& p) {
  const int n = spec.n;
  const ExprMatrix big = holonomic_metric(spec);
  const Eigen::MatrixXd gmat = eval(big, p);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gmat);
  if (!lu.isInvertible()) throw SingularMetric("holonomic metric singular at sample point");
  const Eigen::MatrixXd ginv = lu.inverse();

  // dG[k][i][j] = d_k G_ij
  NumTensor dG({n, n, n});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dG.at({k, i, j}) = diff(big[i][j], k).eval(p);

  NumTensor hol({n, n, n});
  for (int g = 0; g < n; ++g)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double acc = 0.0;
        for (int d = 0; d < n; ++d)
          acc += ginv(g, d) * (dG.at({a, b, d}) + dG.at({b, a, d}) - dG.at({d, a, b}));
        hol.at({g, a, b}) = 0.5 * acc;
      }

  const AdaptedFrame frame = adapted_frame(spec);
  const ExprMatrix e_sym = frame.frame_matrix();
  const Eigen::MatrixXd e = eval(e_sym, p);
  const Eigen::MatrixXd theta = eval(frame.coframe_matrix(spec), p);

  NumTensor out({n, n, n});
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B) {
      // nabla_{E_A} E_B in coordinates
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
      for (int g = 0; g < n; ++g) {
        double acc = 0.0;
        for (int al = 0; al < n; ++al) {
          if (e(al, A) == 0.0) continue;
          acc += e(al, A) * diff(e_sym[g][B], al).eval(p);
          for (int be = 0; be < n; ++be) acc += e(al, A) * e(be, B) * hol.at({g, al, be});
        }
        v(g) = acc;
      }
      const Eigen::VectorXd comps = theta * v;
      for (int C = 0; C < n; ++C) out.at({C, A, B}) = comps(C);
    }
  return out;
}

ExprMatrix phi_coordinate(const StructureSpec& spec) {
  if (!spec.phi) throw PhiAbsent("phi not given");
  const int n = spec.n;
  const AdaptedFrame frame = adapted_frame(spec);
  ExprMatrix block = zero_matrix(n, n);
  for (int a = 0; a < spec.m(); ++a)
    for (int b = 0; b < spec.m(); ++b) block[a][b] = (*spec.phi)[a][b];
  return matmul(matmul(frame.frame_matrix(), block), frame.coframe_matrix(spec));
}

Classification classify(const StructureSpec& spec, const std::vector<Point>& sample, double tol) {
  check_well_formed(spec);
  const int m = spec.m();
  const int n = spec.n;
  Classification out;

  std::vector<Expr> dng;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) dng.push_back(diff(spec.g[a][b], spec.xn()));
  for (const auto& p : sample)
    for (const auto& e : dng) out.k_contact_residual = std::max(out.k_contact_residual, std::abs(e.eval(p)));
  out.k_contact = out.k_contact_residual < tol;

  if (!spec.phi) return out;

  const AdmissibleTensor big_omega = fundamental_form(spec);
  const AdmissibleTensor w = omega(spec);
  for (const auto& p : sample)
    out.contact_metric_residual =
        std::max(out.contact_metric_residual, max_abs_diff(big_omega.eval(p), w.eval(p)));
  out.contact_metric = out.contact_metric_residual < tol;

  // N_phi(E_A, E_B) + 2 d eta(phi E_A, phi E_B) xi over all frame pairs.
  const ExprMatrix phi_c = phi_coordinate(spec);
  const AdaptedFrame frame = adapted_frame(spec);
  auto frame_vec = [&](int A) { return A < m ? frame.e[A] : frame.xi; };
  auto phi_frame = [&](int c, int A) { return A < m ? (*spec.phi)[c][A] : Expr(); };
  std::vector<VectorField> residuals;
  for (int A = 0; A < n; ++A)
    for (int B = A + 1; B < n; ++B) {
      VectorField r = nijenhuis(phi_c, frame_vec(A), frame_vec(B));
      Expr deta;
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          if (!w(c, d).is_zero()) deta += phi_frame(c, A) * phi_frame(d, B) * w(c, d);
      r[spec.xn()] += Expr(2.0) * deta;
      residuals.push_back(std::move(r));
    }
  for (const auto& p : sample)
    for (const auto& r : residuals)
      for (const auto& comp : r)
        out.almost_normal_residual = std::max(out.almost_normal_residual, std::abs(comp.eval(p)));
  out.almost_normal = out.almost_normal_residual < tol;
  return out;
}

bool is_projectible(const StructureSpec& spec, const AdmissibleTensor& t,
                    const std::vector<Point>& sample, double tol) {
  std::vector<Expr> d;
  for (const auto& c : t.components()) {
    Expr dc = diff(c, spec.xn());
    if (!dc.is_zero()) d.push_back(std::move(dc));
  }
  for (const auto& p : sample)
    for (const auto& e : d)
      if (std::abs(e.eval(p)) >= tol) return false;
  return true;
}

}  // namespace acg
