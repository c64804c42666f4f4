#include "acg/prolonged.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "acg/errors.hpp"
#include "acg/sampling.hpp"

namespace acg {

namespace {

Expr fiber(const StructureSpec& spec, int a) { return Expr::var(fiber_coordinate(spec, a)); }

bool both(const Expr& a, const Expr& b) { return !a.is_zero() && !b.is_zero(); }

ExprMatrix multiply(const ExprMatrix& a, const ExprMatrix& b) {
  const std::size_t rows = a.size();
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  ExprMatrix out(rows, std::vector<Expr>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

ExprMatrix transpose(const ExprMatrix& a) {
  ExprMatrix out(a.empty() ? 0 : a[0].size(), std::vector<Expr>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
  return out;
}

double max_over(const std::vector<Expr>& exprs, const std::vector<Point>& sample) {
  double r = 0.0;
  for (const auto& p : sample) {
    PointEvaluator ev(p);
    for (const auto& e : exprs)
      if (!e.is_zero()) r = std::max(r, std::abs(ev(e)));
  }
  return r;
}

double max_over(const ExprMatrix& m, const std::vector<Point>& sample) {
  std::vector<Expr> flat;
  for (const auto& row : m) flat.insert(flat.end(), row.begin(), row.end());
  return max_over(flat, sample);
}

std::vector<Expr> difference(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  std::vector<Expr> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

// Frame components of d_n: u + N^a_b x^{n+b} V_a.
std::vector<Expr> dn_in_frame(const Prolongation& pr) {
  const StructureSpec& s = pr.spec;
  std::vector<Expr> out(prolonged_dim(s));
  out[pr.frame.u()] = Expr(1.0);
  for (int a = 0; a < s.m(); ++a)
    for (int b = 0; b < s.m(); ++b)
      if (!pr.n_endo(a, b).is_zero()) out[pr.frame.vert(a)] += pr.n_endo(a, b) * fiber(s, b);
  return out;
}

ExprMatrix build_cobasis(const StructureSpec& spec, const InteriorConnection& conn,
                         const AdmissibleTensor& n_endo, bool use_theta) {
  const int n = spec.n;
  const int m = spec.m();
  const int dim = 2 * n - 1;
  ExprMatrix theta = zero_matrix(dim, dim);
  for (int a = 0; a < m; ++a) theta[a][a] = Expr(1.0);
  theta[n - 1][n - 1] = Expr(1.0);
  for (int a = 0; a < m; ++a) theta[n - 1][a] = spec.gamma_n[a];
  for (int a = 0; a < m; ++a) {
    std::vector<Expr>& row = theta[n + a];
    row[n + a] = Expr(1.0);
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (!conn.gamma(a, b, c).is_zero()) row[b] += conn.gamma(a, b, c) * fiber(spec, c);
    Expr nx;
    for (int b = 0; b < m; ++b)
      if (!n_endo(a, b).is_zero()) nx += n_endo(a, b) * fiber(spec, b);
    if (nx.is_zero()) continue;
    if (use_theta) {
      for (int k = 0; k < n; ++k)
        if (!theta[n - 1][k].is_zero()) row[k] += nx * theta[n - 1][k];
    } else {
      row[n - 1] += nx;
    }
  }
  return theta;
}

}  // namespace

ExprMatrix ProlongedFrame::matrix() const {
  ExprMatrix out = zero_matrix(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    for (int k = 0; k < dim(); ++k) out[k][i] = fields[i][k];
  return out;
}

int prolonged_dim(const StructureSpec& spec) { return 2 * spec.n - 1; }
int fiber_coordinate(const StructureSpec& spec, int a) { return spec.n + a; }

Prolongation prolong(const StructureSpec& spec, const AdmissibleTensor& n_endo) {
  check_well_formed(spec);
  if (n_endo.dim() != spec.m() || n_endo.upper() != 1 || n_endo.lower() != 1)
    throw DimensionMismatch("N must be an admissible (1,1) tensor");
  Prolongation pr;
  pr.spec = spec;
  pr.conn = interior_metric_connection(spec);
  pr.n_endo = n_endo;
  pr.omega = omega(spec);
  pr.curvature = schouten(spec, pr.conn);
  pr.p = p_tensor(spec, pr.conn);
  pr.nabla_n = cov_deriv(spec, pr.conn, n_endo);

  const int n = spec.n;
  const int m = spec.m();
  const int dim = prolonged_dim(spec);
  ProlongedFrame& f = pr.frame;
  f.n = n;
  f.fields.assign(dim, VectorField(dim));
  for (int a = 0; a < m; ++a) {
    VectorField& e = f.fields[f.eps(a)];
    e[a] = Expr(1.0);
    e[n - 1] = -spec.gamma_n[a];
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (!pr.conn.gamma(b, a, c).is_zero()) e[n + b] -= pr.conn.gamma(b, a, c) * fiber(spec, c);
  }
  VectorField& u = f.fields[f.u()];
  u[n - 1] = Expr(1.0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (!n_endo(a, b).is_zero()) u[n + a] -= n_endo(a, b) * fiber(spec, b);
  for (int a = 0; a < m; ++a) f.fields[f.vert(a)][n + a] = Expr(1.0);
  f.cobasis = build_cobasis(spec, pr.conn, n_endo, true);
  return pr;
}

Prolongation prolong_flat(const StructureSpec& spec) {
  return prolong(spec, AdmissibleTensor(spec.m(), 1, 1));
}

Prolongation prolong_structural(const StructureSpec& spec) {
  return prolong(spec, n_endomorphism(spec));
}

ExprMatrix literal_cobasis(const Prolongation& pr) {
  return build_cobasis(pr.spec, pr.conn, pr.n_endo, false);
}

Eigen::MatrixXd frame_at(const Prolongation& pr, const Point& pp) { return eval(pr.frame.matrix(), pp); }
Eigen::MatrixXd cobasis_at(const Prolongation& pr, const Point& pp) { return eval(pr.frame.cobasis, pp); }

VectorField frame_to_coords(const ProlongedFrame& f, const std::vector<Expr>& comps) {
  VectorField v(f.dim());
  for (int i = 0; i < f.dim(); ++i) {
    if (comps[i].is_zero()) continue;
    for (int k = 0; k < f.dim(); ++k)
      if (!f.fields[i][k].is_zero()) v[k] += comps[i] * f.fields[i][k];
  }
  return v;
}

std::vector<Expr> coords_to_frame(const ProlongedFrame& f, const VectorField& v) {
  std::vector<Expr> out(f.dim());
  for (int i = 0; i < f.dim(); ++i)
    for (int k = 0; k < f.dim(); ++k)
      if (both(f.cobasis[i][k], v[k])) out[i] += f.cobasis[i][k] * v[k];
  return out;
}

std::vector<Expr> prolonged_bracket(const Prolongation& pr, int i, int j) {
  return coords_to_frame(pr.frame, lie_bracket(pr.frame.fields[i], pr.frame.fields[j]));
}

double StructureEquationReport::max() const { return std::max({eps_eps, eps_u, eps_vert}); }

StructureEquationReport structure_equation_residuals(const Prolongation& pr,
                                                     const std::vector<Point>& sample) {
  const StructureSpec& s = pr.spec;
  const ProlongedFrame& f = pr.frame;
  const int m = s.m();
  const int dim = f.dim();
  StructureEquationReport report;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a != b) {
        std::vector<Expr> rhs(dim);
        rhs[f.u()] = Expr(2.0) * pr.omega(b, a);
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d) {
            const Expr coeff = Expr(2.0) * pr.omega(b, a) * pr.n_endo(c, d) + pr.curvature(c, b, a, d);
            if (!coeff.is_zero()) rhs[f.vert(c)] += fiber(s, d) * coeff;
          }
        const VectorField lhs = lie_bracket(f.fields[f.eps(a)], f.fields[f.eps(b)]);
        report.eps_eps = std::max(report.eps_eps, max_over(difference(lhs, frame_to_coords(f, rhs)), sample));
      }
      std::vector<Expr> rhs(dim);
      for (int c = 0; c < m; ++c) rhs[f.vert(c)] = pr.conn.gamma(c, a, b);
      const VectorField lhs = lie_bracket(f.fields[f.eps(a)], f.fields[f.vert(b)]);
      report.eps_vert = std::max(report.eps_vert, max_over(difference(lhs, frame_to_coords(f, rhs)), sample));
    }
    std::vector<Expr> rhs(dim);
    for (int c = 0; c < m; ++c)
      for (int d = 0; d < m; ++d) {
        const Expr coeff = pr.p(c, a, d) - pr.nabla_n(c, a, d);
        if (!coeff.is_zero()) rhs[f.vert(c)] += fiber(s, d) * coeff;
      }
    const VectorField lhs = lie_bracket(f.fields[f.eps(a)], f.fields[f.u()]);
    report.eps_u = std::max(report.eps_u, max_over(difference(lhs, frame_to_coords(f, rhs)), sample));
  }
  return report;
}

Eigen::VectorXd prolonged_curvature(const Prolongation& pr, const Eigen::VectorXd& u,
                                    const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                                    const Point& p) {
  const int m = pr.spec.m();
  const NumTensor om = pr.omega.eval(p);
  const NumTensor nn = pr.n_endo.eval(p);
  const NumTensor r = pr.curvature.eval(p);
  double omega_uv = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) omega_uv += om.at({a, b}) * u[a] * v[b];
  Eigen::VectorXd k = Eigen::VectorXd::Zero(m);
  for (int c = 0; c < m; ++c)
    for (int d = 0; d < m; ++d) {
      k[c] += 2.0 * omega_uv * nn.at({c, d}) * w[d];
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) k[c] += r.at({c, a, b, d}) * u[a] * v[b] * w[d];
    }
  return k;
}

Eigen::VectorXd prolonged_curvature_xi(const Prolongation& pr, const Eigen::VectorXd& u,
                                       const Eigen::VectorXd& w, const Point& p) {
  const int m = pr.spec.m();
  const NumTensor pt = pr.p.eval(p);
  const NumTensor dn = pr.nabla_n.eval(p);
  Eigen::VectorXd k = Eigen::VectorXd::Zero(m);
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a)
      for (int d = 0; d < m; ++d) k[c] += (pt.at({c, a, d}) - dn.at({c, a, d})) * u[a] * w[d];
  return k;
}

Eigen::VectorXd curvature_from_brackets(const Prolongation& pr, int i, int j, const Point& pp) {
  const std::vector<Expr> br = prolonged_bracket(pr, i, j);
  Eigen::VectorXd k(pr.spec.m());
  for (int c = 0; c < pr.spec.m(); ++c) k[c] = -br[pr.frame.vert(c)].eval(pp);
  return k;
}

double prolonged_curvature_residual(const Prolongation& pr, const std::vector<Point>& sample) {
  const StructureSpec& s = pr.spec;
  const int m = s.m();
  const ProlongedFrame& f = pr.frame;
  auto unit = [m](int a) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e[a] = 1.0;
    return e;
  };
  auto vertical = [&](int i, int j) {
    const std::vector<Expr> br = prolonged_bracket(pr, i, j);
    return std::vector<Expr>(br.begin() + f.vert(0), br.end());
  };
  double worst = 0.0;
  for (int a = 0; a < m; ++a) {
    const std::vector<Expr> xi_a = vertical(f.u(), f.eps(a));
    std::vector<std::vector<Expr>> eps_ab(m);
    for (int b = 0; b < m; ++b)
      if (b != a) eps_ab[b] = vertical(f.eps(a), f.eps(b));
    for (const auto& pp : sample) {
      Eigen::VectorXd w(m);
      for (int d = 0; d < m; ++d) w[d] = pp[fiber_coordinate(s, d)];
      const Eigen::VectorXd kx = prolonged_curvature_xi(pr, unit(a), w, pp);
      for (int c = 0; c < m; ++c) worst = std::max(worst, std::abs(kx[c] + xi_a[c].eval(pp)));
      for (int b = 0; b < m; ++b) {
        if (b == a) continue;
        const Eigen::VectorXd k = prolonged_curvature(pr, unit(a), unit(b), w, pp);
        for (int c = 0; c < m; ++c) worst = std::max(worst, std::abs(k[c] + eps_ab[b][c].eval(pp)));
      }
    }
  }
  return worst;
}

ProlongedStructure prolonged_structure(const Prolongation& pr) {
  const StructureSpec& s = pr.spec;
  const ProlongedFrame& f = pr.frame;
  const int m = s.m();
  const int dim = f.dim();
  ProlongedStructure st;
  st.j_frame = zero_matrix(dim, dim);
  st.g_frame = zero_matrix(dim, dim);
  for (int a = 0; a < m; ++a) {
    st.j_frame[f.vert(a)][f.eps(a)] = Expr(1.0);
    st.j_frame[f.eps(a)][f.vert(a)] = Expr(-1.0);
    for (int b = 0; b < m; ++b) {
      st.g_frame[f.eps(a)][f.eps(b)] = s.g[a][b];
      st.g_frame[f.vert(a)][f.vert(b)] = s.g[a][b];
    }
  }
  st.g_frame[f.u()][f.u()] = Expr(1.0);
  st.lambda_frame.assign(dim, Expr());
  st.lambda_frame[f.u()] = Expr(1.0);

  const ExprMatrix e = f.matrix();
  st.j_coords = multiply(multiply(e, st.j_frame), f.cobasis);
  st.g_coords = multiply(multiply(transpose(f.cobasis), st.g_frame), f.cobasis);
  st.lambda_coords = f.cobasis[f.u()];
  return st;
}

double ProlongedAxiomReport::max() const {
  return std::max({j_squared, lambda_u, lambda_j, metric_compat});
}

ProlongedAxiomReport prolonged_axioms(const Prolongation& pr, const ProlongedStructure& st,
                                      const std::vector<Point>& sample, std::uint64_t seed) {
  const int dim = pr.frame.dim();
  Sampler rng(seed);
  ProlongedAxiomReport report;
  for (const auto& pp : sample) {
    const Eigen::MatrixXd j = eval(st.j_coords, pp);
    const Eigen::MatrixXd g = eval(st.g_coords, pp);
    const Eigen::VectorXd lambda = eval(st.lambda_coords, pp);
    const Eigen::VectorXd u = eval(pr.frame.fields[pr.frame.u()], pp);
    report.lambda_u = std::max(report.lambda_u, std::abs(lambda.dot(u) - 1.0));
    for (int trial = 0; trial < 4; ++trial) {
      Eigen::VectorXd x(dim), y(dim);
      for (int k = 0; k < dim; ++k) x[k] = rng.uniform(-1, 1);
      for (int k = 0; k < dim; ++k) y[k] = rng.uniform(-1, 1);
      const Eigen::VectorXd j2x = j * (j * x) + x - lambda.dot(x) * u;
      report.j_squared = std::max(report.j_squared, j2x.cwiseAbs().maxCoeff());
      report.lambda_j = std::max(report.lambda_j, std::abs(lambda.dot(j * x)));
      const double lhs = (j * x).dot(g * (j * y));
      const double rhs = x.dot(g * y) - lambda.dot(x) * lambda.dot(y);
      report.metric_compat = std::max(report.metric_compat, std::abs(lhs - rhs));
    }
  }
  return report;
}

ExprMatrix omega_tilde(const Prolongation& pr) {
  const int dim = pr.frame.dim();
  const std::vector<Expr>& lambda = pr.frame.cobasis[pr.frame.u()];
  ExprMatrix w = zero_matrix(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) w[i][j] = Expr(0.5) * (diff(lambda[j], i) - diff(lambda[i], j));
  const ExprMatrix e = pr.frame.matrix();
  return multiply(multiply(transpose(e), w), e);
}

int numeric_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(tol);
  return static_cast<int>(lu.rank());
}

OmegaTildeReport omega_tilde_report(const Prolongation& pr, const std::vector<Point>& sample) {
  const int m = pr.spec.m();
  const int dim = pr.frame.dim();
  const ExprMatrix wt = omega_tilde(pr);
  OmegaTildeReport report;
  report.rank_min = dim;
  report.base_rank_min = m;
  for (const auto& pp : sample) {
    const Eigen::MatrixXd w = eval(wt, pp);
    const NumTensor om = pr.omega.eval(pp);
    Eigen::MatrixXd base(m, m);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        if (i < m && j < m) {
          base(i, j) = om.at({i, j});
          report.pushdown = std::max(report.pushdown, std::abs(w(i, j) - base(i, j)));
        } else {
          report.off_block = std::max(report.off_block, std::abs(w(i, j)));
        }
      }
    const int r = numeric_rank(w);
    const int rb = numeric_rank(base);
    report.rank_min = std::min(report.rank_min, r);
    report.rank_max = std::max(report.rank_max, r);
    report.base_rank_min = std::min(report.base_rank_min, rb);
    report.base_rank_max = std::max(report.base_rank_max, rb);
  }
  return report;
}

ExprMatrix lie_u_gtilde(const Prolongation& pr) {
  const ProlongedFrame& f = pr.frame;
  const int dim = f.dim();
  const ProlongedStructure st = prolonged_structure(pr);
  const VectorField& u = f.fields[f.u()];
  // brackets[i] = frame components of [u, F_i]
  std::vector<std::vector<Expr>> brackets(dim);
  for (int i = 0; i < dim; ++i) brackets[i] = prolonged_bracket(pr, f.u(), i);
  ExprMatrix out = zero_matrix(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Expr acc = directional_derivative(u, st.g_frame[i][j]);
      for (int k = 0; k < dim; ++k) {
        if (both(brackets[i][k], st.g_frame[k][j])) acc -= brackets[i][k] * st.g_frame[k][j];
        if (both(brackets[j][k], st.g_frame[i][k])) acc -= st.g_frame[i][k] * brackets[j][k];
      }
      out[i][j] = acc;
    }
  return out;
}

ExprMatrix lie_u_gtilde_coordinate(const Prolongation& pr, const ProlongedStructure& st) {
  const int dim = pr.frame.dim();
  const VectorField& u = pr.frame.fields[pr.frame.u()];
  const ExprMatrix& g = st.g_coords;
  ExprMatrix l = zero_matrix(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Expr acc = directional_derivative(u, g[i][j]);
      for (int k = 0; k < dim; ++k) {
        const Expr diu = diff(u[k], i);
        const Expr dju = diff(u[k], j);
        if (both(g[k][j], diu)) acc += g[k][j] * diu;
        if (both(g[i][k], dju)) acc += g[i][k] * dju;
      }
      l[i][j] = acc;
    }
  const ExprMatrix e = pr.frame.matrix();
  return multiply(multiply(transpose(e), l), e);
}

ExprMatrix lie_u_gtilde_display(const Prolongation& pr) {
  const StructureSpec& s = pr.spec;
  const ProlongedFrame& f = pr.frame;
  const int m = s.m();
  ExprMatrix out = zero_matrix(f.dim(), f.dim());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const Expr dg = diff(s.g[a][b], s.xn());
      out[f.eps(a)][f.eps(b)] = dg;
      Expr vv = dg;
      for (int c = 0; c < m; ++c) {
        if (both(s.g[a][c], pr.n_endo(c, b))) vv -= s.g[a][c] * pr.n_endo(c, b);
        if (both(s.g[c][b], pr.n_endo(c, a))) vv -= s.g[c][b] * pr.n_endo(c, a);
      }
      out[f.vert(a)][f.vert(b)] = vv;
      Expr mixed;
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          const Expr inner = pr.p(c, b, d) - pr.nabla_n(c, b, d);
          if (both(s.g[a][c], inner)) mixed += s.g[a][c] * inner * fiber(s, d);
        }
      out[f.vert(a)][f.eps(b)] = mixed;
      out[f.eps(b)][f.vert(a)] = mixed;
    }
  return out;
}

LieDerivativeReport lie_derivative_report(const Prolongation& pr, const std::vector<Point>& sample) {
  const ExprMatrix computed = lie_u_gtilde(pr);
  const ExprMatrix display = lie_u_gtilde_display(pr);
  ExprMatrix diffs(computed.size());
  for (std::size_t i = 0; i < computed.size(); ++i) diffs[i] = difference(computed[i], display[i]);
  LieDerivativeReport report;
  report.display_residual = max_over(diffs, sample);
  report.max_component = max_over(computed, sample);
  return report;
}

KContactVerdict k_contact_verdict(const StructureSpec& spec, const std::vector<Point>& base_sample,
                                  const std::vector<Point>& prolonged_sample, double tol) {
  KContactVerdict v;
  const Classification c = classify(spec, base_sample, tol);
  v.base_k_contact = c.k_contact;
  v.base_residual = c.k_contact_residual;
  v.prolonged_residual = lie_derivative_report(prolong_structural(spec), prolonged_sample).max_component;
  v.prolonged_almost_k_contact = v.prolonged_residual < tol;
  return v;
}

std::vector<Expr> nijenhuis_j(const Prolongation& pr, const ProlongedStructure& st, int i, int j) {
  return coords_to_frame(pr.frame, nijenhuis(st.j_coords, pr.frame.fields[i], pr.frame.fields[j]));
}

namespace {

enum class Kind { Eps, U, Vert };

Kind kind_of(const ProlongedFrame& f, int i) {
  if (i < f.u()) return Kind::Eps;
  if (i == f.u()) return Kind::U;
  return Kind::Vert;
}

int slot(const ProlongedFrame& f, int i) { return kind_of(f, i) == Kind::Vert ? i - f.vert(0) : i; }

// (eps_a, eps_b) and (V_a, V_b) displays, with R^e_abc or, when transposed, R^e_bac.
std::vector<Expr> curvature_display(const Prolongation& pr, int a, int b, bool vertical_pair,
                                    bool transposed) {
  const StructureSpec& s = pr.spec;
  const ProlongedFrame& f = pr.frame;
  const int m = s.m();
  std::vector<Expr> out(f.dim());
  const double sign = vertical_pair ? 1.0 : -1.0;
  for (int e = 0; e < m; ++e)
    for (int c = 0; c < m; ++c) {
      const Expr& r = transposed ? pr.curvature(e, b, a, c) : pr.curvature(e, a, b, c);
      if (!r.is_zero()) out[f.vert(e)] += Expr(sign) * r * fiber(s, c);
    }
  if (vertical_pair) {
    const std::vector<Expr> dn = dn_in_frame(pr);
    const Expr w = Expr(2.0) * pr.omega(b, a);
    for (int k = 0; k < f.dim(); ++k)
      if (both(w, dn[k])) out[k] += w * dn[k];
  }
  return out;
}

}  // namespace

std::optional<std::vector<Expr>> nijenhuis_display(const Prolongation& pr, int i, int j) {
  const StructureSpec& s = pr.spec;
  const ProlongedFrame& f = pr.frame;
  const int m = s.m();
  const Kind ki = kind_of(f, i);
  const Kind kj = kind_of(f, j);
  const int a = slot(f, i);
  const int b = slot(f, j);
  if (ki == Kind::Eps && kj == Kind::Eps) return curvature_display(pr, a, b, false, false);
  if (ki == Kind::Vert && kj == Kind::Vert) return curvature_display(pr, a, b, true, false);
  if (ki == Kind::Eps && kj == Kind::Vert) return std::vector<Expr>(f.dim());
  if ((ki == Kind::Eps || ki == Kind::Vert) && kj == Kind::U) {
    std::vector<Expr> out(f.dim());
    for (int c = 0; c < m; ++c)
      for (int d = 0; d < m; ++d)
        if (!pr.p(c, a, d).is_zero()) out[f.vert(c)] -= pr.p(c, a, d) * fiber(s, d);
    return out;
  }
  return std::nullopt;
}

double NijenhuisReport::display_max() const {
  return std::max({eps_eps, vert_vert, eps_vert, eps_u, vert_u});
}

NijenhuisReport nijenhuis_report(const Prolongation& pr, const std::vector<Point>& sample) {
  const ProlongedFrame& f = pr.frame;
  const ProlongedStructure st = prolonged_structure(pr);
  const int dim = f.dim();
  NijenhuisReport report;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (i == j) continue;
      const std::vector<Expr> nj = nijenhuis_j(pr, st, i, j);
      std::vector<Expr> projected = nj;
      projected[f.u()] = Expr();
      report.projected = std::max(report.projected, max_over(projected, sample));

      const auto display = nijenhuis_display(pr, i, j);
      if (!display) continue;
      const double r = max_over(difference(nj, *display), sample);
      const Kind ki = kind_of(f, i);
      const Kind kj = kind_of(f, j);
      if (ki == Kind::Eps && kj == Kind::Eps) {
        report.eps_eps = std::max(report.eps_eps, r);
        const auto t = curvature_display(pr, slot(f, i), slot(f, j), false, true);
        report.eps_eps_transposed = std::max(report.eps_eps_transposed, max_over(difference(nj, t), sample));
      } else if (ki == Kind::Vert && kj == Kind::Vert) {
        report.vert_vert = std::max(report.vert_vert, r);
        const auto t = curvature_display(pr, slot(f, i), slot(f, j), true, true);
        report.vert_vert_transposed =
            std::max(report.vert_vert_transposed, max_over(difference(nj, t), sample));
      } else if (ki == Kind::Eps && kj == Kind::Vert) {
        report.eps_vert = std::max(report.eps_vert, r);
      } else if (ki == Kind::Eps) {
        report.eps_u = std::max(report.eps_u, r);
      } else {
        report.vert_u = std::max(report.vert_u, r);
      }
    }
  return report;
}

NormalVerdict normal_verdict(const StructureSpec& spec, const std::vector<Point>& base_sample,
                             const std::vector<Point>& prolonged_sample, double tol) {
  if (!classify(spec, base_sample, tol).k_contact)
    throw NotKContact("the base structure is not K-contact");
  const Prolongation pr = prolong_flat(spec);
  NormalVerdict v;
  v.projected_residual = nijenhuis_report(pr, prolonged_sample).projected;
  v.curvature_residual = max_abs(pr.curvature, base_sample);
  v.prolonged_almost_normal = v.projected_residual < tol;
  v.zero_curvature = v.curvature_residual < tol;
  return v;
}

}  // namespace acg
