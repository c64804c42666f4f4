#include "acg/special.hpp"

#include <cmath>

namespace acg {

namespace {

FullConnection embed_interior(const StructureSpec& spec) {
  const int m = spec.m();
  const InteriorConnection inner = interior_metric_connection(spec);
  FullConnection full{AdmissibleTensor(spec.n, 1, 2)};
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) full.gamma(a, b, c) = inner.gamma(a, b, c);
  return full;
}

ExprMatrix full_metric(const StructureSpec& spec) {
  ExprMatrix g = zero_matrix(spec.n, spec.n);
  for (int a = 0; a < spec.m(); ++a)
    for (int b = 0; b < spec.m(); ++b) g[a][b] = spec.g[a][b];
  g[spec.xn()][spec.xn()] = Expr(1.0);
  return g;
}

}  // namespace

FullConnection bejancu_connection(const StructureSpec& spec) { return embed_interior(spec); }

FullConnection n_connection(const StructureSpec& spec) {
  FullConnection conn = embed_interior(spec);
  const AdmissibleTensor n = n_endomorphism(spec);
  for (int a = 0; a < spec.m(); ++a)
    for (int c = 0; c < spec.m(); ++c) conn.gamma(a, spec.xn(), c) = n(a, c);
  return conn;
}

Expr full_frame_derivative(const StructureSpec& spec, int a, const Expr& f) {
  if (a == spec.xn()) return diff(f, spec.xn());
  return frame_derivative(spec, a, f);
}

FrameField covariant_derivative(const StructureSpec& spec, const FullConnection& conn,
                                const FrameField& x, const FrameField& y) {
  const int n = spec.n;
  FrameField out(n);
  for (int c = 0; c < n; ++c) {
    Expr acc;
    for (int a = 0; a < n; ++a) {
      if (x[a].is_zero()) continue;
      Expr inner = full_frame_derivative(spec, a, y[c]);
      for (int b = 0; b < n; ++b)
        if (!conn.gamma(c, a, b).is_zero() && !y[b].is_zero()) inner += conn.gamma(c, a, b) * y[b];
      if (!inner.is_zero()) acc += x[a] * inner;
    }
    out[c] = acc;
  }
  return out;
}

FrameField frame_bracket(const StructureSpec& spec, const FrameField& x, const FrameField& y) {
  const AdaptedFrame frame = adapted_frame(spec);
  const ExprMatrix e = frame.frame_matrix();
  const ExprMatrix theta = frame.coframe_matrix(spec);
  auto to_coords = [&](const FrameField& f) {
    VectorField v(spec.n);
    for (int i = 0; i < spec.n; ++i)
      for (int a = 0; a < spec.n; ++a)
        if (!e[i][a].is_zero() && !f[a].is_zero()) v[i] += e[i][a] * f[a];
    return v;
  };
  const VectorField br = lie_bracket(to_coords(x), to_coords(y));
  FrameField out(spec.n);
  for (int a = 0; a < spec.n; ++a)
    for (int i = 0; i < spec.n; ++i)
      if (!theta[a][i].is_zero() && !br[i].is_zero()) out[a] += theta[a][i] * br[i];
  return out;
}

Eigen::VectorXd n_connection_torsion(const StructureSpec& spec, const FrameField& x,
                                     const FrameField& y, const Point& p) {
  const int m = spec.m();
  const NumTensor w = omega(spec).eval(p);
  const NumTensor nv = n_endomorphism(spec).eval(p);
  const Eigen::VectorXd xv = eval(x, p);
  const Eigen::VectorXd yv = eval(y, p);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(spec.n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) s[spec.xn()] += 2.0 * w.at({a, b}) * xv[a] * yv[b];
  const double eta_x = xv[spec.xn()];
  const double eta_y = yv[spec.xn()];
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) s[a] += nv.at({a, b}) * (eta_x * yv[b] - eta_y * xv[b]);
  return s;
}

Eigen::VectorXd connection_torsion(const StructureSpec& spec, const FullConnection& conn,
                                   const FrameField& x, const FrameField& y, const Point& p) {
  const FrameField xy = covariant_derivative(spec, conn, x, y);
  const FrameField yx = covariant_derivative(spec, conn, y, x);
  const FrameField br = frame_bracket(spec, x, y);
  return eval(xy, p) - eval(yx, p) - eval(br, p);
}

MetricityReport metricity_check(const StructureSpec& spec, const FullConnection& conn,
                                const std::vector<Point>& sample) {
  const int n = spec.n;
  const ExprMatrix g = full_metric(spec);
  std::vector<Expr> residual;
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Expr r = full_frame_derivative(spec, c, g[a][b]);
        for (int d = 0; d < n; ++d) {
          if (!conn.gamma(d, c, a).is_zero() && !g[d][b].is_zero()) r -= conn.gamma(d, c, a) * g[d][b];
          if (!conn.gamma(d, c, b).is_zero() && !g[a][d].is_zero()) r -= conn.gamma(d, c, b) * g[a][d];
        }
        residual.push_back(r);
      }
  MetricityReport report;
  for (const auto& p : sample)
    for (std::size_t k = 0; k < residual.size(); ++k) {
      const double v = std::abs(residual[k].eval(p));
      if (v > report.max_residual) {
        report.max_residual = v;
        const int idx = static_cast<int>(k);
        report.worst = {idx / (n * n), (idx / n) % n, idx % n};
      }
    }
  return report;
}

}  // namespace acg
