#include "acg/interior.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "acg/errors.hpp"

namespace acg {

InteriorConnection interior_metric_connection(const StructureSpec& spec, ChristoffelSigns signs) {
  check_well_formed(spec);
  return {adapted_christoffel(spec, signs)};
}

AdmissibleTensor cov_deriv(const StructureSpec& spec, const InteriorConnection& conn,
                           const AdmissibleTensor& t) {
  const int m = t.dim();
  const int p = t.upper();
  const int q = t.lower();
  AdmissibleTensor out(m, p, q + 1);
  std::vector<int> src(static_cast<std::size_t>(p + q));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const std::vector<int> idx = out.index_of(flat);
    const int k = idx[p];
    for (int i = 0; i < p; ++i) src[i] = idx[i];
    for (int j = 0; j < q; ++j) src[p + j] = idx[p + 1 + j];

    Expr acc = frame_derivative(spec, k, t.at(src));
    for (int i = 0; i < p; ++i) {
      std::vector<int> s = src;
      for (int e = 0; e < m; ++e) {
        const Expr& g = conn.gamma(idx[i], k, e);
        if (g.is_zero()) continue;
        s[i] = e;
        const Expr& c = t.at(s);
        if (!c.is_zero()) acc += g * c;
      }
    }
    for (int j = 0; j < q; ++j) {
      std::vector<int> s = src;
      for (int e = 0; e < m; ++e) {
        const Expr& g = conn.gamma(e, k, src[p + j]);
        if (g.is_zero()) continue;
        s[p + j] = e;
        const Expr& c = t.at(s);
        if (!c.is_zero()) acc -= g * c;
      }
    }
    out.components()[flat] = acc;
  }
  return out;
}

AdmissibleTensor torsion(const InteriorConnection& conn) {
  const int m = conn.gamma.dim();
  AdmissibleTensor s(m, 1, 2);
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) s(c, a, b) = conn.gamma(c, a, b) - conn.gamma(c, b, a);
  return s;
}

AdmissibleTensor schouten(const StructureSpec& spec, const InteriorConnection& conn) {
  const int m = spec.m();
  const AdmissibleTensor& g = conn.gamma;
  AdmissibleTensor r(m, 1, 3);
  for (int d = 0; d < m; ++d)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
          Expr acc = frame_derivative(spec, a, g(d, b, c)) - frame_derivative(spec, b, g(d, a, c));
          for (int e = 0; e < m; ++e) {
            if (!g(d, a, e).is_zero() && !g(e, b, c).is_zero()) acc += g(d, a, e) * g(e, b, c);
            if (!g(d, b, e).is_zero() && !g(e, a, c).is_zero()) acc -= g(d, b, e) * g(e, a, c);
          }
          r(d, a, b, c) = acc;
        }
  return r;
}

AdmissibleField covariant_derivative(const StructureSpec& spec, const InteriorConnection& conn,
                                     const AdmissibleField& u, const AdmissibleField& w) {
  const int m = spec.m();
  AdmissibleField out(m);
  for (int d = 0; d < m; ++d) {
    Expr acc;
    for (int a = 0; a < m; ++a) {
      if (u[a].is_zero()) continue;
      Expr inner = frame_derivative(spec, a, w[d]);
      for (int e = 0; e < m; ++e)
        if (!conn.gamma(d, a, e).is_zero() && !w[e].is_zero()) inner += conn.gamma(d, a, e) * w[e];
      if (!inner.is_zero()) acc += u[a] * inner;
    }
    out[d] = acc;
  }
  return out;
}

AdmissibleField projected_bracket(const StructureSpec& spec, const AdmissibleField& u,
                                  const AdmissibleField& v) {
  const AdaptedFrame frame = adapted_frame(spec);
  auto lift = [&](const AdmissibleField& f) {
    VectorField out(spec.n);
    for (int a = 0; a < spec.m(); ++a) out = add(out, scale(f[a], frame.e[a]));
    return out;
  };
  // p(d_a) = e_a and p(d_n) = 0, so the frame components of p[U,V] are the
  // first n-1 coordinate components of [U,V].
  const VectorField br = lie_bracket(lift(u), lift(v));
  return AdmissibleField(br.begin(), br.begin() + spec.m());
}

AdmissibleField curvature_operator(const StructureSpec& spec, const InteriorConnection& conn,
                                   const AdmissibleField& u, const AdmissibleField& v,
                                   const AdmissibleField& w) {
  const AdmissibleField uvw = covariant_derivative(spec, conn, u, covariant_derivative(spec, conn, v, w));
  const AdmissibleField vuw = covariant_derivative(spec, conn, v, covariant_derivative(spec, conn, u, w));
  const AdmissibleField pw =
      covariant_derivative(spec, conn, projected_bracket(spec, u, v), w);
  AdmissibleField out(spec.m());
  for (int d = 0; d < spec.m(); ++d) out[d] = uvw[d] - vuw[d] - pw[d];
  return out;
}

AdmissibleTensor p_tensor(const StructureSpec& spec, const InteriorConnection& conn) {
  AdmissibleTensor p(spec.m(), 1, 2);
  for (std::size_t i = 0; i < p.size(); ++i)
    p.components()[i] = diff(conn.gamma.components()[i], spec.xn());
  return p;
}

AdmissibleTensor n_endomorphism(const StructureSpec& spec) {
  const int m = spec.m();
  const AdmissibleTensor ginv = inverse_metric(spec);
  AdmissibleTensor n(m, 1, 1);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        const Expr dg = diff(spec.g[c][b], spec.xn());
        if (!dg.is_zero() && !ginv(a, c).is_zero()) n(a, b) += ginv(a, c) * (Expr(0.5) * dg);
      }
  return n;
}

ImplicitNReport n_implicit_check(const StructureSpec& spec, const InteriorConnection& conn,
                                 const std::vector<Point>& sample) {
  const int m = spec.m();
  const AdmissibleTensor r = schouten(spec, conn);
  const AdmissibleTensor n_direct = n_endomorphism(spec);
  const AdmissibleTensor w = omega(spec);
  std::vector<Expr> dng;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) dng.push_back(diff(spec.g[a][b], spec.xn()));

  ImplicitNReport report;
  for (const auto& p : sample) {
    const NumTensor rv = r.eval(p);
    const NumTensor nv = n_direct.eval(p);
    const NumTensor wv = w.eval(p);
    const Eigen::MatrixXd g = eval(spec.g, p);
    const Eigen::MatrixXd ginv = g.inverse();
    Eigen::MatrixXd wm(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) wm(a, b) = wv.at({a, b});
    Eigen::FullPivLU<Eigen::MatrixXd> lu(wm);
    if (!lu.isInvertible()) throw DegenerateOmega("omega is singular at a sample point");
    const Eigen::MatrixXd winv = lu.inverse();  // winv(a, e) w(e, b) = delta

    for (int f = 0; f < m; ++f)
      for (int b = 0; b < m; ++b) {
        double acc = 0.0;
        for (int e = 0; e < m; ++e)
          for (int a = 0; a < m; ++a) {
            double term = rv.at({f, e, a, b});
            for (int c = 0; c < m; ++c)
              for (int d = 0; d < m; ++d) term += g(b, d) * ginv(c, f) * rv.at({d, e, a, c});
            acc += winv(e, a) * term;
          }
        acc /= 4.0 * m;
        report.implicit_vs_direct = std::max(report.implicit_vs_direct, std::abs(acc - nv.at({f, b})));
      }

    for (int e = 0; e < m; ++e)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int c = 0; c < m; ++c) {
            double curv = 0.0;
            for (int d = 0; d < m; ++d)
              curv += g(d, c) * rv.at({d, e, a, b}) + g(b, d) * rv.at({d, e, a, c});
            const double dn = dng[static_cast<std::size_t>(b * m + c)].eval(p);
            report.alternation =
                std::max(report.alternation, std::abs(2.0 * wv.at({a, e}) * dn - curv));
            report.alternation_transposed =
                std::max(report.alternation_transposed, std::abs(2.0 * wv.at({e, a}) * dn - curv));
          }
  }
  return report;
}

double max_abs(const AdmissibleTensor& t, const std::vector<Point>& sample) {
  double r = 0.0;
  for (const auto& p : sample) r = std::max(r, t.eval(p).max_abs());
  return r;
}

double metricity_residual(const StructureSpec& spec, const InteriorConnection& conn,
                          const std::vector<Point>& sample) {
  return max_abs(cov_deriv(spec, conn, metric(spec)), sample);
}

double n_symmetry_residual(const StructureSpec& spec, const AdmissibleTensor& n,
                           const std::vector<Point>& sample) {
  const int m = spec.m();
  AdmissibleTensor lowered(m, 0, 2);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) lowered(a, b) += spec.g[a][c] * n(c, b);
  AdmissibleTensor skew(m, 0, 2);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) skew(a, b) = lowered(a, b) - lowered(b, a);
  return max_abs(skew, sample);
}

bool is_zero_curvature(const StructureSpec& spec, const InteriorConnection& conn,
                       const std::vector<Point>& sample, double tol) {
  return max_abs(schouten(spec, conn), sample) < tol;
}

bool is_k_contact(const StructureSpec& spec, const std::vector<Point>& sample, double tol) {
  return classify(spec, sample, tol).k_contact;
}

}  // namespace acg
