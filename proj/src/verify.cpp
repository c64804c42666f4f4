#include "acg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "acg/errors.hpp"
#include "acg/interior.hpp"
#include "acg/prolonged.hpp"
#include "acg/sampling.hpp"
#include "acg/special.hpp"

namespace acg {

namespace {

// Agreement checks report 0 when two verdicts coincide and 1 otherwise.
constexpr double kIndicatorTol = 0.5;

class Runner {
 public:
  Runner(const VerifyConfig& config, Report& report) : config_(config), report_(report) {}

  void residual(std::string name, std::string anchor, double value, double tol, std::string note = {}) {
    const double t = config_.tol > 0.0 ? config_.tol : tol;
    push(std::move(name), std::move(anchor), value, t, value < t ? Verdict::Pass : Verdict::Fail,
         std::move(note));
  }

  void indicator(std::string name, std::string anchor, bool agree, std::string note) {
    push(std::move(name), std::move(anchor), agree ? 0.0 : 1.0, kIndicatorTol,
         agree ? Verdict::Pass : Verdict::Fail, std::move(note));
  }

  void skipped(std::string name, std::string anchor, double tol, std::string note) {
    push(std::move(name), std::move(anchor), 0.0, config_.tol > 0.0 ? config_.tol : tol, Verdict::Skipped,
         std::move(note));
  }

 private:
  void push(std::string name, std::string anchor, double value, double tol, Verdict v, std::string note) {
    report_.checks.push_back({std::move(name), std::move(anchor), value, tol, v, std::move(note)});
  }

  const VerifyConfig& config_;
  Report& report_;
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

FrameField random_frame_field(const StructureSpec& s, Sampler& rng) {
  FrameField f(s.n);
  for (int a = 0; a < s.n; ++a)
    f[a] = Expr(rng.uniform(-1, 1)) + Expr(rng.uniform(-1, 1)) * Expr::var(a) +
           Expr(rng.uniform(-1, 1)) * Expr::var(s.xn()) * Expr::var(0);
  return f;
}

}  // namespace

bool Report::pass() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.verdict == Verdict::Fail; });
}

Report run_verification(const StructureSpec& spec, const VerifyConfig& config) {
  if (config.points < 1) throw DimensionMismatch("sample count must be at least 1");
  if (config.tol < 0.0) throw DimensionMismatch("tolerance must be positive");
  check_well_formed(spec);

  Report report;
  report.structure = spec.name;
  report.seed = config.seed;
  report.points = config.points;
  Runner run(config, report);

  const std::vector<Point> base = sample_base(spec, config.points, config.seed);
  const std::vector<Point> pro = sample_prolonged(spec, config.points, config.seed);
  const int m = spec.m();

  {
    const ValidationReport v = validate_structure(spec, base);
    double worst = 0.0;
    for (const auto& a : v.axioms) worst = std::max(worst, a.residual);
    run.residual("structure_axioms", "almost contact metric axioms", worst, 1e-9);
  }
  {
    double worst = 0.0;
    for (const auto& p : base) worst = std::max(worst, max_abs_diff(levi_civita(spec, p), levi_civita_oracle(spec, p)));
    run.residual("levi_civita_blocks", "Levi-Civita coefficients in the adapted frame", worst, 1e-9);
  }

  const ChristoffelSigns signs =
      config.printed_christoffel_signs ? ChristoffelSigns::Printed : ChristoffelSigns::Corrected;
  const InteriorConnection conn = interior_metric_connection(spec, signs);
  const std::string sign_note = config.printed_christoffel_signs ? "printed sign pattern" : "";
  run.residual("interior_metricity", "interior connection: nabla g = 0", metricity_residual(spec, conn, base),
               1e-10, sign_note);
  run.residual("interior_symmetry", "interior connection: zero torsion", max_abs(torsion(conn), base), 1e-12,
               sign_note);

  const InteriorConnection lc = interior_metric_connection(spec);
  const AdmissibleTensor r = schouten(spec, lc);
  {
    double worst = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
          AdmissibleField ea(m), eb(m), ec(m);
          ea[a] = eb[b] = ec[c] = Expr(1.0);
          const AdmissibleField op = curvature_operator(spec, lc, ea, eb, ec);
          for (int d = 0; d < m; ++d) {
            const Expr diff_e = op[d] - r(d, a, b, c);
            if (diff_e.is_zero()) continue;
            for (const auto& p : base) worst = std::max(worst, std::abs(diff_e.eval(p)));
          }
        }
    run.residual("schouten_operator", "Schouten curvature: components vs operator definition", worst, 1e-9);
    AdmissibleTensor sym(m, 1, 3);
    for (int d = 0; d < m; ++d)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int c = 0; c < m; ++c) sym(d, a, b, c) = r(d, a, b, c) + r(d, b, a, c);
    run.residual("schouten_antisymmetry", "Schouten curvature: antisymmetry in the first pair", max_abs(sym, base),
                 1e-12);
  }

  try {
    const ImplicitNReport rep = n_implicit_check(spec, lc, base);
    std::ostringstream note;
    note << "with omega transposed: " << rep.alternation_transposed;
    run.residual("alternation_identity", "commutator of covariant derivatives of g", rep.alternation, 1e-9,
                 note.str());
    run.residual("n_implicit_formula", "N recovered from curvature and omega", rep.implicit_vs_direct, 1e-9);
  } catch (const DegenerateOmega&) {
    run.skipped("alternation_identity", "commutator of covariant derivatives of g", 1e-9, "omega is degenerate");
    run.skipped("n_implicit_formula", "N recovered from curvature and omega", 1e-9, "omega is degenerate");
  }
  const AdmissibleTensor n_endo = n_endomorphism(spec);
  run.residual("n_symmetry", "N is g-symmetric", n_symmetry_residual(spec, n_endo, base), 1e-12);

  const std::vector<Point> base_head(base.begin(), base.begin() + std::min<std::size_t>(base.size(), 20));
  const bool k_contact = classify(spec, base).k_contact;
  {
    const FullConnection nc = n_connection(spec);
    run.residual("n_connection_metricity", "N-connection is metric", metricity_check(spec, nc, base).max_residual,
                 1e-10);
    Sampler rng(config.seed);
    double worst = 0.0;
    for (const auto& p : base_head) {
      const FrameField x = random_frame_field(spec, rng);
      const FrameField y = random_frame_field(spec, rng);
      worst = std::max(worst,
                       (n_connection_torsion(spec, x, y, p) - connection_torsion(spec, nc, x, y, p)).cwiseAbs().maxCoeff());
    }
    run.residual("n_connection_torsion", "N-connection torsion display", worst, 1e-9);
    const bool bejancu_metric = metricity_check(spec, bejancu_connection(spec), base).max_residual < 1e-10;
    run.indicator("bejancu_metric_iff_k_contact", "metric Bejancu connection iff K-contact",
                  bejancu_metric == k_contact,
                  "bejancu metric: " + yes_no(bejancu_metric) + ", K-contact: " + yes_no(k_contact));
  }

  const Prolongation flat = prolong_flat(spec);
  const Prolongation structural = prolong_structural(spec);
  run.residual("structure_equations_flat", "prolonged frame brackets, N = 0",
               structure_equation_residuals(flat, pro).max(), 1e-9);
  run.residual("structure_equations_structural", "prolonged frame brackets, structural N",
               structure_equation_residuals(structural, pro).max(), 1e-9);
  run.residual("prolonged_curvature", "prolonged curvature vs frame brackets",
               std::max(prolonged_curvature_residual(flat, pro), prolonged_curvature_residual(structural, pro)),
               1e-9);
  {
    const ProlongedStructure st = prolonged_structure(structural);
    run.residual("prolonged_axioms", "prolonged almost contact metric axioms",
                 prolonged_axioms(structural, st, pro, config.seed).max(), 1e-12);
  }
  {
    const OmegaTildeReport w = omega_tilde_report(structural, pro);
    run.residual("omega_tilde_components", "fundamental form of the prolonged structure",
                 std::max(w.pushdown, w.off_block), 1e-10);
    std::ostringstream note;
    note << "rank " << w.rank_min;
    if (w.rank_max != w.rank_min) note << ".." << w.rank_max;
    note << ", base omega rank " << w.base_rank_min;
    if (w.base_rank_max != w.base_rank_min) note << ".." << w.base_rank_max;
    note << ", (n-1)/2 = " << (spec.n - 1) / 2.0;
    run.indicator("omega_tilde_rank", "rank of the prolonged fundamental form",
                  w.rank_min == w.base_rank_min && w.rank_max == w.base_rank_max, note.str());
  }
  {
    run.residual("lie_derivative_components", "Lie derivative of g~ along u",
                 lie_derivative_report(structural, pro).display_residual, 1e-9);
    const KContactVerdict v = k_contact_verdict(spec, base, pro);
    run.indicator("k_contact_biconditional", "prolonged almost K-contact iff base K-contact", v.agree(),
                  "prolonged: " + yes_no(v.prolonged_almost_k_contact) + ", base: " + yes_no(v.base_k_contact));
  }
  if (k_contact) {
    const NijenhuisReport nj = nijenhuis_report(flat, pro);
    std::ostringstream note;
    note << "eps-eps " << nj.eps_eps << ", V-V " << nj.vert_vert << ", eps-V " << nj.eps_vert << ", eps-u "
         << nj.eps_u << ", V-u " << nj.vert_u;
    run.residual("nijenhuis_components", "Nijenhuis tensor of J", nj.display_max(), 1e-9, note.str());
    const NormalVerdict v = normal_verdict(spec, base, pro);
    run.indicator("almost_normal_biconditional", "prolonged almost normal iff zero curvature", v.agree(),
                  "almost normal: " + yes_no(v.prolonged_almost_normal) + ", flat: " + yes_no(v.zero_curvature));
  } else {
    run.skipped("nijenhuis_components", "Nijenhuis tensor of J", 1e-9, "base is not K-contact");
    run.skipped("almost_normal_biconditional", "prolonged almost normal iff zero curvature", kIndicatorTol,
                "base is not K-contact");
  }
  return report;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Skipped:
      return "skipped";
  }
  return "fail";
}

nlohmann::ordered_json report_to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["structure"] = report.structure;
  j["seed"] = report.seed;
  j["points"] = report.points;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json r;
    r["name"] = c.name;
    r["paper_anchor"] = c.anchor;
    r["max_residual"] = c.max_residual;
    r["tol"] = c.tol;
    r["verdict"] = verdict_name(c.verdict);
    if (!c.note.empty()) r["note"] = c.note;
    j["checks"].push_back(r);
  }
  return j;
}

std::string render_human(const Report& report) {
  std::ostringstream out;
  out << "structure " << report.structure << "  seed " << report.seed << "  points " << report.points << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-32s %12s %10s  %s\n", "check", "residual", "tol", "verdict");
  out << line;
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "%-32s %12.3e %10.1e  %s", c.name.c_str(), c.max_residual, c.tol,
                  verdict_name(c.verdict).c_str());
    out << line;
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << "\n";
  }
  out << (report.pass() ? "all checks passed" : "some checks failed") << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::ordered_json nest(const NumTensor& t, std::size_t dim = 0, std::size_t offset = 0) {
  if (t.shape.empty()) return t.data.empty() ? 0.0 : t.data[0];
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  std::size_t stride = 1;
  for (std::size_t k = dim + 1; k < t.shape.size(); ++k) stride *= static_cast<std::size_t>(t.shape[k]);
  for (int i = 0; i < t.shape[dim]; ++i) {
    const std::size_t at = offset + static_cast<std::size_t>(i) * stride;
    if (dim + 1 == t.shape.size())
      arr.push_back(t.data[at]);
    else
      arr.push_back(nest(t, dim + 1, at));
  }
  return arr;
}

NumTensor from_matrix(const Eigen::MatrixXd& m) {
  NumTensor t({static_cast<int>(m.rows()), static_cast<int>(m.cols())});
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t.at({i, j}) = m(i, j);
  return t;
}

struct TensorEntry {
  bool prolonged;
  std::string indices;
  std::function<NumTensor(const StructureSpec&, const Point&)> eval;
};

const std::map<std::string, TensorEntry>& registry() {
  static const std::map<std::string, TensorEntry> table = {
      {"omega", {false, "[a][b] omega_ab", [](const StructureSpec& s, const Point& p) { return omega(s).eval(p); }}},
      {"C", {false, "[a][b] C_ab = 1/2 d_n g_ab",
             [](const StructureSpec& s, const Point& p) { return derived_fields(s).c_lower.eval(p); }}},
      {"psi", {false, "[b][a] psi^b_a = g^db omega_da",
               [](const StructureSpec& s, const Point& p) { return derived_fields(s).psi.eval(p); }}},
      {"h", {false, "[a][b] h^a_b = 1/2 d_n phi^a_b",
             [](const StructureSpec& s, const Point& p) { return h_tensor(s).eval(p); }}},
      {"levi_civita", {false, "[c][a][b] nabla_{E_a} E_b = Gamma^c_ab E_c, E = (e_1..e_{n-1}, xi)",
                       [](const StructureSpec& s, const Point& p) { return levi_civita(s, p); }}},
      {"interior_gamma", {false, "[a][b][c] nabla_{e_b} e_c = Gamma^a_bc e_a",
                          [](const StructureSpec& s, const Point& p) {
                            return interior_metric_connection(s).gamma.eval(p);
                          }}},
      {"schouten", {false, "[d][a][b][c] R(e_a, e_b) e_c = R^d_abc e_d",
                    [](const StructureSpec& s, const Point& p) {
                      return schouten(s, interior_metric_connection(s)).eval(p);
                    }}},
      {"p_tensor", {false, "[a][b][c] P^a_bc = d_n Gamma^a_bc",
                    [](const StructureSpec& s, const Point& p) {
                      return p_tensor(s, interior_metric_connection(s)).eval(p);
                    }}},
      {"n_endo", {false, "[a][b] N^a_b = 1/2 g^ac d_n g_cb",
                  [](const StructureSpec& s, const Point& p) { return n_endomorphism(s).eval(p); }}},
      {"bejancu", {false, "[c][a][b] nabla_{E_a} E_b = Gamma^c_ab E_c, E = (e_1..e_{n-1}, d_n)",
                   [](const StructureSpec& s, const Point& p) { return bejancu_connection(s).gamma.eval(p); }}},
      {"n_connection", {false, "[c][a][b] nabla_{E_a} E_b = Gamma^c_ab E_c, E = (e_1..e_{n-1}, d_n)",
                        [](const StructureSpec& s, const Point& p) { return n_connection(s).gamma.eval(p); }}},
      {"sn_torsion", {false, "[c][a][b] component c of S^N(E_a, E_b), E = (e_1..e_{n-1}, d_n)",
                      [](const StructureSpec& s, const Point& p) {
                        NumTensor t({s.n, s.n, s.n});
                        for (int a = 0; a < s.n; ++a)
                          for (int b = 0; b < s.n; ++b) {
                            FrameField x(s.n), y(s.n);
                            x[a] = Expr(1.0);
                            y[b] = Expr(1.0);
                            const Eigen::VectorXd v = n_connection_torsion(s, x, y, p);
                            for (int c = 0; c < s.n; ++c) t.at({c, a, b}) = v[c];
                          }
                        return t;
                      }}},
      {"prolonged_frame", {true, "[k][i] coordinate component k of frame vector i = (eps_a, u, V_a), structural N",
                           [](const StructureSpec& s, const Point& p) {
                             return from_matrix(frame_at(prolong_structural(s), p));
                           }}},
      {"gtilde", {true, "[i][j] g~(F_i, F_j), F = (eps_a, u, V_a)",
                  [](const StructureSpec& s, const Point& p) {
                    return from_matrix(eval(prolonged_structure(prolong_structural(s)).g_frame, p));
                  }}},
      {"omega_tilde", {true, "[i][j] omega~(F_i, F_j), F = (eps_a, u, V_a)",
                       [](const StructureSpec& s, const Point& p) {
                         return from_matrix(eval(omega_tilde(prolong_structural(s)), p));
                       }}},
      {"lie_u_gtilde", {true, "[i][j] (L_u g~)(F_i, F_j), F = (eps_a, u, V_a), structural N",
                        [](const StructureSpec& s, const Point& p) {
                          return from_matrix(eval(lie_u_gtilde(prolong_structural(s)), p));
                        }}},
      {"nijenhuis_j", {true, "[k][i][j] frame component k of N_J(F_i, F_j), F = (eps_a, u, V_a), N = 0",
                       [](const StructureSpec& s, const Point& p) {
                         const Prolongation pr = prolong_flat(s);
                         const ProlongedStructure st = prolonged_structure(pr);
                         const int dim = pr.frame.dim();
                         NumTensor t({dim, dim, dim});
                         for (int i = 0; i < dim; ++i)
                           for (int j = 0; j < dim; ++j) {
                             if (i == j) continue;
                             const std::vector<Expr> v = nijenhuis_j(pr, st, i, j);
                             for (int k = 0; k < dim; ++k) t.at({k, i, j}) = v[k].eval(p);
                           }
                         return t;
                       }}},
      {"K", {true, "[c][A][B] (K(E_A, E_B) w)^c, E = (e_1..e_{n-1}, xi), w = fiber coordinates, structural N",
             [](const StructureSpec& s, const Point& p) {
               const Prolongation pr = prolong_structural(s);
               const int m = s.m();
               Eigen::VectorXd w(m);
               for (int d = 0; d < m; ++d) w[d] = p[fiber_coordinate(s, d)];
               NumTensor t({m, s.n, s.n});
               for (int a = 0; a < s.n; ++a)
                 for (int b = 0; b < s.n; ++b) {
                   Eigen::VectorXd k = Eigen::VectorXd::Zero(m);
                   if (a < m && b < m) {
                     k = prolonged_curvature(pr, Eigen::VectorXd::Unit(m, a), Eigen::VectorXd::Unit(m, b), w, p);
                   } else if (a == s.xn() && b < m) {
                     k = prolonged_curvature_xi(pr, Eigen::VectorXd::Unit(m, b), w, p);
                   } else if (b == s.xn() && a < m) {
                     k = -prolonged_curvature_xi(pr, Eigen::VectorXd::Unit(m, a), w, p);
                   }
                   for (int c = 0; c < m; ++c) t.at({c, a, b}) = k[c];
                 }
               return t;
             }}},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& tensor_names() {
  static const std::vector<std::string> names = {
      "omega",  "C",          "psi",          "h",          "levi_civita",     "interior_gamma",
      "schouten", "p_tensor", "n_endo",       "bejancu",    "n_connection",    "sn_torsion",
      "prolonged_frame", "gtilde", "omega_tilde", "lie_u_gtilde", "nijenhuis_j", "K"};
  return names;
}

bool tensor_on_prolonged(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw UnknownTensor(name);
  return it->second.prolonged;
}

nlohmann::ordered_json evaluate_tensor(const StructureSpec& spec, const std::string& name,
                                       const std::vector<double>& point) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw UnknownTensor(name);
  const TensorEntry& entry = it->second;
  const int expected = entry.prolonged ? prolonged_dim(spec) : spec.n;
  if (static_cast<int>(point.size()) != expected)
    throw DimensionMismatch(name + " needs a point with " + std::to_string(expected) + " coordinates, got " +
                            std::to_string(point.size()));
  const Point p{std::span<const double>(point)};
  const NumTensor t = entry.eval(spec, p);
  nlohmann::ordered_json j;
  j["structure"] = spec.name;
  j["tensor"] = name;
  j["point"] = point;
  j["indices"] = entry.indices;
  j["shape"] = t.shape;
  j["components"] = nest(t);
  return j;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseError("bad coordinate '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw ParseError("bad coordinate '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty point");
  return out;
}

}  // namespace acg
