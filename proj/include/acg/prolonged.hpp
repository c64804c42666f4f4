#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "acg/interior.hpp"
#include "acg/structure.hpp"
#include "acg/tensor.hpp"

namespace acg {

// The total space of D as a (2n-1)-manifold with over-chart coordinates
// (x^1..x^n, x^{n+1}..x^{2n-1}); the fiber coordinates are the components of
// an admissible vector in the frame e_a.
//
// Frame and coordinate indices line up: index a < n-1 is e_a-lift / x^a,
// index n-1 is u / x^n, index n+a is d_{n+a} / x^{n+a}.
struct ProlongedFrame {
  int n = 0;
  // eps_a = d_a - Gamma^n_a d_n - Gamma^b_ac x^{n+c} d_{n+b}
  // u     = d_n - N^a_b x^{n+b} d_{n+a}
  // V_a   = d_{n+a}
  std::vector<VectorField> fields;
  // Dual coframe rows: dx^a, theta^n = dx^n + Gamma^n_a dx^a,
  // Theta^{n+a} = dx^{n+a} + Gamma^a_bc x^{n+c} dx^b + N^a_b x^{n+b} theta^n.
  ExprMatrix cobasis;

  int dim() const { return 2 * n - 1; }
  int eps(int a) const { return a; }
  int u() const { return n - 1; }
  int vert(int a) const { return n + a; }
  ExprMatrix matrix() const;  // frame vectors as columns
};

int prolonged_dim(const StructureSpec& spec);
int fiber_coordinate(const StructureSpec& spec, int a);

// Everything needed on the over-chart for a given endomorphism N of D.
struct Prolongation {
  StructureSpec spec;
  InteriorConnection conn;
  AdmissibleTensor n_endo;    // N^a_b
  AdmissibleTensor omega;     // omega_ab
  AdmissibleTensor curvature; // R^d_abc
  AdmissibleTensor p;         // P^a_bc = d_n Gamma^a_bc
  AdmissibleTensor nabla_n;   // (nabla_a N)^c_d stored [c][a][d]
  ProlongedFrame frame;
};

Prolongation prolong(const StructureSpec& spec, const AdmissibleTensor& n_endo);
// N = 0.
Prolongation prolong_flat(const StructureSpec& spec);
// N = 1/2 g^-1 d_n g, the endomorphism fixed by the structure.
Prolongation prolong_structural(const StructureSpec& spec);

// Coframe with dx^n in place of theta^n in Theta^{n+a}. It is dual to the
// frame only when N x theta^n contributes nothing, e.g. N = 0 or Gamma^n = 0.
ExprMatrix literal_cobasis(const Prolongation& pr);

Eigen::MatrixXd frame_at(const Prolongation& pr, const Point& pp);
Eigen::MatrixXd cobasis_at(const Prolongation& pr, const Point& pp);

// Frame components -> coordinate components and back.
VectorField frame_to_coords(const ProlongedFrame& f, const std::vector<Expr>& comps);
std::vector<Expr> coords_to_frame(const ProlongedFrame& f, const VectorField& v);

// [F_i, F_j] in frame components, by exact differentiation on the over-chart.
std::vector<Expr> prolonged_bracket(const Prolongation& pr, int i, int j);

struct StructureEquationReport {
  double eps_eps = 0.0;   // [eps_a, eps_b] = 2 omega_ba u + x^{n+d}(2 omega_ba N^c_d + R^c_bad) V_c
  double eps_u = 0.0;     // [eps_a, u] = x^{n+d}(P^c_ad - (nabla_a N)^c_d) V_c
  double eps_vert = 0.0;  // [eps_a, V_b] = Gamma^c_ab V_c
  double max() const;
};

StructureEquationReport structure_equation_residuals(const Prolongation& pr,
                                                     const std::vector<Point>& sample);

// Curvature of the prolonged connection from its displayed formulas, for
// admissible u, v, w given by frame components at the base point of p.
//   K(u,v)w  = 2 omega(u,v) N w + R(u,v) w
//   K(xi,u)w = P(u,w) - (nabla_u N) w
Eigen::VectorXd prolonged_curvature(const Prolongation& pr, const Eigen::VectorXd& u,
                                    const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                                    const Point& p);
Eigen::VectorXd prolonged_curvature_xi(const Prolongation& pr, const Eigen::VectorXd& u,
                                       const Eigen::VectorXd& w, const Point& p);
// -(vertical part of [F_i, F_j]) at pp, for horizontal lifts F_i, F_j (eps_a
// or u). This is K(X, Y) applied to the fiber coordinates of pp.
Eigen::VectorXd curvature_from_brackets(const Prolongation& pr, int i, int j, const Point& pp);

// max |formula - bracket extraction| over the sample and all slot pairs.
double prolonged_curvature_residual(const Prolongation& pr, const std::vector<Point>& sample);

// Almost contact metric structure (J, u, lambda, g~) on the total space.
struct ProlongedStructure {
  ExprMatrix j_frame;              // J(eps_a) = V_a, J(V_a) = -eps_a, J(u) = 0
  ExprMatrix g_frame;              // diag(g, 1, g)
  std::vector<Expr> lambda_frame;  // lambda(u) = 1, zero otherwise
  ExprMatrix j_coords;
  ExprMatrix g_coords;
  std::vector<Expr> lambda_coords;  // theta^n
};

ProlongedStructure prolonged_structure(const Prolongation& pr);

struct ProlongedAxiomReport {
  double j_squared = 0.0;        // J^2 X + X - lambda(X) u
  double lambda_u = 0.0;         // lambda(u) - 1
  double lambda_j = 0.0;         // lambda(J X)
  double metric_compat = 0.0;    // g~(JX,JY) - g~(X,Y) + lambda(X) lambda(Y)
  double max() const;
};

// Evaluated on random coordinate-basis vectors at the sample points.
ProlongedAxiomReport prolonged_axioms(const Prolongation& pr, const ProlongedStructure& st,
                                      const std::vector<Point>& sample, std::uint64_t seed);

// omega~ = d lambda with the 1/2 convention, in frame components.
ExprMatrix omega_tilde(const Prolongation& pr);

struct OmegaTildeReport {
  double pushdown = 0.0;   // max |omega~(eps_a, eps_b) - omega_ab|
  double off_block = 0.0;  // max |omega~| on pairs involving u or V_a
  int rank_min = 0;
  int rank_max = 0;
  int base_rank_min = 0;
  int base_rank_max = 0;
};

OmegaTildeReport omega_tilde_report(const Prolongation& pr, const std::vector<Point>& sample);

int numeric_rank(const Eigen::MatrixXd& m, double tol = 1e-9);

// L_u g~ in frame components from the definition:
// (L_u g~)(F_i, F_j) = u(g~_ij) - g~([u, F_i], F_j) - g~(F_i, [u, F_j]).
ExprMatrix lie_u_gtilde(const Prolongation& pr);
// Same tensor computed in coordinates as u^k d_k G_ij + G_kj d_i u^k + G_ik d_j u^k
// and then transformed to the frame.
ExprMatrix lie_u_gtilde_coordinate(const Prolongation& pr, const ProlongedStructure& st);
// The displayed components:
//   (eps_a, eps_b)  d_n g_ab
//   (V_a, V_b)      d_n g_ab - g_ac N^c_b - g_cb N^c_a
//   (V_a, eps_b)    g_ac (P^c_bd - (nabla_b N)^c_d) x^{n+d}, and its transpose
// and zero on every pair involving u.
ExprMatrix lie_u_gtilde_display(const Prolongation& pr);

struct LieDerivativeReport {
  double display_residual = 0.0;  // max |computed - display|
  double max_component = 0.0;     // max |computed|
};

LieDerivativeReport lie_derivative_report(const Prolongation& pr, const std::vector<Point>& sample);

struct KContactVerdict {
  bool prolonged_almost_k_contact = false;
  bool base_k_contact = false;
  double prolonged_residual = 0.0;
  double base_residual = 0.0;
  bool agree() const { return prolonged_almost_k_contact == base_k_contact; }
};

// Uses the structural N. The prolonged structure is almost K-contact when u
// is Killing for g~.
KContactVerdict k_contact_verdict(const StructureSpec& spec, const std::vector<Point>& base_sample,
                                  const std::vector<Point>& prolonged_sample, double tol = 1e-9);

// N_J(F_i, F_j) = [JF_i, JF_j] + J^2[F_i, F_j] - J[JF_i, F_j] - J[F_i, JF_j]
// in frame components, with exact brackets.
std::vector<Expr> nijenhuis_j(const Prolongation& pr, const ProlongedStructure& st, int i, int j);

// Displayed components of N_J, or nullopt for pairs without a display. With
// N = 0 the field d_n coincides with u.
//   (eps_a, eps_b)  -R^e_abc x^{n+c} V_e
//   (V_a, V_b)      2 omega_ba d_n + R^e_abc x^{n+c} V_e
//   (eps_a, V_b)    0
//   (eps_a, u)      -x^{n+c} P^b_ac V_b
//   (V_a, u)        -x^{n+c} P^b_ac V_b
std::optional<std::vector<Expr>> nijenhuis_display(const Prolongation& pr, int i, int j);

struct NijenhuisReport {
  double eps_eps = 0.0;
  double vert_vert = 0.0;
  double eps_vert = 0.0;
  double eps_u = 0.0;
  double vert_u = 0.0;
  // Display residuals with R^e_abc read as R^e_bac (the index order of the
  // bracket equation for [eps_a, eps_b]).
  double eps_eps_transposed = 0.0;
  double vert_vert_transposed = 0.0;
  // max over all frame pairs of the HD + VD part of N_J (the u-component dropped).
  double projected = 0.0;
  double display_max() const;
};

NijenhuisReport nijenhuis_report(const Prolongation& pr, const std::vector<Point>& sample);

struct NormalVerdict {
  bool prolonged_almost_normal = false;
  bool zero_curvature = false;
  double projected_residual = 0.0;
  double curvature_residual = 0.0;
  bool agree() const { return prolonged_almost_normal == zero_curvature; }
};

// Throws NotKContact when the base is not K-contact on the sample.
NormalVerdict normal_verdict(const StructureSpec& spec, const std::vector<Point>& base_sample,
                             const std::vector<Point>& prolonged_sample, double tol = 1e-9);

}  // namespace acg
