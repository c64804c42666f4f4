#pragma once

#include <vector>

#include "acg/structure.hpp"
#include "acg/tensor.hpp"

namespace acg {

// Linear connection acting on sections of D along D. gamma(a, b, c) is
// Gamma^a_bc with nabla_{e_b} e_c = Gamma^a_bc e_a.
struct InteriorConnection {
  AdmissibleTensor gamma;
};

// The metric, torsion-free interior connection. ChristoffelSigns::Printed
// reproduces the uncorrected sign pattern and is neither symmetric nor metric.
InteriorConnection interior_metric_connection(const StructureSpec& spec,
                                              ChristoffelSigns signs = ChristoffelSigns::Corrected);

// Covariant derivative of an admissible (p,q) tensor. The derivative index is
// inserted as the first lower index: result(A..., k, B...) = nabla_k t^A_B.
AdmissibleTensor cov_deriv(const StructureSpec& spec, const InteriorConnection& conn,
                           const AdmissibleTensor& t);

// S^c_ab = Gamma^c_ab - Gamma^c_ba, stored [c][a][b].
AdmissibleTensor torsion(const InteriorConnection& conn);

// Schouten curvature R^d_abc, stored [d][a][b][c]:
//   R(e_a, e_b) e_c = R^d_abc e_d
//   R^d_abc = e_a Gamma^d_bc - e_b Gamma^d_ac + Gamma^d_ae Gamma^e_bc - Gamma^d_be Gamma^e_ac
AdmissibleTensor schouten(const StructureSpec& spec, const InteriorConnection& conn);

// Admissible vector fields are given by their frame components u^a (u = u^a e_a).
using AdmissibleField = std::vector<Expr>;

AdmissibleField covariant_derivative(const StructureSpec& spec, const InteriorConnection& conn,
                                     const AdmissibleField& u, const AdmissibleField& w);
// p[u, v]: the D-part of the Lie bracket.
AdmissibleField projected_bracket(const StructureSpec& spec, const AdmissibleField& u,
                                  const AdmissibleField& v);
// R(u,v)w = nabla_u nabla_v w - nabla_v nabla_u w - nabla_{p[u,v]} w, straight
// from the operator definition.
AdmissibleField curvature_operator(const StructureSpec& spec, const InteriorConnection& conn,
                                   const AdmissibleField& u, const AdmissibleField& v,
                                   const AdmissibleField& w);

// P^a_bc = d_n Gamma^a_bc, stored [a][b][c].
AdmissibleTensor p_tensor(const StructureSpec& spec, const InteriorConnection& conn);

// N^a_b = 1/2 g^ac d_n g_cb, the g-symmetric endomorphism with
// g(NX, Y) = 1/2 (L_xi g)(X, Y).
AdmissibleTensor n_endomorphism(const StructureSpec& spec);

struct ImplicitNReport {
  // max |N_implicit - N| with
  //   N_implicit^f_b = 1/(4(n-1)) w^ea (R^f_eab + g_bd g^cf R^d_eac),
  // w^ea the matrix inverse of omega with w^ae omega_eb = delta^a_b.
  double implicit_vs_direct = 0.0;
  // max |2 omega_ae d_n g_bc - g_dc R^d_eab - g_bd R^d_eac|; the commutator of
  // two covariant derivatives of g, which vanishes for a metric connection.
  double alternation = 0.0;
  // Same expression with omega_ea in the first term.
  double alternation_transposed = 0.0;
};

// Throws DegenerateOmega when omega is singular at a sample point.
ImplicitNReport n_implicit_check(const StructureSpec& spec, const InteriorConnection& conn,
                                 const std::vector<Point>& sample);

// max |nabla_a g_bc| over the sample.
double metricity_residual(const StructureSpec& spec, const InteriorConnection& conn,
                          const std::vector<Point>& sample);
// max |g_ac N^c_b - g_bc N^c_a| over the sample.
double n_symmetry_residual(const StructureSpec& spec, const AdmissibleTensor& n,
                           const std::vector<Point>& sample);

double max_abs(const AdmissibleTensor& t, const std::vector<Point>& sample);

bool is_zero_curvature(const StructureSpec& spec, const InteriorConnection& conn,
                       const std::vector<Point>& sample, double tol = 1e-9);
bool is_k_contact(const StructureSpec& spec, const std::vector<Point>& sample, double tol = 1e-9);

}  // namespace acg
