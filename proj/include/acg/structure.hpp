#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acg/expr.hpp"
#include "acg/tensor.hpp"

namespace acg {

// An almost contact metric structure written in a single adapted chart
// (x1..xn) with xi = d/dx^n and eta = dx^n + Gamma^n_a dx^a.
//
// Indices a, b, ... of the distribution run over 0..n-2 in code; the
// coordinate x^n has index n-1.
struct StructureSpec {
  std::string name;
  int n = 3;
  std::vector<Expr> gamma_n;     // Gamma^n_a, independent of x^n
  ExprMatrix g;                  // g_ab
  std::optional<ExprMatrix> phi;  // phi[a][b] = phi^a_b
  bool pseudo = false;           // admit indefinite g (nondegeneracy checked instead)
  // Sampling box per base coordinate; empty means [-1, 1] for every coordinate.
  std::vector<std::pair<double, double>> domain;

  int m() const { return n - 1; }
  int xn() const { return n - 1; }
};

// Throws SpecMalformed for dimension mismatches, coordinates outside x1..xn,
// or any Gamma^n_a depending on x^n.
void check_well_formed(const StructureSpec& spec);

struct AxiomResult {
  std::string name;
  double residual = 0.0;
  bool structural = false;  // holds by the adapted encoding, not evaluated
  bool pass = true;
};

struct ValidationReport {
  std::vector<AxiomResult> axioms;
  bool pass = true;
  const AxiomResult* find(const std::string& name) const;
};

ValidationReport validate_structure(const StructureSpec& spec, const std::vector<Point>& sample,
                                    double tol = 1e-9);

// e_a f = d_a f - Gamma^n_a d_n f.
Expr frame_derivative(const StructureSpec& spec, int a, const Expr& f);

struct AdaptedFrame {
  std::vector<VectorField> e;  // e_a = d_a - Gamma^n_a d_n
  VectorField xi;              // d_n
  // Frame vectors as columns (e_1..e_{n-1}, xi) and the dual coframe
  // (dx^a, theta^n = dx^n + Gamma^n_a dx^a) as rows.
  ExprMatrix frame_matrix() const;
  ExprMatrix coframe_matrix(const StructureSpec& spec) const;
};

AdaptedFrame adapted_frame(const StructureSpec& spec);

AdmissibleTensor metric(const StructureSpec& spec);          // g_ab      (0,2)
AdmissibleTensor inverse_metric(const StructureSpec& spec);  // g^ab      (2,0)
// omega_ab = 1/2 (d_a Gamma^n_b - d_b Gamma^n_a), so [e_a, e_b] = 2 omega_ba d_n.
AdmissibleTensor omega(const StructureSpec& spec);

struct DerivedFields {
  AdmissibleTensor c_lower;  // C_ab   = 1/2 d_n g_ab
  AdmissibleTensor c_mixed;  // C^a_b  = g^da C_db, stored [a][b]
  AdmissibleTensor psi;      // psi^b_a = g^db omega_da, stored [b][a]
  std::optional<AdmissibleTensor> h;  // h^a_b = 1/2 d_n phi^a_b when phi is present
};

DerivedFields derived_fields(const StructureSpec& spec);
AdmissibleTensor h_tensor(const StructureSpec& spec);           // throws PhiAbsent
AdmissibleTensor fundamental_form(const StructureSpec& spec);   // Omega_ab = g_ac phi^c_b

enum class ChristoffelSigns {
  Corrected,  // 1/2 g^ad (e_b g_cd + e_c g_bd - e_d g_bc)
  Printed,    // 1/2 g^ad (e_b g_cd - e_c g_bd - e_d g_bc), kept for regression only
};

// Gamma^a_bc with nabla_{e_b} e_c = Gamma^a_bc e_a, stored [a][b][c].
AdmissibleTensor adapted_christoffel(const StructureSpec& spec,
                                     ChristoffelSigns signs = ChristoffelSigns::Corrected);

// Levi-Civita coefficients in the frame (e_1..e_{n-1}, xi), shape {n,n,n},
// entry [c][a][b] for nabla_{E_a} E_b = Gamma^c_ab E_c, assembled from the
// closed-form adapted blocks.
NumTensor levi_civita(const StructureSpec& spec, const Point& p);
// Same table from the classical formula on the holonomic n x n metric, pulled
// back to the adapted frame. Independent of levi_civita().
NumTensor levi_civita_oracle(const StructureSpec& spec, const Point& p);

// Full metric on TX in holonomic coordinates: g_ab + G_a G_b, G_a, 1.
ExprMatrix holonomic_metric(const StructureSpec& spec);

// phi extended by phi(xi) = 0 as a coordinate-basis endomorphism field.
ExprMatrix phi_coordinate(const StructureSpec& spec);

struct Classification {
  bool k_contact = false;
  double k_contact_residual = 0.0;
  std::optional<bool> contact_metric;
  double contact_metric_residual = 0.0;
  std::optional<bool> almost_normal;
  double almost_normal_residual = 0.0;
};

// contact_metric and almost_normal are left empty when phi is absent.
Classification classify(const StructureSpec& spec, const std::vector<Point>& sample,
                        double tol = 1e-9);

// max |d_n t| over the sample is below tol.
bool is_projectible(const StructureSpec& spec, const AdmissibleTensor& t,
                    const std::vector<Point>& sample, double tol = 1e-9);

}  // namespace acg
