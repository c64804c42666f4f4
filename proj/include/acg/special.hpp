#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "acg/interior.hpp"
#include "acg/structure.hpp"
#include "acg/tensor.hpp"

namespace acg {

// Linear connection on TX in the non-holonomic frame E = (e_1..e_{n-1}, d_n).
// gamma(c, a, b) is Gamma^c_ab with nabla_{E_a} E_b = Gamma^c_ab E_c; index
// n-1 stands for d_n. Derivatives along E_a are e_a for a < n-1 and d_n for
// a = n-1.
struct FullConnection {
  AdmissibleTensor gamma;  // dim n, (1,2)
};

// Nonzero block Gamma^a_bc equal to the interior metric coefficients.
FullConnection bejancu_connection(const StructureSpec& spec);
// The Bejancu table plus Gamma^a_nc = N^a_c.
FullConnection n_connection(const StructureSpec& spec);

// Vector field on X by its components in the frame E.
using FrameField = std::vector<Expr>;

// E_A f.
Expr full_frame_derivative(const StructureSpec& spec, int a, const Expr& f);

FrameField covariant_derivative(const StructureSpec& spec, const FullConnection& conn,
                                const FrameField& x, const FrameField& y);
// [X, Y] in frame components, through the coordinate bracket.
FrameField frame_bracket(const StructureSpec& spec, const FrameField& x, const FrameField& y);

// S^N(X,Y) = 2 omega(X,Y) xi + eta(X) N Y - eta(Y) N X at p.
Eigen::VectorXd n_connection_torsion(const StructureSpec& spec, const FrameField& x,
                                     const FrameField& y, const Point& p);
// nabla_X Y - nabla_Y X - [X, Y] at p.
Eigen::VectorXd connection_torsion(const StructureSpec& spec, const FullConnection& conn,
                                   const FrameField& x, const FrameField& y, const Point& p);

struct MetricityReport {
  double max_residual = 0.0;
  std::array<int, 3> worst{0, 0, 0};  // (derivative, first, second) frame indices
};

// max |E_c G_ab - Gamma^d_ca G_db - Gamma^d_cb G_ad| over the sample, where
// G = diag(g_ab, 1) in the frame E.
MetricityReport metricity_check(const StructureSpec& spec, const FullConnection& conn,
                                const std::vector<Point>& sample);

}  // namespace acg
