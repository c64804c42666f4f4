#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "acg/expr.hpp"

namespace acg {

using ExprMatrix = std::vector<std::vector<Expr>>;

ExprMatrix zero_matrix(int rows, int cols);
ExprMatrix identity_matrix(int dim);
Eigen::MatrixXd eval(const ExprMatrix& m, const Point& p);
Eigen::VectorXd eval(std::span<const Expr> v, const Point& p);

// Symbolic determinant and inverse by cofactor expansion; meant for the small
// (n-1)x(n-1) blocks this library works with.
Expr determinant(const ExprMatrix& m);
ExprMatrix inverse(const ExprMatrix& m);

// Dense numeric tensor, row-major over `shape`.
struct NumTensor {
  std::vector<int> shape;
  std::vector<double> data;

  NumTensor() = default;
  explicit NumTensor(std::vector<int> s);

  std::size_t offset(std::span<const int> idx) const;
  double& at(std::initializer_list<int> idx) { return data[offset({idx.begin(), idx.size()})]; }
  double at(std::initializer_list<int> idx) const { return data[offset({idx.begin(), idx.size()})]; }
  double max_abs() const;
};

double max_abs_diff(const NumTensor& a, const NumTensor& b);

// Tensor field with `upper` indices followed by `lower` indices, each ranging
// over 0..dim-1. For the admissible tensors of a structure dim = n-1 and the
// components refer to the adapted frame e_a and coframe dx^a.
class AdmissibleTensor {
 public:
  AdmissibleTensor() = default;
  AdmissibleTensor(int dim, int upper, int lower);

  int dim() const { return dim_; }
  int upper() const { return upper_; }
  int lower() const { return lower_; }
  int rank() const { return upper_ + lower_; }
  std::size_t size() const { return comps_.size(); }

  template <class... I>
  Expr& operator()(I... idx) {
    const int a[] = {static_cast<int>(idx)...};
    return comps_[offset(a)];
  }
  template <class... I>
  const Expr& operator()(I... idx) const {
    const int a[] = {static_cast<int>(idx)...};
    return comps_[offset(a)];
  }
  Expr& at(std::span<const int> idx) { return comps_[offset(idx)]; }
  const Expr& at(std::span<const int> idx) const { return comps_[offset(idx)]; }

  std::vector<Expr>& components() { return comps_; }
  const std::vector<Expr>& components() const { return comps_; }

  // Multi-index of the flat position `flat`.
  std::vector<int> index_of(std::size_t flat) const;

  NumTensor eval(const Point& p) const;
  bool is_structurally_zero() const;

 private:
  std::size_t offset(std::span<const int> idx) const;

  int dim_ = 0;
  int upper_ = 0;
  int lower_ = 0;
  std::vector<Expr> comps_;
};

// Vector field in a coordinate basis: component i multiplies d/dx^(i+1).
using VectorField = std::vector<Expr>;

// v(f) = v^i d_i f.
Expr directional_derivative(const VectorField& v, const Expr& f);
// [v, w]^i = v(w^i) - w(v^i).
VectorField lie_bracket(const VectorField& v, const VectorField& w);
VectorField scale(const Expr& f, const VectorField& v);
VectorField add(const VectorField& v, const VectorField& w);
VectorField coordinate_field(int dim, int index);

// (T v)^i = T[i][j] v^j for an endomorphism field given in coordinates.
VectorField apply_endo(const ExprMatrix& t, const VectorField& v);
// N_T(X,Y) = [TX,TY] + T^2[X,Y] - T[TX,Y] - T[X,TY], no 1/2 factor.
VectorField nijenhuis(const ExprMatrix& t, const VectorField& x, const VectorField& y);

}  // namespace acg
