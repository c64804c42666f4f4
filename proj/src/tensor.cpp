#include "acg/tensor.hpp"

#include <cmath>
#include <stdexcept>

#include "acg/errors.hpp"

namespace acg {

ExprMatrix zero_matrix(int rows, int cols) {
  return ExprMatrix(rows, std::vector<Expr>(cols));
}

ExprMatrix identity_matrix(int dim) {
  ExprMatrix m = zero_matrix(dim, dim);
  for (int i = 0; i < dim; ++i) m[i][i] = Expr(1.0);
  return m;
}

Eigen::MatrixXd eval(const ExprMatrix& m, const Point& p) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  Eigen::MatrixXd out(rows, cols);
  PointEvaluator ev(p);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = ev(m[i][j]);
  return out;
}

Eigen::VectorXd eval(std::span<const Expr> v, const Point& p) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  PointEvaluator ev(p);
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = ev(v[i]);
  return out;
}

namespace {

ExprMatrix minor_of(const ExprMatrix& m, int row, int col) {
  const int k = static_cast<int>(m.size());
  ExprMatrix out;
  out.reserve(k - 1);
  for (int i = 0; i < k; ++i) {
    if (i == row) continue;
    std::vector<Expr> r;
    r.reserve(k - 1);
    for (int j = 0; j < k; ++j)
      if (j != col) r.push_back(m[i][j]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Expr determinant(const ExprMatrix& m) {
  const int k = static_cast<int>(m.size());
  if (k == 0) return Expr(1.0);
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != k) throw DimensionMismatch("determinant of non-square matrix");
  if (k == 1) return m[0][0];
  if (k == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Expr det;
  for (int j = 0; j < k; ++j) {
    if (m[0][j].is_zero()) continue;
    Expr term = m[0][j] * determinant(minor_of(m, 0, j));
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

ExprMatrix inverse(const ExprMatrix& m) {
  const int k = static_cast<int>(m.size());
  const Expr det = determinant(m);
  if (det.is_zero()) throw SingularMetric("matrix is identically singular");
  ExprMatrix out = zero_matrix(k, k);
  if (k == 1) {
    out[0][0] = Expr(1.0) / det;
    return out;
  }
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      // inverse[i][j] = cofactor(j, i) / det
      Expr cof = determinant(minor_of(m, j, i));
      if (cof.is_zero()) continue;
      if ((i + j) % 2 == 1) cof = -cof;
      out[i][j] = cof / det;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

NumTensor::NumTensor(std::vector<int> s) : shape(std::move(s)) {
  std::size_t total = 1;
  for (int d : shape) total *= static_cast<std::size_t>(d);
  data.assign(total, 0.0);
}

std::size_t NumTensor::offset(std::span<const int> idx) const {
  if (idx.size() != shape.size()) throw DimensionMismatch("tensor index arity");
  std::size_t off = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= shape[i]) throw DimensionMismatch("tensor index out of range");
    off = off * static_cast<std::size_t>(shape[i]) + static_cast<std::size_t>(idx[i]);
  }
  return off;
}

double NumTensor::max_abs() const {
  double r = 0.0;
  for (double v : data) r = std::max(r, std::abs(v));
  return r;
}

double max_abs_diff(const NumTensor& a, const NumTensor& b) {
  if (a.shape != b.shape) throw DimensionMismatch("tensor shapes differ");
  double r = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) r = std::max(r, std::abs(a.data[i] - b.data[i]));
  return r;
}

// ---------------------------------------------------------------------------

AdmissibleTensor::AdmissibleTensor(int dim, int upper, int lower)
    : dim_(dim), upper_(upper), lower_(lower) {
  std::size_t total = 1;
  for (int i = 0; i < upper + lower; ++i) total *= static_cast<std::size_t>(dim);
  comps_.assign(total, Expr());
}

std::size_t AdmissibleTensor::offset(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank()) throw DimensionMismatch("tensor index arity");
  std::size_t off = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw DimensionMismatch("tensor index out of range");
    off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return off;
}

std::vector<int> AdmissibleTensor::index_of(std::size_t flat) const {
  std::vector<int> idx(rank());
  for (int i = rank() - 1; i >= 0; --i) {
    idx[i] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
    flat /= static_cast<std::size_t>(dim_);
  }
  return idx;
}

NumTensor AdmissibleTensor::eval(const Point& p) const {
  NumTensor out(std::vector<int>(rank(), dim_));
  PointEvaluator ev(p);
  for (std::size_t i = 0; i < comps_.size(); ++i) out.data[i] = ev(comps_[i]);
  return out;
}

bool AdmissibleTensor::is_structurally_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------

Expr directional_derivative(const VectorField& v, const Expr& f) {
  Expr out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    const Expr d = diff(f, static_cast<int>(i));
    if (!d.is_zero()) out += v[i] * d;
  }
  return out;
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
  if (v.size() != w.size()) throw DimensionMismatch("bracket of fields of different dimension");
  VectorField out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = directional_derivative(v, w[i]) - directional_derivative(w, v[i]);
  return out;
}

VectorField scale(const Expr& f, const VectorField& v) {
  VectorField out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = f * v[i];
  return out;
}

VectorField add(const VectorField& v, const VectorField& w) {
  if (v.size() != w.size()) throw DimensionMismatch("sum of fields of different dimension");
  VectorField out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] + w[i];
  return out;
}

VectorField coordinate_field(int dim, int index) {
  VectorField out(dim);
  out.at(index) = Expr(1.0);
  return out;
}

VectorField apply_endo(const ExprMatrix& t, const VectorField& v) {
  if (t.size() != v.size()) throw DimensionMismatch("endomorphism and field dimensions differ");
  VectorField out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!t[i][j].is_zero() && !v[j].is_zero()) out[i] += t[i][j] * v[j];
  return out;
}

VectorField nijenhuis(const ExprMatrix& t, const VectorField& x, const VectorField& y) {
  const VectorField tx = apply_endo(t, x);
  const VectorField ty = apply_endo(t, y);
  VectorField out = lie_bracket(tx, ty);
  out = add(out, apply_endo(t, apply_endo(t, lie_bracket(x, y))));
  out = add(out, scale(Expr(-1.0), apply_endo(t, lie_bracket(tx, y))));
  out = add(out, scale(Expr(-1.0), apply_endo(t, lie_bracket(x, ty))));
  return out;
}

}  // namespace acg
