#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace acg {

// Coordinates are named x1, x2, ... and addressed internally by their
// zero-based index (x1 -> 0). At most kMaxCoordinates can appear in one chart.
inline constexpr int kMaxCoordinates = 64;

std::string coordinate_name(int index);
// Returns the zero-based index for "x<k>", throws ParseError otherwise.
int coordinate_index(const std::string& name);

// A point of a chart: values for some subset of the coordinates.
class Point {
 public:
  Point() = default;
  // Binds x1..xk to the given values.
  explicit Point(std::span<const double> values);
  Point(std::initializer_list<double> values);
  Point(std::initializer_list<std::pair<std::string, double>> named);

  void set(int index, double value);
  void set(const std::string& name, double value) { set(coordinate_index(name), value); }

  bool bound(int index) const {
    return index >= 0 && index < kMaxCoordinates && ((bound_ >> index) & 1u);
  }
  double operator[](int index) const;  // throws UnboundVariable
  double value(const std::string& name) const { return (*this)[coordinate_index(name)]; }
  // Number of leading coordinates stored (bound or not).
  int size() const { return static_cast<int>(values_.size()); }

 private:
  std::vector<double> values_;
  std::uint64_t bound_ = 0;
};

enum class Op { Const, Var, Add, Mul, Neg, Div, Pow, Exp, Sin, Cos };

class Expr;

namespace detail {
struct Node;
}

// Immutable closed-form scalar expression over chart coordinates.
//
// Construction goes through folding constructors, so trivially zero results
// (derivative of an expression not depending on a variable, products with a
// literal zero) collapse to the constant 0 and can be tested with is_zero().
class Expr {
 public:
  Expr();  // constant 0
  Expr(double c);  // NOLINT(google-explicit-constructor)

  static Expr constant(double c);
  static Expr var(int index);
  static Expr var(const std::string& name) { return var(coordinate_index(name)); }

  Op op() const;
  double const_value() const;  // valid for Op::Const
  int var_index() const;       // valid for Op::Var
  int exponent() const;        // valid for Op::Pow
  const Expr& arg(int i) const;
  int arity() const;

  bool is_const() const { return op() == Op::Const; }
  bool is_zero() const { return is_const() && const_value() == 0.0; }
  bool is_const(double c) const { return is_const() && const_value() == c; }

  // Bitmask of coordinates the expression depends on.
  std::uint64_t deps() const;
  bool depends_on(int index) const { return (deps() >> index) & 1u; }

  double eval(const Point& p) const;
  std::string str() const;

  // Structural identity of the two trees.
  friend bool same(const Expr& a, const Expr& b);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, int exponent);
  friend Expr exp(const Expr& a);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);

  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }

  const detail::Node* node() const { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  static Expr make(Op op, double value, int integer, std::vector<Expr> args);

  std::shared_ptr<const detail::Node> node_;
};

bool same(const Expr& a, const Expr& b);
Expr pow(const Expr& base, int exponent);
Expr exp(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);

std::ostream& operator<<(std::ostream& os, const Expr& e);

// Evaluates many expressions at one point, computing each shared
// subexpression once across all of them.
class PointEvaluator {
 public:
  explicit PointEvaluator(const Point& p);
  ~PointEvaluator();
  PointEvaluator(const PointEvaluator&) = delete;
  PointEvaluator& operator=(const PointEvaluator&) = delete;

  double operator()(const Expr& e);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Exact partial derivative with respect to coordinate `index`.
Expr diff(const Expr& e, int index);
inline Expr diff(const Expr& e, const std::string& name) { return diff(e, coordinate_index(name)); }

// Central difference (f(x+h) - f(x-h)) / 2h. Test oracle only.
double fd_diff(const Expr& e, int index, const Point& p, double h);
inline double fd_diff(const Expr& e, const std::string& name, const Point& p, double h) {
  return fd_diff(e, coordinate_index(name), p, h);
}

// Highest coordinate index referenced plus one (0 for constants).
int coordinate_extent(const Expr& e);

}  // namespace acg
