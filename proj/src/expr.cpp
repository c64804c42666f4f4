#include "acg/expr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "acg/errors.hpp"

namespace acg {

namespace detail {
struct Node {
  Op op = Op::Const;
  double value = 0.0;  // Const
  int integer = 0;     // Var index or Pow exponent
  std::vector<Expr> args;
  std::uint64_t deps = 0;
  // Node count of the expanded tree, saturating. Far above the DAG size when
  // subexpressions are shared, as they are after differentiation.
  std::uint64_t tree_size = 1;
};
}  // namespace detail

using detail::Node;

std::string coordinate_name(int index) { return "x" + std::to_string(index + 1); }

int coordinate_index(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x') throw ParseError("bad coordinate name '" + name + "'");
  int k = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') throw ParseError("bad coordinate name '" + name + "'");
    k = k * 10 + (name[i] - '0');
    if (k > kMaxCoordinates) throw ParseError("coordinate out of range '" + name + "'");
  }
  if (k < 1 || name[1] == '0') throw ParseError("bad coordinate name '" + name + "'");
  return k - 1;
}

// ---------------------------------------------------------------------------
// Point

Point::Point(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) set(static_cast<int>(i), values[i]);
}

Point::Point(std::initializer_list<double> values)
    : Point(std::span<const double>(values.begin(), values.size())) {}

Point::Point(std::initializer_list<std::pair<std::string, double>> named) {
  for (const auto& [name, v] : named) set(name, v);
}

void Point::set(int index, double value) {
  if (index < 0 || index >= kMaxCoordinates) throw UnboundVariable("index " + std::to_string(index));
  if (static_cast<int>(values_.size()) <= index) values_.resize(index + 1, 0.0);
  values_[index] = value;
  bound_ |= (std::uint64_t{1} << index);
}

double Point::operator[](int index) const {
  if (!bound(index)) throw UnboundVariable(coordinate_name(index));
  return values_[index];
}

// ---------------------------------------------------------------------------
// Construction

Expr Expr::make(Op op, double value, int integer, std::vector<Expr> args) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->value = value;
  n->integer = integer;
  for (const auto& a : args) {
    n->deps |= a.deps();
    n->tree_size = std::min<std::uint64_t>(n->tree_size + a.node()->tree_size, std::uint64_t{1} << 62);
  }
  if (op == Op::Var) n->deps = std::uint64_t{1} << integer;
  n->args = std::move(args);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Expr() : Expr(0.0) {}

Expr::Expr(double c) {
  static const auto zero = [] {
    auto n = std::make_shared<Node>();
    return std::shared_ptr<const Node>(std::move(n));
  }();
  if (c == 0.0 && !std::signbit(c)) {
    node_ = zero;
  } else {
    auto n = std::make_shared<Node>();
    n->value = c;
    node_ = std::move(n);
  }
}

Expr Expr::constant(double c) { return Expr(c); }

Expr Expr::var(int index) {
  if (index < 0 || index >= kMaxCoordinates) throw ParseError("coordinate index out of range");
  return make(Op::Var, 0.0, index, {});
}

Op Expr::op() const { return node_->op; }
double Expr::const_value() const { return node_->value; }
int Expr::var_index() const { return node_->integer; }
int Expr::exponent() const { return node_->integer; }
const Expr& Expr::arg(int i) const { return node_->args.at(i); }
int Expr::arity() const { return static_cast<int>(node_->args.size()); }
std::uint64_t Expr::deps() const { return node_->deps; }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_const() && b.is_const()) return Expr(a.const_value() + b.const_value());
  return Expr::make(Op::Add, 0.0, 0, {a, b});
}

Expr operator-(const Expr& a) {
  if (a.is_const()) return Expr(-a.const_value());
  if (a.op() == Op::Neg) return a.arg(0);
  return Expr::make(Op::Neg, 0.0, 0, {a});
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.is_const() && b.is_const()) return Expr(a.const_value() - b.const_value());
  return a + (-b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_const(1.0)) return b;
  if (b.is_const(1.0)) return a;
  if (a.is_const(-1.0)) return -b;
  if (b.is_const(-1.0)) return -a;
  if (a.is_const() && b.is_const()) return Expr(a.const_value() * b.const_value());
  return Expr::make(Op::Mul, 0.0, 0, {a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_const(1.0)) return a;
  if (a.is_zero() && !b.is_zero()) return Expr();
  if (a.is_const() && b.is_const() && b.const_value() != 0.0)
    return Expr(a.const_value() / b.const_value());
  return Expr::make(Op::Div, 0.0, 0, {a, b});
}

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr(1.0);
  if (exponent == 1) return base;
  if (base.is_const() && !(base.is_zero() && exponent < 0))
    return Expr(std::pow(base.const_value(), exponent));
  return Expr::make(Op::Pow, 0.0, exponent, {base});
}

Expr exp(const Expr& a) {
  if (a.is_const()) return Expr(std::exp(a.const_value()));
  return Expr::make(Op::Exp, 0.0, 0, {a});
}

Expr sin(const Expr& a) {
  if (a.is_const()) return Expr(std::sin(a.const_value()));
  return Expr::make(Op::Sin, 0.0, 0, {a});
}

Expr cos(const Expr& a) {
  if (a.is_const()) return Expr(std::cos(a.const_value()));
  return Expr::make(Op::Cos, 0.0, 0, {a});
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Trees at least this large are evaluated with a per-call memo over shared nodes.
constexpr std::uint64_t kMemoTreeSize = 512;
// Nodes smaller than this are cheaper to recompute than to look up.
constexpr std::uint64_t kMemoNodeSize = 16;

template <class Rec>
double eval_op(const Node& n, const Point& p, Rec&& rec) {
  switch (n.op) {
    case Op::Const:
      return n.value;
    case Op::Var:
      return p[n.integer];
    case Op::Add:
      return rec(*n.args[0].node()) + rec(*n.args[1].node());
    case Op::Mul:
      return rec(*n.args[0].node()) * rec(*n.args[1].node());
    case Op::Neg:
      return -rec(*n.args[0].node());
    case Op::Div: {
      const double den = rec(*n.args[1].node());
      if (den == 0.0) throw DivisionByZero("denominator " + n.args[1].str() + " vanishes");
      return rec(*n.args[0].node()) / den;
    }
    case Op::Pow: {
      const double b = rec(*n.args[0].node());
      if (b == 0.0 && n.integer < 0) throw DivisionByZero("zero base with negative exponent");
      return std::pow(b, n.integer);
    }
    case Op::Exp:
      return std::exp(rec(*n.args[0].node()));
    case Op::Sin:
      return std::sin(rec(*n.args[0].node()));
    case Op::Cos:
      return std::cos(rec(*n.args[0].node()));
  }
  return 0.0;
}

double eval_node(const Node& n, const Point& p) {
  return eval_op(n, p, [&p](const Node& c) { return eval_node(c, p); });
}

class MemoEvaluator {
 public:
  explicit MemoEvaluator(const Point& p) : p_(p) {}

  double operator()(const Node& n) {
    if (n.tree_size < kMemoNodeSize) return eval_node(n, p_);
    const auto it = memo_.find(&n);
    if (it != memo_.end()) return it->second;
    const double v = eval_op(n, p_, *this);
    memo_.emplace(&n, v);
    return v;
  }

 private:
  const Point& p_;
  std::unordered_map<const Node*, double> memo_;
};

void print(std::ostream& os, const Expr& e) {
  switch (e.op()) {
    case Op::Const: {
      const double v = e.const_value();
      if (v < 0) os << '(' << v << ')';
      else os << v;
      return;
    }
    case Op::Var:
      os << coordinate_name(e.var_index());
      return;
    case Op::Add:
      os << '(';
      print(os, e.arg(0));
      os << " + ";
      print(os, e.arg(1));
      os << ')';
      return;
    case Op::Mul:
      print(os, e.arg(0));
      os << '*';
      print(os, e.arg(1));
      return;
    case Op::Neg:
      os << "-(";
      print(os, e.arg(0));
      os << ')';
      return;
    case Op::Div:
      os << '(';
      print(os, e.arg(0));
      os << ")/(";
      print(os, e.arg(1));
      os << ')';
      return;
    case Op::Pow:
      os << '(';
      print(os, e.arg(0));
      os << ")^" << e.exponent();
      return;
    case Op::Exp:
    case Op::Sin:
    case Op::Cos:
      os << (e.op() == Op::Exp ? "exp(" : e.op() == Op::Sin ? "sin(" : "cos(");
      print(os, e.arg(0));
      os << ')';
      return;
  }
}

}  // namespace

struct PointEvaluator::Impl {
  explicit Impl(const Point& p) : memo(p) {}
  MemoEvaluator memo;
};

PointEvaluator::PointEvaluator(const Point& p) : impl_(std::make_unique<Impl>(p)) {}
PointEvaluator::~PointEvaluator() = default;

double PointEvaluator::operator()(const Expr& e) { return impl_->memo(*e.node()); }

double Expr::eval(const Point& p) const {
  if (node_->tree_size < kMemoTreeSize) return eval_node(*node_, p);
  MemoEvaluator memo(p);
  return memo(*node_);
}

std::string Expr::str() const {
  std::ostringstream os;
  print(os, *this);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Expr& e) {
  print(os, e);
  return os;
}

bool same(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return true;
  if (a.op() != b.op() || a.deps() != b.deps() || a.arity() != b.arity()) return false;
  switch (a.op()) {
    case Op::Const:
      return a.const_value() == b.const_value();
    case Op::Var:
      return a.var_index() == b.var_index();
    case Op::Pow:
      if (a.exponent() != b.exponent()) return false;
      break;
    default:
      break;
  }
  for (int i = 0; i < a.arity(); ++i)
    if (!same(a.arg(i), b.arg(i))) return false;
  return true;
}

int coordinate_extent(const Expr& e) {
  return e.deps() == 0 ? 0 : 64 - std::countl_zero(e.deps());
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

class Differentiator {
 public:
  explicit Differentiator(int index) : index_(index) {}

  Expr operator()(const Expr& e) {
    if (!e.depends_on(index_)) return Expr();
    if (auto it = memo_.find(e.node()); it != memo_.end()) return it->second;
    Expr d = compute(e);
    memo_.emplace(e.node(), d);
    return d;
  }

 private:
  Expr compute(const Expr& e) {
    switch (e.op()) {
      case Op::Const:
        return Expr();
      case Op::Var:
        return Expr(1.0);
      case Op::Add:
        return (*this)(e.arg(0)) + (*this)(e.arg(1));
      case Op::Mul:
        return (*this)(e.arg(0)) * e.arg(1) + e.arg(0) * (*this)(e.arg(1));
      case Op::Neg:
        return -(*this)(e.arg(0));
      case Op::Div: {
        const Expr& num = e.arg(0);
        const Expr& den = e.arg(1);
        return (*this)(num) / den - num * (*this)(den) / pow(den, 2);
      }
      case Op::Pow: {
        const int k = e.exponent();
        return Expr(static_cast<double>(k)) * pow(e.arg(0), k - 1) * (*this)(e.arg(0));
      }
      case Op::Exp:
        return e * (*this)(e.arg(0));
      case Op::Sin:
        return cos(e.arg(0)) * (*this)(e.arg(0));
      case Op::Cos:
        return -(sin(e.arg(0)) * (*this)(e.arg(0)));
    }
    return Expr();
  }

  int index_;
  std::unordered_map<const Node*, Expr> memo_;
};

}  // namespace

Expr diff(const Expr& e, int index) {
  if (index < 0 || index >= kMaxCoordinates) throw ParseError("coordinate index out of range");
  return Differentiator(index)(e);
}

double fd_diff(const Expr& e, int index, const Point& p, double h) {
  Point plus = p;
  Point minus = p;
  plus.set(index, p[index] + h);
  minus.set(index, p[index] - h);
  return (e.eval(plus) - e.eval(minus)) / (2.0 * h);
}

}  // namespace acg
