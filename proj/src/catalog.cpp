#include "acg/catalog.hpp"

#include <algorithm>

#include "acg/errors.hpp"
#include "acg/sampling.hpp"

namespace acg {

namespace {

Expr x(int k) { return Expr::var(k - 1); }

ExprMatrix scaled_identity(int dim, const Expr& s) {
  ExprMatrix m = zero_matrix(dim, dim);
  for (int i = 0; i < dim; ++i) m[i][i] = s;
  return m;
}

StructureSpec heisenberg3() {
  StructureSpec s;
  s.name = "heisenberg3";
  s.n = 3;
  s.gamma_n = {-x(2), Expr()};
  s.g = scaled_identity(2, Expr(0.5));
  ExprMatrix phi = zero_matrix(2, 2);
  phi[0][1] = Expr(1.0);
  phi[1][0] = Expr(-1.0);
  s.phi = phi;
  return s;
}

StructureSpec warped_heisenberg() {
  StructureSpec s;
  s.name = "warped-heisenberg";
  s.n = 3;
  s.gamma_n = {-x(2), Expr()};
  s.g = scaled_identity(2, Expr(0.5) * exp(x(3)));
  return s;
}

StructureSpec curved_heisenberg() {
  StructureSpec s;
  s.name = "curved-heisenberg";
  s.n = 3;
  s.gamma_n = {-x(2), Expr()};
  s.g = zero_matrix(2, 2);
  s.g[0][0] = Expr(0.5) * (Expr(1.0) + pow(x(2), 2));
  s.g[1][1] = Expr(0.5);
  return s;
}

StructureSpec heisenberg5() {
  StructureSpec s;
  s.name = "heisenberg5";
  s.n = 5;
  s.gamma_n = {-x(3), -x(4), Expr(), Expr()};
  s.g = scaled_identity(4, Expr(0.5));
  ExprMatrix phi = zero_matrix(4, 4);
  phi[0][2] = Expr(1.0);
  phi[2][0] = Expr(-1.0);
  phi[1][3] = Expr(1.0);
  phi[3][1] = Expr(-1.0);
  s.phi = phi;
  return s;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"heisenberg3", "warped-heisenberg",
                                                 "curved-heisenberg", "heisenberg5"};
  return names;
}

bool in_catalog(const std::string& name) {
  const auto& names = catalog_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

StructureSpec catalog_structure(const std::string& name) {
  if (name == "heisenberg3") return heisenberg3();
  if (name == "warped-heisenberg") return warped_heisenberg();
  if (name == "curved-heisenberg") return curved_heisenberg();
  if (name == "heisenberg5") return heisenberg5();
  throw SpecMalformed("unknown catalog structure '" + name + "'");
}

StructureSpec perturbed_catalog_structure(std::uint64_t seed, double amplitude) {
  const auto& names = catalog_names();
  StructureSpec s = catalog_structure(names[seed % names.size()]);
  s.name += "~" + std::to_string(seed);
  Sampler rng(seed);
  const int m = s.m();
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      Expr v = Expr(amplitude * rng.uniform(-1, 1)) * Expr::var((a + b) % m);
      if ((seed / 2) % 2 == 1) v += Expr(amplitude * rng.uniform(-1, 1)) * pow(Expr::var(s.xn()), 2);
      s.g[a][b] = s.g[a][b] + v;
      if (a != b) s.g[b][a] = s.g[b][a] + v;
    }
  return s;
}

}  // namespace acg
