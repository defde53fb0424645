#pragma once

// Test-only oracles. Everything here works on expression trees or plain
// doubles and never goes through the canonical-form machinery, so it stays
// independent of the code paths it checks.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "riemext/expr.hpp"

namespace oracle {

using riemext::Node;
using riemext::Rational;
using riemext::Symbol;

inline double eval_tree(const Node& n, const std::map<Symbol, double>& point) {
  switch (n.kind) {
    case Node::Kind::Constant:
      return n.value.get_d();
    case Node::Kind::Variable:
      return point.at(n.symbol);
    case Node::Kind::Sum: {
      double s = 0;
      for (const auto& o : n.operands) s += eval_tree(o, point);
      return s;
    }
    case Node::Kind::Product: {
      double p = 1;
      for (const auto& o : n.operands) p *= eval_tree(o, point);
      return p;
    }
    case Node::Kind::Power:
      return std::pow(eval_tree(n.operands[0], point), static_cast<double>(n.exponent));
    case Node::Kind::Exp:
      return std::exp(eval_tree(n.operands[0], point));
  }
  return NAN;
}

inline double central_difference(const Node& n, std::map<Symbol, double> point, Symbol v,
                                 double h) {
  double x0 = point.at(v);
  point[v] = x0 + h;
  double fp = eval_tree(n, point);
  point[v] = x0 - h;
  double fm = eval_tree(n, point);
  return (fp - fm) / (2 * h);
}

/// Random expression trees that stay finite for coordinates in [0.5, 2]:
/// negative powers only apply to a bare variable or to 1 + (...)^2, and
/// exponential arguments are small multiples of a variable.
class TreeGenerator {
 public:
  TreeGenerator(std::mt19937_64& rng, std::vector<std::string> names) : rng_(rng) {
    for (auto& n : names) vars_.emplace_back(n);
  }

  Node tree(int depth) {
    if (depth <= 0 || chance(0.25)) return leaf();
    switch (uniform(0, 4)) {
      case 0:
      case 1: {
        std::vector<Node> ops;
        int k = uniform(2, 3);
        for (int i = 0; i < k; ++i) ops.push_back(tree(depth - 1));
        return Node::sum(std::move(ops));
      }
      case 2: {
        std::vector<Node> ops;
        int k = uniform(2, 3);
        for (int i = 0; i < k; ++i) ops.push_back(tree(depth - 1));
        return Node::product(std::move(ops));
      }
      case 3: {
        static const long exps[] = {-2, -1, 2, 3};
        long e = exps[uniform(0, 3)];
        if (e < 0) {
          if (chance(0.5)) return Node::power(variable(), e);
          Node sq = Node::power(tree(depth - 1), 2);
          return Node::power(Node::sum({Node::constant(1), sq}), e);
        }
        return Node::power(tree(depth - 1), e);
      }
      default: {
        static const Rational scales[] = {Rational(-1), Rational(1, 2), Rational(1)};
        return Node::exp(Node::product({Node::constant(scales[uniform(0, 2)]), variable()}));
      }
    }
  }

 private:
  std::mt19937_64& rng_;
  std::vector<Symbol> vars_;

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  Node variable() { return Node::variable(vars_[uniform(0, static_cast<int>(vars_.size()) - 1)]); }
  Node leaf() {
    if (chance(0.6)) return variable();
    return Node::constant(Rational(uniform(-3, 3)));
  }
};

inline Node shuffle_operands(Node n, std::mt19937_64& rng) {
  for (auto& o : n.operands) o = shuffle_operands(o, rng);
  if (n.kind == Node::Kind::Sum || n.kind == Node::Kind::Product)
    std::shuffle(n.operands.begin(), n.operands.end(), rng);
  return n;
}

}  // namespace oracle

namespace oracle {

/// Christoffel symbols from the metric by central differences of its
/// components and a numeric inverse. gamma[k][i][j], 0-based.
inline std::vector<std::vector<std::vector<double>>> numeric_christoffel(
    const std::vector<std::vector<riemext::Expr>>& g, const std::vector<Symbol>& coords,
    const std::map<Symbol, double>& point, double h = 1e-5) {
  std::size_t n = coords.size();
  auto eval_g = [&](const std::map<Symbol, double>& p) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = riemext::eval_double(g[i][j], p);
    return m;
  };
  // dg[l][i][j] = d_l g_ij
  std::vector<std::vector<std::vector<double>>> dg(n);
  for (std::size_t l = 0; l < n; ++l) {
    auto p = point;
    p[coords[l]] += h;
    auto gp = eval_g(p);
    p[coords[l]] -= 2 * h;
    auto gm = eval_g(p);
    dg[l].assign(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dg[l][i][j] = (gp[i][j] - gm[i][j]) / (2 * h);
  }
  // Gauss-Jordan with partial pivoting.
  auto a = eval_g(point);
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    double d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      double f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  std::vector<std::vector<std::vector<double>>> gam(
      n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l)
          gam[k][i][j] += 0.5 * inv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
  return gam;
}

}  // namespace oracle
