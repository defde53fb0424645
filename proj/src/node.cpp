#include <algorithm>

#include "riemext/detail/ratfunc.hpp"
#include "riemext/expr.hpp"

namespace riemext {

using detail::Monomial;
using detail::Poly;

Node Node::constant(const Rational& v) {
  Node n;
  n.kind = Kind::Constant;
  n.value = v;
  return n;
}

Node Node::variable(Symbol s) {
  Node n;
  n.kind = Kind::Variable;
  n.symbol = s;
  return n;
}

Node Node::sum(std::vector<Node> terms) {
  Node n;
  n.kind = Kind::Sum;
  n.operands = std::move(terms);
  return n;
}

Node Node::product(std::vector<Node> factors) {
  Node n;
  n.kind = Kind::Product;
  n.operands = std::move(factors);
  return n;
}

Node Node::power(Node base, long exponent) {
  Node n;
  n.kind = Kind::Power;
  n.operands.push_back(std::move(base));
  n.exponent = exponent;
  return n;
}

Node Node::exp(Node argument) {
  Node n;
  n.kind = Kind::Exp;
  n.operands.push_back(std::move(argument));
  return n;
}

bool operator==(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Node::Kind::Constant:
      return a.value == b.value;
    case Node::Kind::Variable:
      return a.symbol == b.symbol;
    case Node::Kind::Power:
      return a.exponent == b.exponent && a.operands == b.operands;
    default:
      return a.operands == b.operands;
  }
}

Expr normalize(const Node& node) {
  switch (node.kind) {
    case Node::Kind::Constant:
      return Expr(node.value);
    case Node::Kind::Variable:
      return Expr(node.symbol);
    case Node::Kind::Sum: {
      Expr out;
      for (const auto& t : node.operands) out += normalize(t);
      return out;
    }
    case Node::Kind::Product: {
      Expr out(1);
      for (const auto& f : node.operands) out *= normalize(f);
      return out;
    }
    case Node::Kind::Power:
      return pow(normalize(node.operands.at(0)), node.exponent);
    case Node::Kind::Exp:
      return exp(normalize(node.operands.at(0)));
  }
  return Expr();
}

namespace {

Node power_node(Symbol s, int k) {
  if (k == 1) return Node::variable(s);
  return Node::power(Node::variable(s), k);
}

// One term c * vars^k * exp(a), optionally divided by an exponential-free
// monomial denominator.
Node term_node(const Rational& coef, const Monomial& mono, const Monomial* den) {
  std::vector<Node> factors;
  std::vector<std::pair<Symbol, int>> merged;
  auto ia = mono.powers.begin();
  const std::vector<std::pair<Symbol, int>> none;
  const auto& dp = den ? den->powers : none;
  auto ib = dp.begin();
  while (ia != mono.powers.end() || ib != dp.end()) {
    if (ib == dp.end() || (ia != mono.powers.end() && ia->first < ib->first)) {
      merged.push_back(*ia++);
    } else if (ia == mono.powers.end() || ib->first < ia->first) {
      merged.emplace_back(ib->first, -ib->second);
      ++ib;
    } else {
      int k = ia->second - ib->second;
      if (k != 0) merged.emplace_back(ia->first, k);
      ++ia;
      ++ib;
    }
  }
  if (coef != 1 || (merged.empty() && !mono.has_exp())) factors.push_back(Node::constant(coef));
  for (const auto& [s, k] : merged) factors.push_back(power_node(s, k));
  if (mono.has_exp()) factors.push_back(Node::exp(to_node(mono.exp_arg)));
  if (factors.size() == 1) return factors.front();
  return Node::product(std::move(factors));
}

Node poly_node(const Poly& p) {
  std::vector<Node> terms;
  for (const auto& t : p.terms()) terms.push_back(term_node(t.coef, t.mono, nullptr));
  if (terms.size() == 1) return terms.front();
  return Node::sum(std::move(terms));
}

}  // namespace

Node to_node(const Expr& e) {
  const auto& r = e.rep();
  if (r.num.is_zero()) return Node::constant(0);
  if (r.den.is_one()) return poly_node(r.num);
  if (r.den.is_monomial() && !r.den.has_exp()) {
    const Monomial& dm = r.den.lead().mono;
    std::vector<Node> terms;
    for (const auto& t : r.num.terms()) terms.push_back(term_node(t.coef, t.mono, &dm));
    if (terms.size() == 1) return terms.front();
    return Node::sum(std::move(terms));
  }
  Node den = Node::power(poly_node(r.den), -1);
  if (r.num.is_monomial()) {
    Node num = term_node(r.num.lead().coef, r.num.lead().mono, nullptr);
    std::vector<Node> factors;
    if (num.kind == Node::Kind::Product) {
      factors = std::move(num.operands);
    } else if (!(num.kind == Node::Kind::Constant && num.value == 1)) {
      factors.push_back(std::move(num));
    }
    factors.push_back(std::move(den));
    if (factors.size() == 1) return factors.front();
    return Node::product(std::move(factors));
  }
  return Node::product({poly_node(r.num), std::move(den)});
}

}  // namespace riemext
