#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "riemext/errors.hpp"
#include "riemext/symbol.hpp"

namespace riemext {

using Rational = mpq_class;

namespace detail {
struct RatFunc;
}

/// Exact symbolic scalar.
///
/// An Expr is always held in canonical form: a quotient num/den of two
/// polynomials over the rationals whose monomials are products of variable
/// powers and at most one exponential kernel exp(a). The quotient is reduced
/// by polynomial gcd and den is scaled so that its leading term has
/// coefficient 1. Mathematically equal rational functions therefore compare
/// equal structurally, and "canonically zero" means num is the empty
/// polynomial. Values are immutable and cheap to copy.
class Expr {
 public:
  Expr();
  Expr(int value);  // NOLINT(google-explicit-constructor)
  Expr(long value);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)
  explicit Expr(Symbol symbol);

  static Expr variable(std::string_view name) { return Expr(Symbol(name)); }
  static Expr rational(long num, long den);

  bool is_zero() const;
  bool is_one() const;
  bool is_constant() const;
  bool has_exp() const;
  std::optional<Rational> constant_value() const;

  /// Every symbol occurring anywhere, including inside exponential arguments.
  std::set<Symbol> free_symbols() const;
  bool depends_on(Symbol s) const;

  Expr operator-() const;
  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  Expr& operator/=(const Expr& o);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);

  friend bool operator==(const Expr& a, const Expr& b);

  const detail::RatFunc& rep() const;
  explicit Expr(std::shared_ptr<const detail::RatFunc> rep) : rep_(std::move(rep)) {}

 private:
  std::shared_ptr<const detail::RatFunc> rep_;  // null means 0
};

/// Total order on canonical forms (-1, 0, 1).
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

Expr pow(const Expr& base, long exponent);
Expr exp(const Expr& argument);

/// Exact partial derivative with respect to `v`.
Expr derive(const Expr& e, Symbol v);

/// Canonical form of `e`. Every Expr is already canonical, so this is the
/// identity; it exists for symmetry with normalize(const Node&).
inline Expr normalize(const Expr& e) { return e; }

/// Simultaneous substitution of symbols by expressions.
Expr substitute(const Expr& e, const std::map<Symbol, Expr>& bindings);

/// Result of evaluating at a point: exact when no exponential survives,
/// otherwise a double (relative accuracy well under 1e-12 for moderate sizes).
struct Value {
  std::optional<Rational> exact;
  double approx = 0.0;
};

/// Throws UnboundSymbol if a free symbol has no value and DivisionByZero if
/// the denominator vanishes at `point`.
Value eval_at(const Expr& e, const std::map<Symbol, Rational>& point);

/// Floating evaluation, used by finite-difference oracles.
double eval_double(const Expr& e, const std::map<Symbol, double>& point);

// ---------------------------------------------------------------------------
// Expression trees.
//
// The tree view is what the parser produces and what the renderers consume.
// normalize(Node) folds a tree into canonical form; to_node(Expr) yields the
// canonical tree: Sums hold no Sums, Products hold no Products, the numeric
// factor comes first, factors are ordered by kind then symbol name, and
// Power exponents are nonzero integers.

struct Node {
  enum class Kind { Constant, Variable, Sum, Product, Power, Exp };

  Kind kind = Kind::Constant;
  Rational value;              // Constant
  Symbol symbol;               // Variable
  std::vector<Node> operands;  // Sum / Product terms; Power base and Exp argument at [0]
  long exponent = 0;           // Power

  static Node constant(const Rational& v);
  static Node variable(Symbol s);
  static Node sum(std::vector<Node> terms);
  static Node product(std::vector<Node> factors);
  static Node power(Node base, long exponent);
  static Node exp(Node argument);

  friend bool operator==(const Node& a, const Node& b);
};

Expr normalize(const Node& node);
Node to_node(const Expr& e);

}  // namespace riemext
