#pragma once

// Sparse multivariate polynomials over Q whose monomials may carry one
// exponential factor exp(a). This is the representation underneath Expr; it
// is exposed for the engine's own tests and is not a stable interface.

#include <compare>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "riemext/expr.hpp"

namespace riemext::detail {

struct Monomial {
  std::vector<std::pair<Symbol, int>> powers;  // sorted by symbol, exponents > 0
  Expr exp_arg;                                // zero means no exponential factor

  bool is_one() const { return powers.empty() && exp_arg.is_zero(); }
  bool has_exp() const { return !exp_arg.is_zero(); }
  int degree(Symbol s) const;
  int total_degree() const;
};

/// Lexicographic order: the alphabetically first variable is most
/// significant; exponential arguments break ties.
std::strong_ordering compare(const Monomial& a, const Monomial& b);
bool operator==(const Monomial& a, const Monomial& b);

Monomial operator*(const Monomial& a, const Monomial& b);
/// a/b when every power of b divides a; the exponential arguments subtract.
std::optional<Monomial> divide(const Monomial& a, const Monomial& b);
/// Componentwise minimum of the variable powers (exponential part dropped).
Monomial gcd(const Monomial& a, const Monomial& b);
/// Drops `s` entirely.
Monomial without(const Monomial& m, Symbol s);

struct Term {
  Monomial mono;
  Rational coef;
};

class Poly {
 public:
  Poly() = default;
  static Poly constant(const Rational& c);
  static Poly monomial(Monomial m, const Rational& c = 1);
  static Poly variable(Symbol s, int power = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool has_exp() const;
  std::optional<Rational> constant_value() const;

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  /// Largest term in monomial order.
  const Term& lead() const { return terms_.front(); }

  int degree(Symbol s) const;
  std::vector<Symbol> variables() const;

  /// Coefficients of `s`: result[k] multiplies s^k, with s removed.
  std::map<int, Poly> coefficients(Symbol s) const;

  friend bool operator==(const Poly& a, const Poly& b);

  // Takes ownership of terms already sorted strictly descending, nonzero.
  static Poly from_sorted(std::vector<Term> terms);
  // Sorts, merges duplicates, drops zeros.
  static Poly from_unsorted(std::vector<Term> terms);

 private:
  std::vector<Term> terms_;
};

int compare(const Poly& a, const Poly& b);

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Rational& c);
Poly operator*(const Poly& a, const Term& t);
Poly pow(const Poly& a, unsigned k);

/// Exact quotient if `b` divides `a`; `b` must be free of exponentials.
std::optional<Poly> exact_divide(const Poly& a, const Poly& b);

/// Scales so the leading coefficient is 1 (zero stays zero).
Poly monic(const Poly& a);

/// Monomial content: componentwise minimum of the variable powers over all terms.
Monomial monomial_content(const Poly& a);

/// Greatest common divisor, normalized monic. Exponential factors are units:
/// when `a` and `b` carry exponentials only the exponential-free structure is
/// compared (terms are grouped by exponential part), and if both sides mix
/// several exponential parts the result falls back to the monomial gcd.
Poly gcd(const Poly& a, const Poly& b);

/// Partial derivative of the exponential-free part, treating exp factors as
/// constants; the chain-rule contribution is added by the caller.
Poly derive_powers(const Poly& a, Symbol v);

/// Groups terms by exponential argument (zero argument first if present).
std::vector<std::pair<Expr, Poly>> split_by_exp(const Poly& a);

}  // namespace riemext::detail
