#include "riemext/expr.hpp"

#include <cmath>

#include "riemext/detail/ratfunc.hpp"

namespace riemext {

using detail::make_expr;
using detail::make_reduced;
using detail::Monomial;
using detail::Poly;
using detail::RatFunc;
using detail::Term;

namespace {

std::shared_ptr<const RatFunc> constant_rep(const Rational& v) {
  return std::make_shared<const RatFunc>(RatFunc{Poly::constant(v), Poly::constant(1)});
}

const std::shared_ptr<const RatFunc>& zero_rep() {
  static const std::shared_ptr<const RatFunc> rep;
  return rep;
}

const RatFunc& zero_ratfunc() {
  static const RatFunc r{Poly{}, Poly::constant(1)};
  return r;
}

const std::shared_ptr<const RatFunc>& one_rep() {
  static const auto rep = constant_rep(1);
  return rep;
}

// Moves the exponential factor of den's leading term and its coefficient
// into num so that den satisfies the RatFunc invariant.
void normalize_units(Poly& num, Poly& den) {
  if (den.lead().mono.has_exp()) {
    Term inv{Monomial{{}, -den.lead().mono.exp_arg}, 1};
    num = num * inv;
    den = den * inv;
  }
  if (den.lead().coef != 1) {
    Rational c = 1 / den.lead().coef;
    num = num * c;
    den = den * c;
  }
}

}  // namespace

namespace detail {

Expr make_reduced(Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero("division by zero");
  if (num.is_zero()) return Expr();
  normalize_units(num, den);
  if (num.is_one() && den.is_one()) return Expr(one_rep());
  return Expr(std::make_shared<const RatFunc>(RatFunc{std::move(num), std::move(den)}));
}

Expr make_expr(Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero("division by zero");
  if (num.is_zero()) return Expr();
  if (!den.is_constant()) {
    Poly g = gcd(num, den);
    if (!g.is_constant()) {
      num = *exact_divide(num, g);
      den = *exact_divide(den, g);
    }
  }
  return make_reduced(std::move(num), std::move(den));
}

Expr from_poly(Poly p) {
  if (p.is_zero()) return Expr();
  return make_reduced(std::move(p), Poly::constant(1));
}

}  // namespace detail

Expr::Expr() = default;

const RatFunc& Expr::rep() const { return rep_ ? *rep_ : zero_ratfunc(); }
Expr::Expr(int value) : Expr(static_cast<long>(value)) {}
Expr::Expr(long value)
    : rep_(value == 0 ? zero_rep() : value == 1 ? one_rep() : constant_rep(Rational(value))) {}
Expr::Expr(const Rational& value) : rep_(value == 0 ? zero_rep() : constant_rep(value)) {}
Expr::Expr(Symbol symbol)
    : rep_(std::make_shared<const RatFunc>(RatFunc{Poly::variable(symbol), Poly::constant(1)})) {}

Expr Expr::rational(long num, long den) {
  if (den == 0) throw DivisionByZero("division by zero");
  Rational q(num, den);
  q.canonicalize();
  return Expr(q);
}

bool Expr::is_zero() const { return !rep_ || rep_->num.is_zero(); }
bool Expr::is_one() const { return rep_ && rep_->num.is_one() && rep_->den.is_one(); }
bool Expr::is_constant() const { return !rep_ || (rep_->num.is_constant() && rep_->den.is_one()); }
bool Expr::has_exp() const { return rep_ && (rep_->num.has_exp() || rep_->den.has_exp()); }

std::optional<Rational> Expr::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return rep().num.constant_value();
}

std::set<Symbol> Expr::free_symbols() const {
  std::set<Symbol> out;
  for (const Poly* p : {&rep().num, &rep().den}) {
    for (const auto& t : p->terms()) {
      for (const auto& [v, k] : t.mono.powers) out.insert(v);
      if (t.mono.has_exp()) {
        auto inner = t.mono.exp_arg.free_symbols();
        out.insert(inner.begin(), inner.end());
      }
    }
  }
  return out;
}

bool Expr::depends_on(Symbol s) const {
  for (const Poly* p : {&rep().num, &rep().den}) {
    for (const auto& t : p->terms()) {
      if (t.mono.degree(s) != 0) return true;
      if (t.mono.has_exp() && t.mono.exp_arg.depends_on(s)) return true;
    }
  }
  return false;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.rep_ == b.rep_) return true;
  return a.rep().num == b.rep().num && a.rep().den == b.rep().den;
}

int compare(const Expr& a, const Expr& b) {
  if (&a.rep() == &b.rep()) return 0;
  int c = compare(a.rep().num, b.rep().num);
  if (c != 0) return c;
  return compare(a.rep().den, b.rep().den);
}

Expr Expr::operator-() const {
  if (is_zero()) return *this;
  return Expr(std::make_shared<const RatFunc>(RatFunc{-rep_->num, rep_->den}));
}

Expr operator+(const Expr& a, const Expr& b) {
  const RatFunc& x = a.rep();
  const RatFunc& y = b.rep();
  if (x.num.is_zero()) return b;
  if (y.num.is_zero()) return a;
  bool x_poly = x.den.is_one();
  bool y_poly = y.den.is_one();
  if (x_poly && y_poly) return detail::from_poly(x.num + y.num);
  if (x.den == y.den) return make_expr(x.num + y.num, x.den);
  // A polynomial plus a reduced fraction is still reduced.
  if (x_poly) return make_reduced(x.num * y.den + y.num, y.den);
  if (y_poly) return make_reduced(y.num * x.den + x.num, x.den);

  Poly g = gcd(x.den, y.den);
  if (g.is_constant()) return make_reduced(x.num * y.den + y.num * x.den, x.den * y.den);
  Poly dx = *exact_divide(x.den, g);
  Poly dy = *exact_divide(y.den, g);
  Poly num = x.num * dy + y.num * dx;
  Poly den = x.den * dy;
  // Only factors of g can be shared with the new numerator.
  Poly h = gcd(num, g);
  if (!h.is_constant()) {
    num = *exact_divide(num, h);
    den = *exact_divide(den, h);
  }
  return make_reduced(std::move(num), std::move(den));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  const RatFunc& x = a.rep();
  const RatFunc& y = b.rep();
  if (x.num.is_zero() || y.num.is_zero()) return Expr();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (x.den.is_one() && y.den.is_one()) return detail::from_poly(x.num * y.num);
  Poly xn = x.num, xd = x.den, yn = y.num, yd = y.den;
  if (!yd.is_one()) {
    Poly g = gcd(xn, yd);
    if (!g.is_constant()) {
      xn = *exact_divide(xn, g);
      yd = *exact_divide(yd, g);
    }
  }
  if (!xd.is_one()) {
    Poly g = gcd(yn, xd);
    if (!g.is_constant()) {
      yn = *exact_divide(yn, g);
      xd = *exact_divide(xd, g);
    }
  }
  return make_reduced(xn * yn, xd * yd);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DivisionByZero("division by zero");
  if (b.is_one()) return a;
  const RatFunc& y = b.rep();
  return a * make_reduced(y.den, y.num);
}

Expr& Expr::operator+=(const Expr& o) { return *this = *this + o; }
Expr& Expr::operator-=(const Expr& o) { return *this = *this - o; }
Expr& Expr::operator*=(const Expr& o) { return *this = *this * o; }
Expr& Expr::operator/=(const Expr& o) { return *this = *this / o; }

Expr pow(const Expr& base, long exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent == 1) return base;
  const RatFunc& r = base.rep();
  if (exponent < 0) {
    if (base.is_zero()) throw DivisionByZero("zero raised to a negative power");
    auto k = static_cast<unsigned>(-exponent);
    return make_reduced(detail::pow(r.den, k), detail::pow(r.num, k));
  }
  auto k = static_cast<unsigned>(exponent);
  return make_reduced(detail::pow(r.num, k), detail::pow(r.den, k));
}

Expr exp(const Expr& argument) {
  if (argument.is_zero()) return Expr(1);
  return detail::from_poly(Poly::monomial(Monomial{{}, argument}, 1));
}

namespace {

Expr derive_poly(const Poly& p, Symbol v) {
  if (!p.has_exp()) return detail::from_poly(detail::derive_powers(p, v));
  Expr out;
  for (const auto& [arg, part] : detail::split_by_exp(p)) {
    Expr e = exp(arg);
    Expr d = detail::from_poly(detail::derive_powers(part, v));
    if (!arg.is_zero()) {
      Expr da = derive(arg, v);
      if (!da.is_zero()) d += detail::from_poly(part) * da;
    }
    out += e * d;
  }
  return out;
}

}  // namespace

Expr derive(const Expr& e, Symbol v) {
  if (!e.depends_on(v)) return Expr();
  const RatFunc& r = e.rep();
  Expr dn = derive_poly(r.num, v);
  if (r.den.is_one()) return dn;
  if (!r.num.has_exp() && !r.den.has_exp()) {
    // (n' d - n d') / d^2, with gcd(d, d') cancelled up front.
    Poly np = detail::derive_powers(r.num, v);
    Poly dp = detail::derive_powers(r.den, v);
    Poly g = gcd(r.den, dp);
    Poly d_red = g.is_constant() ? r.den : *exact_divide(r.den, g);
    Poly dp_red = g.is_constant() ? dp : *exact_divide(dp, g);
    return make_expr(np * d_red - r.num * dp_red, r.den * d_red);
  }
  Expr n = detail::from_poly(r.num);
  Expr d = detail::from_poly(r.den);
  Expr dd = derive_poly(r.den, v);
  return (dn * d - n * dd) / (d * d);
}

namespace {

struct Substituter {
  const std::map<Symbol, Expr>& bindings;
  std::map<std::pair<Symbol, int>, Expr> power_cache;

  Expr power_of(Symbol s, int k) {
    auto key = std::make_pair(s, k);
    auto it = power_cache.find(key);
    if (it != power_cache.end()) return it->second;
    auto b = bindings.find(s);
    Expr base = b == bindings.end() ? Expr(s) : b->second;
    Expr value = pow(base, k);
    power_cache.emplace(key, value);
    return value;
  }

  Expr apply(const Poly& p) {
    Expr out;
    for (const auto& t : p.terms()) {
      Expr term(t.coef);
      for (const auto& [v, k] : t.mono.powers) term *= power_of(v, k);
      if (t.mono.has_exp()) term *= exp(substitute(t.mono.exp_arg, bindings));
      out += term;
    }
    return out;
  }
};

}  // namespace

Expr substitute(const Expr& e, const std::map<Symbol, Expr>& bindings) {
  bool touched = false;
  for (const auto& s : e.free_symbols()) {
    if (bindings.count(s)) {
      touched = true;
      break;
    }
  }
  if (!touched) return e;
  Substituter sub{bindings, {}};
  Expr num = sub.apply(e.rep().num);
  if (e.rep().den.is_one()) return num;
  return num / sub.apply(e.rep().den);
}

namespace {

Rational rational_pow(const Rational& q, int k) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

const Rational& lookup(const std::map<Symbol, Rational>& point, Symbol s) {
  auto it = point.find(s);
  if (it == point.end()) throw UnboundSymbol("no value for symbol '" + s.name() + "'");
  return it->second;
}

Rational eval_exact(const Poly& p, const std::map<Symbol, Rational>& point) {
  Rational sum = 0;
  for (const auto& t : p.terms()) {
    Rational term = t.coef;
    for (const auto& [v, k] : t.mono.powers) term *= rational_pow(lookup(point, v), k);
    sum += term;
  }
  return sum;
}

template <typename Lookup>
double eval_poly_double(const Poly& p, Lookup&& value_of);

template <typename Lookup>
double eval_expr_double(const Expr& e, Lookup&& value_of) {
  double n = eval_poly_double(e.rep().num, value_of);
  if (e.rep().den.is_one()) return n;
  double d = eval_poly_double(e.rep().den, value_of);
  if (d == 0.0) throw DivisionByZero("denominator vanishes at evaluation point");
  return n / d;
}

template <typename Lookup>
double eval_poly_double(const Poly& p, Lookup&& value_of) {
  double sum = 0.0;
  for (const auto& t : p.terms()) {
    double term = t.coef.get_d();
    for (const auto& [v, k] : t.mono.powers) term *= std::pow(value_of(v), k);
    if (t.mono.has_exp()) term *= std::exp(eval_expr_double(t.mono.exp_arg, value_of));
    sum += term;
  }
  return sum;
}

}  // namespace

Value eval_at(const Expr& e, const std::map<Symbol, Rational>& point) {
  if (!e.has_exp()) {
    Rational n = eval_exact(e.rep().num, point);
    Rational d = eval_exact(e.rep().den, point);
    if (d == 0) throw DivisionByZero("denominator vanishes at evaluation point");
    Rational q = n / d;
    return Value{q, q.get_d()};
  }
  auto value_of = [&](Symbol s) { return lookup(point, s).get_d(); };
  return Value{std::nullopt, eval_expr_double(e, value_of)};
}

double eval_double(const Expr& e, const std::map<Symbol, double>& point) {
  auto value_of = [&](Symbol s) {
    auto it = point.find(s);
    if (it == point.end()) throw UnboundSymbol("no value for symbol '" + s.name() + "'");
    return it->second;
  };
  return eval_expr_double(e, value_of);
}

}  // namespace riemext
