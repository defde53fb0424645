#include "riemext/detail/poly.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <set>

namespace riemext::detail {

// --------------------------------------------------------------- monomials

int Monomial::degree(Symbol s) const {
  for (const auto& [v, k] : powers)
    if (v == s) return k;
  return 0;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [v, k] : powers) d += k;
  return d;
}

std::strong_ordering compare(const Monomial& a, const Monomial& b) {
  auto ia = a.powers.begin();
  auto ib = b.powers.begin();
  while (ia != a.powers.end() && ib != b.powers.end()) {
    if (ia->first == ib->first) {
      if (ia->second != ib->second) return ia->second <=> ib->second;
      ++ia;
      ++ib;
      continue;
    }
    // The alphabetically earlier variable dominates; only one side has it.
    return ia->first < ib->first ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (ia != a.powers.end()) return std::strong_ordering::greater;
  if (ib != b.powers.end()) return std::strong_ordering::less;
  if (a.exp_arg.is_zero() && b.exp_arg.is_zero()) return std::strong_ordering::equal;
  return riemext::compare(a.exp_arg, b.exp_arg) <=> 0;
}

bool operator==(const Monomial& a, const Monomial& b) {
  return a.powers == b.powers && a.exp_arg == b.exp_arg;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.powers.reserve(a.powers.size() + b.powers.size());
  auto ia = a.powers.begin();
  auto ib = b.powers.begin();
  while (ia != a.powers.end() || ib != b.powers.end()) {
    if (ib == b.powers.end() || (ia != a.powers.end() && ia->first < ib->first)) {
      r.powers.push_back(*ia++);
    } else if (ia == a.powers.end() || ib->first < ia->first) {
      r.powers.push_back(*ib++);
    } else {
      r.powers.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  if (b.exp_arg.is_zero()) {
    r.exp_arg = a.exp_arg;
  } else if (a.exp_arg.is_zero()) {
    r.exp_arg = b.exp_arg;
  } else {
    r.exp_arg = a.exp_arg + b.exp_arg;
  }
  return r;
}

std::optional<Monomial> divide(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto ia = a.powers.begin();
  auto ib = b.powers.begin();
  while (ib != b.powers.end()) {
    if (ia == a.powers.end() || b.powers.empty()) return std::nullopt;
    if (ia->first == ib->first) {
      int k = ia->second - ib->second;
      if (k < 0) return std::nullopt;
      if (k > 0) r.powers.emplace_back(ia->first, k);
      ++ia;
      ++ib;
    } else if (ia->first < ib->first) {
      r.powers.push_back(*ia++);
    } else {
      return std::nullopt;
    }
  }
  r.powers.insert(r.powers.end(), ia, a.powers.end());
  r.exp_arg = b.exp_arg.is_zero() ? a.exp_arg : a.exp_arg - b.exp_arg;
  return r;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto ia = a.powers.begin();
  auto ib = b.powers.begin();
  while (ia != a.powers.end() && ib != b.powers.end()) {
    if (ia->first == ib->first) {
      r.powers.emplace_back(ia->first, std::min(ia->second, ib->second));
      ++ia;
      ++ib;
    } else if (ia->first < ib->first) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return r;
}

Monomial without(const Monomial& m, Symbol s) {
  Monomial r;
  r.exp_arg = m.exp_arg;
  r.powers.reserve(m.powers.size());
  for (const auto& p : m.powers)
    if (p.first != s) r.powers.push_back(p);
  return r;
}

// ---------------------------------------------------------------- polynomials

Poly Poly::constant(const Rational& c) {
  Poly p;
  if (c != 0) p.terms_.push_back(Term{Monomial{}, c});
  return p;
}

Poly Poly::monomial(Monomial m, const Rational& c) {
  Poly p;
  if (c != 0) p.terms_.push_back(Term{std::move(m), c});
  return p;
}

Poly Poly::variable(Symbol s, int power) {
  Monomial m;
  m.powers.emplace_back(s, power);
  return monomial(std::move(m));
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef == 1;
}

bool Poly::has_exp() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.mono.has_exp(); });
}

std::optional<Rational> Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (is_constant()) return terms_[0].coef;
  return std::nullopt;
}

int Poly::degree(Symbol s) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree(s));
  return d;
}

std::vector<Symbol> Poly::variables() const {
  std::set<Symbol> vars;
  for (const auto& t : terms_)
    for (const auto& [v, k] : t.mono.powers) vars.insert(v);
  return {vars.begin(), vars.end()};
}

std::map<int, Poly> Poly::coefficients(Symbol s) const {
  std::map<int, std::vector<Term>> groups;
  for (const auto& t : terms_)
    groups[t.mono.degree(s)].push_back(Term{without(t.mono, s), t.coef});
  std::map<int, Poly> out;
  // Removing one variable preserves the relative order of terms that share
  // its exponent, so each group is still sorted.
  for (auto& [k, ts] : groups) out.emplace(k, from_sorted(std::move(ts)));
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coef != b.terms_[i].coef) return false;
    if (!(a.terms_[i].mono == b.terms_[i].mono)) return false;
  }
  return true;
}

Poly Poly::from_sorted(std::vector<Term> terms) {
  Poly p;
  p.terms_ = std::move(terms);
  return p;
}

Poly Poly::from_unsorted(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    return compare(x.mono, y.mono) == std::strong_ordering::greater;
  });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && compare(out.back().mono, t.mono) == std::strong_ordering::equal) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && out.back().coef == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coef == 0) out.pop_back();
  return from_sorted(std::move(out));
}

int compare(const Poly& a, const Poly& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = compare(ta[i].mono, tb[i].mono);
    if (c != 0) return c < 0 ? -1 : 1;
    int cc = cmp(ta[i].coef, tb[i].coef);
    if (cc != 0) return cc < 0 ? -1 : 1;
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  return 0;
}

namespace {

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    auto c = compare(ia->mono, ib->mono);
    if (c == std::strong_ordering::greater) {
      out.push_back(*ia++);
    } else if (c == std::strong_ordering::less) {
      out.push_back(Term{ib->mono, subtract ? Rational(-ib->coef) : ib->coef});
      ++ib;
    } else {
      Rational s = subtract ? Rational(ia->coef - ib->coef) : Rational(ia->coef + ib->coef);
      if (s != 0) out.push_back(Term{ia->mono, s});
      ++ia;
      ++ib;
    }
  }
  for (; ia != a.end(); ++ia) out.push_back(*ia);
  for (; ib != b.end(); ++ib) out.push_back(Term{ib->mono, subtract ? Rational(-ib->coef) : ib->coef});
  return out;
}

}  // namespace

Poly operator+(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Poly::from_sorted(merge(a.terms(), b.terms(), false));
}

Poly operator-(const Poly& a, const Poly& b) {
  if (b.is_zero()) return a;
  return Poly::from_sorted(merge(a.terms(), b.terms(), true));
}

Poly operator-(const Poly& a) {
  std::vector<Term> out = a.terms();
  for (auto& t : out) t.coef = -t.coef;
  return Poly::from_sorted(std::move(out));
}

Poly operator*(const Poly& a, const Rational& c) {
  if (c == 0) return Poly{};
  if (c == 1) return a;
  std::vector<Term> out = a.terms();
  for (auto& t : out) t.coef *= c;
  return Poly::from_sorted(std::move(out));
}

Poly operator*(const Poly& a, const Term& t) {
  if (t.coef == 0) return Poly{};
  std::vector<Term> out;
  out.reserve(a.size());
  // Multiplying by an exponential-free monomial preserves the order; an
  // exponential factor can reorder ties, so re-sort in that case.
  for (const auto& s : a.terms()) out.push_back(Term{s.mono * t.mono, s.coef * t.coef});
  if (t.mono.has_exp()) return Poly::from_unsorted(std::move(out));
  return Poly::from_sorted(std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly{};
  if (a.is_constant()) return b * a.lead().coef;
  if (b.is_constant()) return a * b.lead().coef;
  if (a.size() == 1) return b * a.lead();
  if (b.size() == 1) return a * b.lead();
  std::vector<Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) out.push_back(Term{s.mono * t.mono, s.coef * t.coef});
  return Poly::from_unsorted(std::move(out));
}

Poly pow(const Poly& a, unsigned k) {
  Poly result = Poly::constant(1);
  Poly base = a;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
  assert(!b.is_zero());
  if (a.is_zero()) return Poly{};
  if (b.is_constant()) return a * Rational(1 / b.lead().coef);
  if (b.is_monomial()) {
    std::vector<Term> out;
    out.reserve(a.size());
    Rational inv = 1 / b.lead().coef;
    for (const auto& t : a.terms()) {
      auto m = divide(t.mono, b.lead().mono);
      if (!m) return std::nullopt;
      out.push_back(Term{std::move(*m), t.coef * inv});
    }
    return Poly::from_sorted(std::move(out));
  }
  std::vector<Term> quotient;
  Poly r = a;
  const Term& lb = b.lead();
  while (!r.is_zero()) {
    auto m = divide(r.lead().mono, lb.mono);
    if (!m) return std::nullopt;
    Term t{std::move(*m), r.lead().coef / lb.coef};
    r = r - b * t;
    quotient.push_back(std::move(t));
  }
  return Poly::from_unsorted(std::move(quotient));
}

Poly monic(const Poly& a) {
  if (a.is_zero() || a.lead().coef == 1) return a;
  return a * Rational(1 / a.lead().coef);
}

Monomial monomial_content(const Poly& a) {
  if (a.is_zero()) return {};
  Monomial m = a.lead().mono;
  m.exp_arg = Expr();
  for (const auto& t : a.terms()) {
    if (m.powers.empty()) break;
    m = gcd(m, t.mono);
  }
  return m;
}

namespace {

Poly divide_monomial(const Poly& a, const Monomial& m) {
  if (m.powers.empty()) return a;
  std::vector<Term> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) out.push_back(Term{*divide(t.mono, m), t.coef});
  return Poly::from_sorted(std::move(out));
}

Poly gcd_plain(const Poly& a, const Poly& b);

Poly content_in(const Poly& p, Symbol x) {
  auto coeffs = p.coefficients(x);
  Poly g;
  for (auto& [k, c] : coeffs) {
    g = g.is_zero() ? monic(c) : gcd_plain(g, c);
    if (g.is_constant()) return Poly::constant(1);
  }
  return g;
}

Poly primitive_part(const Poly& p, Symbol x) {
  Poly c = content_in(p, x);
  if (c.is_constant()) return monic(p);
  return monic(*exact_divide(p, c));
}

Poly leading_coefficient(const Poly& p, Symbol x, int deg) {
  std::vector<Term> out;
  for (const auto& t : p.terms())
    if (t.mono.degree(x) == deg) out.push_back(Term{without(t.mono, x), t.coef});
  return Poly::from_sorted(std::move(out));
}

// Sparse pseudo-remainder; scalar factors are irrelevant because the caller
// takes primitive parts.
Poly pseudo_remainder(Poly a, const Poly& b, Symbol x) {
  int db = b.degree(x);
  Poly lb = leading_coefficient(b, x, db);
  while (!a.is_zero()) {
    int da = a.degree(x);
    if (da < db) break;
    Poly la = leading_coefficient(a, x, da);
    Poly shifted = da > db ? la * Poly::variable(x, da - db) : la;
    a = lb * a - shifted * b;
  }
  return a;
}

Poly prs_gcd(Poly a, Poly b, Symbol x) {
  if (a.degree(x) < b.degree(x)) std::swap(a, b);
  while (true) {
    Poly r = pseudo_remainder(a, b, x);
    if (r.is_zero()) return monic(b);
    if (r.degree(x) == 0) return Poly::constant(1);
    a = std::move(b);
    b = primitive_part(r, x);
  }
}

// Both arguments exponential-free, nonzero, without monomial content.
Poly gcd_rec(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant()) return Poly::constant(1);
  if (monic(a) == monic(b)) return monic(a);
  if (a.size() <= b.size()) {
    if (exact_divide(b, a)) return monic(a);
  } else {
    if (exact_divide(a, b)) return monic(b);
  }

  auto va = a.variables();
  auto vb = b.variables();
  for (Symbol v : va)
    if (!std::binary_search(vb.begin(), vb.end(), v)) return gcd_plain(content_in(a, v), b);
  for (Symbol v : vb)
    if (!std::binary_search(va.begin(), va.end(), v)) return gcd_plain(a, content_in(b, v));

  Symbol x;
  int best = std::numeric_limits<int>::max();
  for (Symbol v : va) {
    int d = std::max(a.degree(v), b.degree(v));
    if (d < best) {
      best = d;
      x = v;
    }
  }

  Poly ca = content_in(a, x);
  Poly cb = content_in(b, x);
  Poly c = gcd_plain(ca, cb);
  Poly pa = ca.is_constant() ? a : *exact_divide(a, ca);
  Poly pb = cb.is_constant() ? b : *exact_divide(b, cb);
  return monic(c * prs_gcd(pa, pb, x));
}

Poly gcd_plain(const Poly& a, const Poly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return Poly::constant(1);
  Monomial ma = monomial_content(a);
  Monomial mb = monomial_content(b);
  Monomial mg = gcd(ma, mb);
  Poly a1 = divide_monomial(a, ma);
  Poly b1 = divide_monomial(b, mb);
  Poly g = gcd_rec(a1, b1);
  if (mg.powers.empty()) return g;
  return monic(g * Term{mg, 1});
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  bool ea = a.has_exp();
  bool eb = b.has_exp();
  if (!ea && !eb) return gcd_plain(a, b);
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  // Exponential factors are units; look for an exponential-free common
  // divisor of every exponential group on both sides.
  Poly g;
  for (const Poly* p : {&a, &b}) {
    for (auto& [arg, part] : split_by_exp(*p)) {
      g = g.is_zero() ? monic(part) : gcd_plain(g, part);
      if (g.is_constant()) return Poly::constant(1);
    }
  }
  return g;
}

Poly derive_powers(const Poly& a, Symbol v) {
  std::vector<Term> out;
  for (const auto& t : a.terms()) {
    int k = t.mono.degree(v);
    if (k == 0) continue;
    Monomial m = t.mono;
    for (auto it = m.powers.begin(); it != m.powers.end(); ++it) {
      if (it->first == v) {
        if (--it->second == 0) m.powers.erase(it);
        break;
      }
    }
    out.push_back(Term{std::move(m), t.coef * k});
  }
  return Poly::from_unsorted(std::move(out));
}

std::vector<std::pair<Expr, Poly>> split_by_exp(const Poly& a) {
  std::map<Expr, std::vector<Term>, ExprLess> groups;
  for (const auto& t : a.terms()) {
    Monomial m = t.mono;
    Expr arg = m.exp_arg;
    m.exp_arg = Expr();
    groups[arg].push_back(Term{std::move(m), t.coef});
  }
  std::vector<std::pair<Expr, Poly>> out;
  for (auto& [arg, ts] : groups) out.emplace_back(arg, Poly::from_sorted(std::move(ts)));
  return out;
}

}  // namespace riemext::detail
