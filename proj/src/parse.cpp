#include "riemext/parse.hpp"

#include <cctype>
#include <string>

namespace riemext {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int line, int column) : text_(text), line_(line), col_(column) {}

  Node parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    Node n = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return n;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int col_;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  Node expr() {
    std::vector<Node> terms;
    terms.push_back(term());
    while (true) {
      skip_space();
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(negate(term()));
      } else {
        break;
      }
    }
    if (terms.size() == 1) return std::move(terms.front());
    return Node::sum(std::move(terms));
  }

  static Node negate(Node n) { return Node::product({Node::constant(-1), std::move(n)}); }

  Node term() {
    std::vector<Node> factors;
    factors.push_back(unary());
    while (true) {
      skip_space();
      if (accept('*')) {
        factors.push_back(unary());
      } else if (accept('/')) {
        factors.push_back(Node::power(unary(), -1));
      } else {
        break;
      }
    }
    if (factors.size() == 1) return std::move(factors.front());
    return Node::product(std::move(factors));
  }

  Node unary() {
    skip_space();
    if (accept('-')) return negate(unary());
    if (accept('+')) return unary();
    return power();
  }

  Node power() {
    Node base = primary();
    skip_space();
    if (peek() != '^') return base;
    advance();
    skip_space();
    int line = line_, col = col_;
    Node e = unary_exponent();
    Expr value = normalize(e);
    auto q = value.constant_value();
    if (!q || q->get_den() != 1) throw ParseError("non-integer exponent", line, col);
    if (!q->get_num().fits_slong_p()) throw ParseError("exponent out of range", line, col);
    return Node::power(std::move(base), q->get_num().get_si());
  }

  // An exponent is a signed power: y^-2, y^(n), 2^3^2 = 2^9, but not y^2*x
  // as a whole.
  Node unary_exponent() {
    skip_space();
    if (accept('-')) return negate(unary_exponent());
    if (accept('+')) return unary_exponent();
    return power();
  }

  Node primary() {
    skip_space();
    if (at_end()) fail("unexpected end of expression");
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      int line = line_, col = col_;
      std::string name = identifier();
      skip_space();
      if (peek() == '(') {
        if (name != "exp") throw ParseError("unknown function '" + name + "'", line, col);
        advance();
        Node arg = expr();
        if (!accept(')')) fail("expected ')'");
        return Node::exp(std::move(arg));
      }
      return Node::variable(Symbol(name));
    }
    if (c == '(') {
      int line = line_, col = col_;
      advance();
      Node inner = expr();
      if (!accept(')')) throw ParseError("unclosed parenthesis", line, col);
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string identifier() {
    std::string out;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      out.push_back(peek());
      advance();
    }
    return out;
  }

  Node number() {
    std::string digits;
    std::string frac;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      digits.push_back(peek());
      advance();
    }
    if (peek() == '.') {
      advance();
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        frac.push_back(peek());
        advance();
      }
    }
    if (digits.empty() && frac.empty()) fail("malformed number");
    mpz_class num(digits.empty() ? "0" : digits);
    mpz_class den = 1;
    for (char f : frac) {
      num = num * 10 + (f - '0');
      den *= 10;
    }
    Rational q(num, den);
    q.canonicalize();
    return Node::constant(q);
  }
};

}  // namespace

Node parse_tree(std::string_view text, int line, int column) {
  return Parser(text, line, column).parse();
}

Expr parse_expression(std::string_view text, int line, int column) {
  return normalize(parse_tree(text, line, column));
}

}  // namespace riemext
