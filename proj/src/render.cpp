#include "riemext/render.hpp"

#include <vector>

namespace riemext {

Format parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "latex") return Format::Latex;
  if (name == "json") return Format::Json;
  throw Error("unknown format '" + std::string(name) + "' (expected text, latex or json)");
}

namespace {

std::string rational_text(const Rational& q) { return q.get_str(); }

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Splits a term into sign and magnitude for sum rendering.
struct Signed {
  bool negative = false;
  Node magnitude;
};

Signed split_sign(const Node& n) {
  if (n.kind == Node::Kind::Constant && n.value < 0) return {true, Node::constant(-n.value)};
  if (n.kind == Node::Kind::Product && !n.operands.empty() &&
      n.operands[0].kind == Node::Kind::Constant && n.operands[0].value < 0) {
    Node m = n;
    m.operands[0].value = -m.operands[0].value;
    if (m.operands[0].value == 1) m.operands.erase(m.operands.begin());
    if (m.operands.size() == 1) return {true, m.operands[0]};
    return {true, m};
  }
  return {false, n};
}

// ---------------------------------------------------------------- text

std::string text(const Node& n);

std::string text_factor(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Variable:
      return n.symbol.name();
    case Node::Kind::Constant:
      if (n.value >= 0 && n.value.get_den() == 1) return rational_text(n.value);
      return "(" + rational_text(n.value) + ")";
    case Node::Kind::Exp:
      return "exp(" + text(n.operands[0]) + ")";
    case Node::Kind::Power: {
      const Node& b = n.operands[0];
      std::string base = b.kind == Node::Kind::Variable || b.kind == Node::Kind::Exp
                             ? text_factor(b)
                             : "(" + text(b) + ")";
      if (n.exponent < 0) return base + "^(" + std::to_string(n.exponent) + ")";
      return base + "^" + std::to_string(n.exponent);
    }
    default:
      return "(" + text(n) + ")";
  }
}

std::string text_product(const std::vector<Node>& factors) {
  Rational coef = 1;
  std::vector<std::string> num;
  std::vector<std::string> den;
  bool den_compound = false;
  for (const auto& f : factors) {
    if (f.kind == Node::Kind::Constant) {
      coef *= f.value;
    } else if (f.kind == Node::Kind::Power && f.exponent < 0) {
      Node inv = f.exponent == -1 ? f.operands[0] : Node::power(f.operands[0], -f.exponent);
      den.push_back(text_factor(inv));
    } else {
      num.push_back(text_factor(f));
    }
  }
  bool negative = coef < 0;
  if (negative) coef = -coef;
  if (coef.get_num() != 1 || num.empty()) num.insert(num.begin(), coef.get_num().get_str());
  if (coef.get_den() != 1) den.insert(den.begin(), coef.get_den().get_str());
  if (den.size() > 1) den_compound = true;
  std::string out = (negative ? "-" : "") + join(num, "*");
  if (den.empty()) return out;
  if (den_compound) return out + "/(" + join(den, "*") + ")";
  return out + "/" + den[0];
}

std::string text(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Constant:
      return rational_text(n.value);
    case Node::Kind::Variable:
      return n.symbol.name();
    case Node::Kind::Exp:
      return text_factor(n);
    case Node::Kind::Power:
      return text_product({n});
    case Node::Kind::Product:
      return text_product(n.operands);
    case Node::Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < n.operands.size(); ++i) {
        Signed s = split_sign(n.operands[i]);
        std::string body = text(s.magnitude);
        if (i == 0) {
          out += (s.negative ? "-" : "") + body;
        } else {
          out += (s.negative ? " - " : " + ") + body;
        }
      }
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------- latex

std::string latex(const Node& n);

std::string latex_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  std::string sign = q < 0 ? "-" : "";
  mpz_class num = abs(q.get_num());
  return sign + "\\frac{" + num.get_str() + "}{" + q.get_den().get_str() + "}";
}

std::string latex_factor(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Variable:
      return n.symbol.name();
    case Node::Kind::Constant:
      return latex_rational(n.value);
    case Node::Kind::Exp:
      return "e^{" + latex(n.operands[0]) + "}";
    case Node::Kind::Power: {
      const Node& b = n.operands[0];
      std::string base = b.kind == Node::Kind::Variable ? latex_factor(b)
                                                         : "\\left(" + latex(b) + "\\right)";
      return base + "^{" + std::to_string(n.exponent) + "}";
    }
    default:
      return "\\left(" + latex(n) + "\\right)";
  }
}

std::string latex_product(const std::vector<Node>& factors) {
  Rational coef = 1;
  std::vector<std::string> num;
  std::vector<std::string> den;
  for (const auto& f : factors) {
    if (f.kind == Node::Kind::Constant) {
      coef *= f.value;
    } else if (f.kind == Node::Kind::Power && f.exponent < 0) {
      Node inv = f.exponent == -1 ? f.operands[0] : Node::power(f.operands[0], -f.exponent);
      den.push_back(inv.kind == Node::Kind::Sum ? latex(inv) : latex_factor(inv));
    } else {
      num.push_back(latex_factor(f));
    }
  }
  bool negative = coef < 0;
  if (negative) coef = -coef;
  if (coef.get_num() != 1 || num.empty()) num.insert(num.begin(), coef.get_num().get_str());
  if (coef.get_den() != 1) den.insert(den.begin(), coef.get_den().get_str());
  std::string sign = negative ? "-" : "";
  if (den.empty()) return sign + join(num, " ");
  return sign + "\\frac{" + join(num, " ") + "}{" + join(den, " ") + "}";
}

std::string latex(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Constant:
      return latex_rational(n.value);
    case Node::Kind::Variable:
      return n.symbol.name();
    case Node::Kind::Exp:
      return latex_factor(n);
    case Node::Kind::Power:
      return latex_product({n});
    case Node::Kind::Product:
      return latex_product(n.operands);
    case Node::Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < n.operands.size(); ++i) {
        Signed s = split_sign(n.operands[i]);
        std::string body = latex(s.magnitude);
        if (i == 0) {
          out += (s.negative ? "-" : "") + body;
        } else {
          out += (s.negative ? " - " : " + ") + body;
        }
      }
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------- json

nlohmann::ordered_json node_json(const Node& n) {
  using json = nlohmann::ordered_json;
  switch (n.kind) {
    case Node::Kind::Constant:
      if (n.value.get_den() == 1 && n.value.get_num().fits_slong_p())
        return json(n.value.get_num().get_si());
      return json(rational_text(n.value));
    case Node::Kind::Variable:
      return json{{"var", n.symbol.name()}};
    case Node::Kind::Sum:
    case Node::Kind::Product: {
      json arr = json::array();
      for (const auto& o : n.operands) arr.push_back(node_json(o));
      return json{{n.kind == Node::Kind::Sum ? "sum" : "product", arr}};
    }
    case Node::Kind::Power:
      return json{{"pow", json{{"base", node_json(n.operands[0])}, {"exp", n.exponent}}}};
    case Node::Kind::Exp:
      return json{{"exp", node_json(n.operands[0])}};
  }
  return {};
}

Node json_node(const nlohmann::ordered_json& j) {
  if (j.is_number_integer()) return Node::constant(Rational(j.get<long>()));
  if (j.is_string()) {
    Rational q(j.get<std::string>());
    q.canonicalize();
    return Node::constant(q);
  }
  if (!j.is_object() || j.size() != 1) throw Error("malformed expression JSON");
  const auto& [key, val] = *j.items().begin();
  if (key == "var") return Node::variable(Symbol(val.get<std::string>()));
  if (key == "sum" || key == "product") {
    std::vector<Node> ops;
    for (const auto& o : val) ops.push_back(json_node(o));
    return key == "sum" ? Node::sum(std::move(ops)) : Node::product(std::move(ops));
  }
  if (key == "pow") return Node::power(json_node(val.at("base")), val.at("exp").get<long>());
  if (key == "exp") return Node::exp(json_node(val));
  throw Error("unknown expression node '" + key + "'");
}

}  // namespace

std::string render_text(const Node& n) { return text(n); }
std::string render_latex(const Node& n) { return latex(n); }

nlohmann::ordered_json to_json(const Expr& e) { return node_json(to_node(e)); }

Expr from_json(const nlohmann::ordered_json& j) { return normalize(json_node(j)); }

std::string render(const Expr& e, Format format) {
  switch (format) {
    case Format::Text:
      return text(to_node(e));
    case Format::Latex:
      return latex(to_node(e));
    case Format::Json:
      return to_json(e).dump();
  }
  return {};
}

}  // namespace riemext
