#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "riemext/expr.hpp"
#include "riemext/parse.hpp"
#include "riemext/render.hpp"
#include "riemext/zero_test.hpp"

using namespace riemext;

namespace {

Expr P(const char* s) { return parse_expression(s); }
Symbol S(const char* s) { return Symbol(s); }

}  // namespace

// ------------------------------------------------------------------ parsing

TEST(Parse, ReciprocalPowerBecomesNegativePower) {
  Node n = to_node(P("1/y^2"));
  ASSERT_EQ(n.kind, Node::Kind::Power);
  EXPECT_EQ(n.exponent, -2);
  EXPECT_EQ(n.operands[0], Node::variable(S("y")));
}

TEST(Parse, ExponentialTimesSymbol) {
  Node n = to_node(P("exp(-2*t)*g0"));
  ASSERT_EQ(n.kind, Node::Kind::Product);
  ASSERT_EQ(n.operands.size(), 2u);
  EXPECT_EQ(n.operands[0], Node::variable(S("g0")));
  ASSERT_EQ(n.operands[1].kind, Node::Kind::Exp);
  EXPECT_EQ(normalize(n.operands[1].operands[0]), P("-2*t"));
}

TEST(Parse, UnclosedParenthesisReportsItsPosition) {
  try {
    P("x + (y");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 5);
  }
}

TEST(Parse, Errors) {
  EXPECT_THROW(P("x^(1/2)"), ParseError);
  EXPECT_THROW(P("x^y"), ParseError);
  EXPECT_THROW(P("sin(x)"), ParseError);
  EXPECT_THROW(P(""), ParseError);
  EXPECT_THROW(P("x +"), ParseError);
  EXPECT_THROW(P("x y"), ParseError);
  EXPECT_THROW(P("1/0"), DivisionByZero);
}

TEST(Parse, Precedence) {
  EXPECT_EQ(P("-x^2"), -(P("x") * P("x")));
  EXPECT_EQ(P("2^3^1") == P("8"), true);
  EXPECT_EQ(P("1 - 2 - 3"), Expr(-4));
  EXPECT_EQ(P("12/4/3"), Expr(1));
  EXPECT_EQ(P("y^-2"), P("1/y^2"));
  EXPECT_EQ(P("0.25"), Expr::rational(1, 4));
}

TEST(Parse, MultilinePositions) {
  try {
    parse_expression("x +\n  * y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
}

// --------------------------------------------------------------- derivative

TEST(Derive, PowerRule) { EXPECT_EQ(derive(P("1/y^2"), S("y")), P("-2/y^3")); }

TEST(Derive, ChainRuleForExp) {
  EXPECT_EQ(derive(P("exp(-2*t)*a"), S("t")), P("-2*exp(-2*t)*a"));
}

TEST(Derive, Linearity) { EXPECT_EQ(derive(P("x*y + y^2"), S("x")), P("y")); }

TEST(Derive, QuotientRule) {
  Expr f = P("x/(1 + x^2)");
  EXPECT_EQ(derive(f, S("x")), P("(1 - x^2)/(1 + x^2)^2"));
}

TEST(Derive, ConstantAndAbsentSymbol) {
  EXPECT_TRUE(derive(Expr(7), S("x")).is_zero());
  EXPECT_TRUE(derive(P("exp(y)/(1+y^2)"), S("x")).is_zero());
}

// ------------------------------------------------------------ normalization

TEST(Normalize, BinomialIdentity) { EXPECT_TRUE(P("(x+y)^2 - x^2 - 2*x*y - y^2").is_zero()); }

TEST(Normalize, KernelMerging) { EXPECT_EQ(P("exp(t)*exp(-t)"), Expr(1)); }

TEST(Normalize, PowerCancellation) { EXPECT_EQ(P("y^2*(1/y^2)"), Expr(1)); }

TEST(Normalize, RationalFunctionsCancelCommonFactors) {
  EXPECT_EQ(P("(x^2 - y^2)/(x + y)"), P("x - y"));
  EXPECT_EQ(P("1/(x-1) - 1/(x+1)"), P("2/(x^2 - 1)"));
  EXPECT_EQ(P("(x*y + x)/(x*z + x*y*z)"), P("1/z"));
  EXPECT_EQ(P("exp(2*t)/(exp(t)*(1 + x))"), P("exp(t)/(x + 1)"));
}

TEST(Normalize, MultivariateGcd) {
  Expr a = P("(x + y*z - 3)*(x^2*y - z + 1)");
  Expr b = P("(x + y*z - 3)*(y + z^2)");
  EXPECT_EQ(a / b, P("(x^2*y - z + 1)/(y + z^2)"));
}

TEST(Normalize, ExponentialOfSumIsOneKernel) {
  EXPECT_EQ(P("exp(t + 1)*exp(-t)"), P("exp(1)"));
  EXPECT_NE(P("exp(2*t)"), P("exp(t)"));
  EXPECT_EQ(P("exp(t)^2"), P("exp(2*t)"));
  EXPECT_EQ(P("exp(0)"), Expr(1));
}

// -------------------------------------------------------------- zero tests

TEST(IsZero, CanonicalZero) {
  auto v = is_zero(P("(x+y)^2 - x^2 - 2*x*y - y^2"));
  EXPECT_EQ(v.verdict, Verdict::Zero);
  EXPECT_FALSE(v.witness);
}

TEST(IsZero, NonZeroCarriesWitness) {
  auto v = is_zero(P("x - y"));
  ASSERT_EQ(v.verdict, Verdict::NonZero);
  ASSERT_TRUE(v.witness);
  auto value = eval_at(P("x - y"), *v.witness);
  ASSERT_TRUE(value.exact);
  EXPECT_NE(*value.exact, 0);
}

TEST(IsZero, NumericallyTinyButNotCanonicalIsUnknown) {
  auto v = is_zero(P("exp(-100)*(1 + x^2)"), {20, 1e-9, 3});
  EXPECT_EQ(v.verdict, Verdict::Unknown);
}

TEST(IsZero, PositiveRationalFunctionIsNonZero) {
  auto v = is_zero(P("1/(x^2 + 1)"), {4, 1e-9, 0});
  EXPECT_EQ(v.verdict, Verdict::NonZero);
}

TEST(IsZero, Deterministic) {
  auto a = is_zero(P("x*y - 3"), {5, 1e-9, 42});
  auto b = is_zero(P("x*y - 3"), {5, 1e-9, 42});
  ASSERT_TRUE(a.witness && b.witness);
  EXPECT_EQ(*a.witness, *b.witness);
}

TEST(IsZero, RejectsBadOptions) {
  EXPECT_THROW(is_zero(P("x"), {0, 1e-9, 0}), Error);
  EXPECT_THROW(is_zero(P("x"), {3, 0.0, 0}), Error);
}

// ------------------------------------------------------ substitute / eval

TEST(Substitute, Examples) {
  EXPECT_EQ(substitute(P("x+y"), {{S("x"), Expr(2)}}), P("y+2"));
  EXPECT_EQ(substitute(P("1/y^2"), {{S("y"), Expr(1)}}), Expr(1));
  EXPECT_EQ(substitute(P("g0*exp(-2*t)"), {{S("t"), Expr(0)}}), P("g0"));
}

TEST(Substitute, IsSimultaneous) {
  EXPECT_EQ(substitute(P("x - 2*y"), {{S("x"), P("y")}, {S("y"), P("x")}}), P("y - 2*x"));
}

TEST(EvalAt, Examples) {
  EXPECT_EQ(*eval_at(P("1/y^2"), {{S("y"), 2}}).exact, Rational(1, 4));
  EXPECT_EQ(*eval_at(P("x*y"), {{S("x"), 3}, {S("y"), 5}}).exact, 15);
  EXPECT_THROW(eval_at(P("1/y"), {{S("y"), 0}}), DivisionByZero);
  EXPECT_THROW(eval_at(P("x*y"), {{S("x"), 1}}), UnboundSymbol);
}

TEST(EvalAt, ExponentialGivesFloatingValue) {
  auto v = eval_at(P("exp(2*t)"), {{S("t"), Rational(1, 2)}});
  EXPECT_FALSE(v.exact);
  EXPECT_NEAR(v.approx, std::exp(1.0), 1e-12 * std::exp(1.0));
}

// ---------------------------------------------------------------- rendering

TEST(Render, Text) {
  EXPECT_EQ(render(P("1/y^2")), "1/y^2");
  EXPECT_EQ(render(P("2*P/y")), "2*P/y");
  EXPECT_EQ(render(P("-2*x/(3*y^2)")), "-2*x/(3*y^2)");
  EXPECT_EQ(render(P("x/(x^2+1)")), "x/(x^2 + 1)");
  EXPECT_EQ(render(P("(x+1)/y")), "x/y + 1/y");
}

TEST(Render, ZeroInAllFormats) {
  EXPECT_EQ(render(Expr(), Format::Text), "0");
  EXPECT_EQ(render(Expr(), Format::Latex), "0");
  EXPECT_EQ(render(Expr(), Format::Json), "0");
}

TEST(Render, Latex) {
  EXPECT_EQ(render(P("1/y^2"), Format::Latex), "\\frac{1}{y^{2}}");
  EXPECT_EQ(render(P("-4*exp(-2*t)"), Format::Latex), "-4 e^{-2 t}");
}

TEST(Render, JsonRoundTrip) {
  Expr e = P("exp(-2*t)*(x + 1)/(y^2 + 3) - 5/7");
  EXPECT_EQ(from_json(nlohmann::ordered_json::parse(render(e, Format::Json))), e);
  EXPECT_EQ(render(P("x/y"), Format::Json),
            R"({"product":[{"var":"x"},{"pow":{"base":{"var":"y"},"exp":-1}}]})");
}

// ----------------------------------------------------------------- properties

class RandomExpressions : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240611};
  oracle::TreeGenerator gen{rng, {"x", "y", "z"}};
};

TEST_F(RandomExpressions, ParseRenderRoundTrip) {
  for (int i = 0; i < 200; ++i) {
    Expr e = normalize(gen.tree(3));
    std::string s = render(e);
    EXPECT_EQ(parse_expression(s), e) << s;
  }
}

TEST_F(RandomExpressions, NormalizeIsIdempotent) {
  for (int i = 0; i < 100; ++i) {
    Node n = gen.tree(3);
    Expr once = normalize(n);
    Expr twice = normalize(to_node(once));
    EXPECT_EQ(once, twice) << render(once);
    EXPECT_EQ(to_node(once), to_node(twice));
  }
}

TEST_F(RandomExpressions, ReorderingGivesIdenticalCanonicalForms) {
  for (int i = 0; i < 100; ++i) {
    Node n = gen.tree(3);
    Node shuffled = oracle::shuffle_operands(n, rng);
    EXPECT_EQ(to_node(normalize(n)), to_node(normalize(shuffled)));
  }
}

TEST_F(RandomExpressions, DeriveOfAbsentSymbolIsZero) {
  for (int i = 0; i < 100; ++i) {
    Expr e = normalize(gen.tree(3));
    EXPECT_TRUE(derive(e, S("w")).is_zero());
  }
}

TEST_F(RandomExpressions, DeriveAgreesWithFiniteDifferences) {
  const char* names[] = {"x", "y", "z"};
  std::uniform_real_distribution<double> coord(0.5, 2.0);
  std::uniform_int_distribution<int> pick(0, 2);
  int checked = 0;
  while (checked < 200) {
    Node tree = gen.tree(3);
    Symbol v(names[pick(rng)]);
    std::map<Symbol, double> point;
    for (auto* n : names) point[Symbol(n)] = coord(rng);
    Expr d = derive(normalize(tree), v);
    double fd = oracle::central_difference(tree, point, v, 1e-5);
    double sym = eval_double(d, point);
    ASSERT_TRUE(std::isfinite(fd));
    EXPECT_LE(std::fabs(sym - fd), 1e-6 * (1 + std::fabs(sym))) << render(normalize(tree));
    ++checked;
  }
}
