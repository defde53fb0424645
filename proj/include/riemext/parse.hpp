#pragma once

#include <string_view>

#include "riemext/expr.hpp"

namespace riemext {

/// Parses the expression grammar (see docs/grammar.md):
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' exponent)?
///   primary := number | identifier | 'exp' '(' expr ')' | '(' expr ')'
///
/// Exponents must reduce to integer constants. Throws ParseError with the
/// 1-based line/column of the offending token; `line` and `column` offset
/// the reported position when the text is embedded in a larger file.
Node parse_tree(std::string_view text, int line = 1, int column = 1);

/// parse_tree followed by normalize.
Expr parse_expression(std::string_view text, int line = 1, int column = 1);

}  // namespace riemext
