#pragma once

#include "json.hpp"
#include <string>
#include <string_view>

#include "riemext/expr.hpp"

namespace riemext {

enum class Format { Text, Latex, Json };

/// Throws Error for an unknown name.
Format parse_format(std::string_view name);

/// Deterministic rendering of the canonical form. Text output re-parses to
/// an equal Expr. JSON output is the tagged-node tree serialized compactly.
std::string render(const Expr& e, Format format = Format::Text);

/// Tagged-node JSON: integers as numbers, other rationals as "p/q" strings,
/// and single-key objects {"var"}, {"sum"}, {"product"}, {"pow"}, {"exp"}.
nlohmann::ordered_json to_json(const Expr& e);
Expr from_json(const nlohmann::ordered_json& j);

std::string render_text(const Node& n);
std::string render_latex(const Node& n);

}  // namespace riemext
