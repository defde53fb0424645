#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riemext/extension.hpp"

namespace riemext::cli {

/// A parsed manifold file (grammar in docs/grammar.md).
struct ManifoldFile {
  std::string name;
  std::vector<Symbol> coords;
  std::vector<Symbol> params;
  std::vector<Symbol> omega;  // empty: extend() picks p1..pn
  std::optional<IndexedTensor> metric;
  std::optional<IndexedTensor> connection;
  std::optional<IndexedTensor> c;

  Chart chart() const { return Chart(coords); }
  int dim() const { return static_cast<int>(coords.size()); }

  /// Levi-Civita geometry of the metric, or the connection as given.
  BaseGeometry base() const;
  /// The c block, or zero.
  IndexedTensor c_or_zero() const;
};

/// Throws ParseError (with line and column) on syntax errors, undeclared
/// symbols, out-of-range or duplicate indices; Error if the file cannot be
/// read.
ManifoldFile parse_manifold(std::string_view text);
ManifoldFile load_manifold(const std::string& path);

/// A file holding only a `c { ... }` block, checked against `base`.
IndexedTensor parse_c_file(std::string_view text, const ManifoldFile& base);
IndexedTensor load_c_file(const std::string& path, const ManifoldFile& base);

/// Manifold file text for a metric; re-parses to the same components.
std::string write_manifold(const std::string& name, const std::vector<Symbol>& params,
                           const IndexedTensor& metric);

}  // namespace riemext::cli
