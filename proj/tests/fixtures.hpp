#pragma once

#include <string>
#include <vector>

#include "riemext/geometry.hpp"
#include "riemext/parse.hpp"

namespace fixture {

using namespace riemext;

inline Expr P(const std::string& s) { return parse_expression(s); }

inline IndexedTensor diagonal_metric(const Chart& chart, const std::vector<std::string>& diag) {
  IndexedTensor g(chart, {Variance::Down, Variance::Down});
  for (int i = 1; i <= chart.dim(); ++i) g.set({i, i}, P(diag[i - 1]));
  return g;
}

inline IndexedTensor conformally_flat(const Chart& chart, const Expr& factor) {
  IndexedTensor g(chart, {Variance::Down, Variance::Down});
  for (int i = 1; i <= chart.dim(); ++i) g.set({i, i}, factor);
  return g;
}

inline Chart chart_of(int n, const std::string& prefix = "x") {
  std::vector<Symbol> c;
  for (int i = 1; i <= n; ++i) c.emplace_back(prefix + std::to_string(i));
  return Chart(c);
}

inline MetricStructure hyperbolic_plane() {
  return invert_metric(diagonal_metric(Chart::of({"x", "y"}), {"1/y^2", "1/y^2"}));
}

inline MetricStructure flat(int n) {
  return invert_metric(conformally_flat(chart_of(n), 1));
}

/// Round sphere of squared radius r2 in stereographic coordinates.
inline MetricStructure sphere(int n, long r2 = 1) {
  Chart c = chart_of(n);
  Expr s = 1;
  for (Symbol x : c.coords()) s += Expr(x) * Expr(x);
  return invert_metric(conformally_flat(c, Expr(4 * r2) / (s * s)));
}

inline MetricStructure schwarzschild() {
  return invert_metric(diagonal_metric(Chart::of({"T", "r", "u", "phi"}),
                                       {"-(1 - 2*m/r)", "1/(1 - 2*m/r)", "r^2/(1 - u^2)",
                                        "r^2*(1 - u^2)"}));
}

}  // namespace fixture
