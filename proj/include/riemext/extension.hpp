#pragma once

#include <optional>
#include <vector>

#include "riemext/geometry.hpp"
#include "riemext/report.hpp"

namespace riemext {

/// Base manifold: a chart with a torsion-free connection, either the
/// Levi-Civita connection of `metric` or given directly.
struct BaseGeometry {
  Chart chart;
  Connection connection;
  std::optional<MetricStructure> metric;
};

BaseGeometry base_from_metric(const IndexedTensor& g);
BaseGeometry base_from_connection(Connection c);

/// Modified Riemann extension on the doubled chart (x^1..x^n, w_1..w_n).
/// Slot n+i of the extended chart is written i* in reports.
struct ExtendedSpace {
  BaseGeometry base;
  IndexedTensor c;
  std::vector<Symbol> omega;
  MetricStructure metric;

  int base_dim() const { return base.chart.dim(); }
};

/// gbar_ij = -2 w_l Gamma^l_ij + c_ij, gbar_{i j*} = delta, gbar_{i* j*} = 0.
/// Default omega names are p1..pn. Throws ShapeError if an omega name
/// collides with a base coordinate or another omega name, or if c is not a
/// symmetric (0,2) tensor on the base chart; throws Error if c depends on an
/// omega symbol.
ExtendedSpace extend(const BaseGeometry& base, const IndexedTensor& c,
                     std::vector<Symbol> omega = {});

/// Zero c on the base chart.
IndexedTensor zero_c(const Chart& base);

/// Label for extended slot s of a 2n chart: "3" or "1*".
std::string star_label(int slot, int n);

/// Recomputes the curvature of the extended metric from scratch and checks
/// the block identities. Each check is one report entry.
std::vector<Check> verify_extension_identities(const ExtendedSpace& ext, RicciConvention conv,
                                               const ZeroTestOptions& options = {});

/// c_ij = m_ij + 2 w_l Gamma^l_ij when m has the extension block shape and
/// that candidate is independent of every w_l; otherwise nothing. Throws
/// ShapeError if the dimension is odd or the first half of m's chart is not
/// the connection's chart.
std::optional<IndexedTensor> recognize_extension(const IndexedTensor& m,
                                                 const Connection& base_connection);

}  // namespace riemext
