#pragma once

#include <string>
#include <string_view>

#include "riemext/tensor.hpp"

namespace riemext {

/// Chart, symmetric metric, its exact inverse and determinant.
struct MetricStructure {
  Chart chart;
  IndexedTensor g;      // (down, down)
  IndexedTensor g_inv;  // (up, up)
  Expr det;
};

/// Exact inverse by Gauss-Jordan elimination over rational functions, with
/// det = signed product of pivots. Throws SymmetryError for a non-symmetric g
/// and SingularMetric when no pivot exists (canonically zero determinant).
MetricStructure invert_metric(const IndexedTensor& g);

/// Torsion-free affine connection. gamma(k, i, j) = Gamma^k_{ij}.
struct Connection {
  Chart chart;
  IndexedTensor gamma;  // (up, down, down)
};

/// Validates shape and symmetry in the lower slots.
Connection make_connection(IndexedTensor gamma);

/// Standard: Ric_{jk} = sum_a R^a_{ajk}. Paper: the negative. On the command
/// line and in reports the flipped one is called "paper".
enum class RicciConvention { Standard, Paper };

std::string to_string(RicciConvention c);
RicciConvention parse_convention(std::string_view name);

/// Levi-Civita connection:
/// Gamma^k_{ij} = 1/2 g^{kl} (d_i g_{jl} + d_j g_{il} - d_l g_{ij}).
Connection christoffel(const MetricStructure& m);

/// R^l_{ijk} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik} + Gamma^l_{im} Gamma^m_{jk}
///           - Gamma^l_{jm} Gamma^m_{ik}, stored with slots (l, i, j, k).
IndexedTensor riemann(const Connection& c);

/// R_{ijkl} = g_{mk} R^m_{ijl}: the upper index goes to the third slot.
IndexedTensor lower_riemann(const MetricStructure& m, const IndexedTensor& riem13);

IndexedTensor ricci(const IndexedTensor& riem13, RicciConvention conv = RicciConvention::Standard);

/// R = g^{jk} R_{jk}.
Expr scalar_curvature(const MetricStructure& m, const IndexedTensor& ric);

/// Fully covariant T of rank k to the rank k+1 tensor
/// (nabla_m T)_{i1..ik} = d_m T_{i1..ik} - sum_s Gamma^a_{i_s m} T_{..a..},
/// with m as the last slot.
IndexedTensor covariant_derivative(const Connection& c, const IndexedTensor& t);

/// g^{kl} T_{..:k:l}: contracts the two slots appended by two covariant
/// derivatives.
IndexedTensor laplacian(const MetricStructure& m, const Connection& c, const IndexedTensor& t);

IndexedTensor lower_index(const IndexedTensor& t, int slot, const MetricStructure& m, int target = 0);
IndexedTensor raise_index(const IndexedTensor& t, int slot, const MetricStructure& m, int target = 0);

/// Everything the curvature pipeline produces for one metric.
struct Curvature {
  Connection connection;
  IndexedTensor riem13;
  IndexedTensor riem04;
  IndexedTensor ric;
  Expr scalar;
};

Curvature curvature(const MetricStructure& m, RicciConvention conv = RicciConvention::Standard);

/// Componentwise partial derivative by a symbol that is not a chart
/// coordinate (typically the flow time).
IndexedTensor derive(const IndexedTensor& t, Symbol s);

}  // namespace riemext
