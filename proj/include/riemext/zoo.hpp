#pragma once

#include "riemext/geometry.hpp"
#include "riemext/zero_test.hpp"

namespace riemext {

// All three take the (0,4) Riemann tensor lowered as R_{ijkl} = g_{mk} R^m_{ijl}
// and use the chart dimension as n.

/// C_{ijkl} = R_{ijkl} - R/(n(n-1)) [g_il g_jk - g_jl g_ik]. Needs n >= 2.
IndexedTensor concircular(const MetricStructure& m, const IndexedTensor& riem04, const Expr& scalar);

/// L_{ijkl} = R_{ijkl} - 1/(n-2) [g_jk R_il + g_il R_jk - g_ik R_jl - g_jl R_ik].
/// Throws UnsupportedDimension for n = 2.
IndexedTensor conharmonic(const MetricStructure& m, const IndexedTensor& riem04,
                          const IndexedTensor& ric);

/// W_{ijkl} = R_{ijkl} - 1/(n-2) (g_jk R_il - g_ik R_jl + g_il R_jk - g_jl R_ik)
///          + R/((n-1)(n-2)) (g_il g_jk - g_jl g_ik).
/// Throws UnsupportedDimension for n = 2.
IndexedTensor weyl(const MetricStructure& m, const IndexedTensor& riem04, const IndexedTensor& ric,
                   const Expr& scalar);

/// (W - L) + n/(n-2) (C - R) = 0 componentwise.
ZeroVerdict check_linear_relation(const IndexedTensor& C, const IndexedTensor& L,
                                  const IndexedTensor& W, const IndexedTensor& riem04,
                                  const ZeroTestOptions& options = {});

}  // namespace riemext
