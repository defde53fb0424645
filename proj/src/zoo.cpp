#include "riemext/zoo.hpp"

namespace riemext {

namespace {

void require_riem04(const MetricStructure& m, const IndexedTensor& r) {
  if (r.rank() != 4 || !(r.chart() == m.chart))
    throw ShapeError("expected a (0,4) curvature tensor on the metric's chart");
  for (Variance v : r.variance())
    if (v != Variance::Down) throw ShapeError("expected a (0,4) curvature tensor");
}

void require_above_two(int n, const char* what) {
  if (n == 2)
    throw UnsupportedDimension(std::string(what) +
                               " has a 1/(n-2) factor and is undefined for n = 2; "
                               "extend the manifold first");
  if (n < 2) throw UnsupportedDimension(std::string(what) + " needs n >= 3");
}

// g_il g_jk - g_jl g_ik
Expr metric_bivector(const IndexedTensor& g, int i, int j, int k, int l) {
  return g({i, l}) * g({j, k}) - g({j, l}) * g({i, k});
}

// g_jk R_il + g_il R_jk - g_ik R_jl - g_jl R_ik
Expr kulkarni(const IndexedTensor& g, const IndexedTensor& r, int i, int j, int k, int l) {
  return g({j, k}) * r({i, l}) + g({i, l}) * r({j, k}) - g({i, k}) * r({j, l}) -
         g({j, l}) * r({i, k});
}

}  // namespace

IndexedTensor concircular(const MetricStructure& m, const IndexedTensor& riem04, const Expr& scalar) {
  require_riem04(m, riem04);
  int n = m.chart.dim();
  if (n < 2) throw UnsupportedDimension("concircular tensor needs n >= 2");
  Expr f = scalar / Expr(n * (n - 1));
  IndexedTensor out = riem04;
  if (f.is_zero()) return out;
  for (std::size_t off = 0; off < out.size(); ++off) {
    Index x = out.index_of(off);
    Expr b = metric_bivector(m.g, x[0], x[1], x[2], x[3]);
    if (!b.is_zero()) out.data()[off] -= f * b;
  }
  return out;
}

IndexedTensor conharmonic(const MetricStructure& m, const IndexedTensor& riem04,
                          const IndexedTensor& ric) {
  require_riem04(m, riem04);
  int n = m.chart.dim();
  require_above_two(n, "conharmonic tensor");
  Expr f = Expr::rational(1, n - 2);
  IndexedTensor out = riem04;
  for (std::size_t off = 0; off < out.size(); ++off) {
    Index x = out.index_of(off);
    Expr k = kulkarni(m.g, ric, x[0], x[1], x[2], x[3]);
    if (!k.is_zero()) out.data()[off] -= f * k;
  }
  return out;
}

IndexedTensor weyl(const MetricStructure& m, const IndexedTensor& riem04, const IndexedTensor& ric,
                   const Expr& scalar) {
  require_riem04(m, riem04);
  int n = m.chart.dim();
  require_above_two(n, "Weyl tensor");
  Expr f = Expr::rational(1, n - 2);
  Expr h = scalar / Expr((n - 1) * (n - 2));
  IndexedTensor out = riem04;
  for (std::size_t off = 0; off < out.size(); ++off) {
    Index x = out.index_of(off);
    Expr k = kulkarni(m.g, ric, x[0], x[1], x[2], x[3]);
    Expr v = out.data()[off];
    if (!k.is_zero()) v -= f * k;
    if (!h.is_zero()) {
      Expr b = metric_bivector(m.g, x[0], x[1], x[2], x[3]);
      if (!b.is_zero()) v += h * b;
    }
    out.data()[off] = std::move(v);
  }
  return out;
}

ZeroVerdict check_linear_relation(const IndexedTensor& C, const IndexedTensor& L,
                                  const IndexedTensor& W, const IndexedTensor& riem04,
                                  const ZeroTestOptions& options) {
  int n = riem04.dim();
  require_above_two(n, "linear relation");
  Expr f = Expr::rational(n, n - 2);
  IndexedTensor lhs = tensor_add(tensor_sub(W, L), tensor_scale(tensor_sub(C, riem04), f));
  return is_zero(lhs, options);
}

}  // namespace riemext
