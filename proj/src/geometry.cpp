#include "riemext/geometry.hpp"

#include "riemext/detail/ratfunc.hpp"

namespace riemext {

namespace {

std::size_t weight(const Expr& e) {
  return e.rep().num.terms().size() + e.rep().den.terms().size();
}

void require_rank2(const IndexedTensor& t, Variance v, const char* what) {
  if (t.rank() != 2 || t.variance(1) != v || t.variance(2) != v)
    throw ShapeError(std::string(what) + ": expected a rank-2 tensor with both slots " + to_string(v));
}

void require_covariant(const IndexedTensor& t, const char* what) {
  for (Variance v : t.variance())
    if (v != Variance::Down) throw ShapeError(std::string(what) + ": tensor must be fully covariant");
}

}  // namespace

MetricStructure invert_metric(const IndexedTensor& g) {
  require_rank2(g, Variance::Down, "invert_metric");
  assert_symmetric(g, 1, 2);
  int n = g.dim();
  std::vector<std::vector<Expr>> a(n, std::vector<Expr>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = g({i + 1, j + 1});
    a[i][n + i] = 1;
  }
  Expr det = 1;
  for (int col = 0; col < n; ++col) {
    // Lightest nonzero pivot keeps intermediate expressions small.
    int best = -1;
    for (int r = col; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      if (best < 0 || weight(a[r][col]) < weight(a[best][col])) best = r;
    }
    if (best < 0) throw SingularMetric("metric determinant is identically zero");
    if (best != col) {
      std::swap(a[best], a[col]);
      det = -det;
    }
    Expr pivot = a[col][col];
    det *= pivot;
    if (!pivot.is_one()) {
      Expr inv = 1 / pivot;
      for (int j = col; j < 2 * n; ++j)
        if (!a[col][j].is_zero()) a[col][j] *= inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Expr f = a[r][col];
      for (int j = col; j < 2 * n; ++j)
        if (!a[col][j].is_zero()) a[r][j] -= f * a[col][j];
    }
  }
  MetricStructure m{g.chart(), g, IndexedTensor(g.chart(), {Variance::Up, Variance::Up}), det};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.g_inv.set({i + 1, j + 1}, a[i][n + j]);
  return m;
}

Connection make_connection(IndexedTensor gamma) {
  if (gamma.rank() != 3 || gamma.variance(1) != Variance::Up || gamma.variance(2) != Variance::Down ||
      gamma.variance(3) != Variance::Down)
    throw ShapeError("connection coefficients must have variance (up, down, down)");
  assert_symmetric(gamma, 2, 3);
  Chart chart = gamma.chart();
  return Connection{std::move(chart), std::move(gamma)};
}

std::string to_string(RicciConvention c) {
  return c == RicciConvention::Standard ? "standard" : "paper";
}

RicciConvention parse_convention(std::string_view name) {
  if (name == "standard") return RicciConvention::Standard;
  if (name == "paper") return RicciConvention::Paper;
  throw Error("unknown convention '" + std::string(name) + "' (expected standard or paper)");
}

Connection christoffel(const MetricStructure& m) {
  int n = m.chart.dim();
  // dg[l][i][j] = d_l g_ij
  std::vector<IndexedTensor> dg;
  for (int l = 1; l <= n; ++l) {
    Symbol x = m.chart.coord(l);
    dg.push_back(map_components(m.g, [x](const Expr& e) { return derive(e, x); }));
  }
  // First kind: G[l][i][j] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij), symmetric in i, j.
  IndexedTensor first(m.chart, {Variance::Down, Variance::Down, Variance::Down});
  Expr half = Expr::rational(1, 2);
  for (int l = 1; l <= n; ++l)
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) {
        Expr v = dg[i - 1]({j, l}) + dg[j - 1]({i, l}) - dg[l - 1]({i, j});
        if (v.is_zero()) continue;
        v *= half;
        first.set({l, i, j}, v);
        first.set({l, j, i}, v);
      }
  IndexedTensor gamma(m.chart, {Variance::Up, Variance::Down, Variance::Down});
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) {
        Expr sum;
        for (int l = 1; l <= n; ++l) {
          const Expr& gi = m.g_inv({k, l});
          if (gi.is_zero()) continue;
          const Expr& f = first({l, i, j});
          if (!f.is_zero()) sum += gi * f;
        }
        gamma.set({k, i, j}, sum);
        gamma.set({k, j, i}, sum);
      }
  return Connection{m.chart, std::move(gamma)};
}

IndexedTensor riemann(const Connection& c) {
  const IndexedTensor& G = c.gamma;
  int n = G.dim();
  std::vector<IndexedTensor> dG;
  for (int i = 1; i <= n; ++i) {
    Symbol x = c.chart.coord(i);
    dG.push_back(map_components(G, [x](const Expr& e) { return derive(e, x); }));
  }
  IndexedTensor r(c.chart, {Variance::Up, Variance::Down, Variance::Down, Variance::Down});
  for (int l = 1; l <= n; ++l)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
          Expr v = dG[i - 1]({l, j, k}) - dG[j - 1]({l, i, k});
          for (int m = 1; m <= n; ++m) {
            const Expr& a = G({l, i, m});
            const Expr& b = G({m, j, k});
            if (!a.is_zero() && !b.is_zero()) v += a * b;
            const Expr& p = G({l, j, m});
            const Expr& q = G({m, i, k});
            if (!p.is_zero() && !q.is_zero()) v -= p * q;
          }
          if (v.is_zero()) continue;
          r.set({l, i, j, k}, v);
          r.set({l, j, i, k}, -v);
        }
  return r;
}

IndexedTensor lower_riemann(const MetricStructure& m, const IndexedTensor& riem13) {
  return lower_index(riem13, 1, m.g, 3);
}

IndexedTensor ricci(const IndexedTensor& riem13, RicciConvention conv) {
  if (riem13.rank() != 4 || riem13.variance(1) != Variance::Up)
    throw ShapeError("ricci: expected the (1,3) Riemann tensor");
  IndexedTensor ric = contract(riem13, 1, 2);
  if (conv == RicciConvention::Paper) ric = map_components(ric, [](const Expr& e) { return -e; });
  return ric;
}

Expr scalar_curvature(const MetricStructure& m, const IndexedTensor& ric) {
  require_rank2(ric, Variance::Down, "scalar_curvature");
  Expr s;
  int n = m.chart.dim();
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k) {
      const Expr& gi = m.g_inv({j, k});
      const Expr& r = ric({j, k});
      if (!gi.is_zero() && !r.is_zero()) s += gi * r;
    }
  return s;
}

IndexedTensor covariant_derivative(const Connection& c, const IndexedTensor& t) {
  require_covariant(t, "covariant_derivative");
  int n = t.dim();
  int k = t.rank();
  std::vector<Variance> var(static_cast<std::size_t>(k + 1), Variance::Down);
  IndexedTensor out(t.chart(), var);
  std::vector<IndexedTensor> dt;
  for (int m = 1; m <= n; ++m) {
    Symbol x = c.chart.coord(m);
    dt.push_back(map_components(t, [x](const Expr& e) { return derive(e, x); }));
  }
  Index src;
  for (std::size_t off = 0; off < out.size(); ++off) {
    Index idx = out.index_of(off);
    int m = idx.back();
    src.assign(idx.begin(), idx.end() - 1);
    Expr v = dt[m - 1](src);
    for (int s = 0; s < k; ++s) {
      int is = src[s];
      for (int a = 1; a <= n; ++a) {
        const Expr& g = c.gamma({a, is, m});
        if (g.is_zero()) continue;
        src[s] = a;
        const Expr& tv = t(src);
        if (!tv.is_zero()) v -= g * tv;
      }
      src[s] = is;
    }
    out.data()[off] = std::move(v);
  }
  return out;
}

IndexedTensor laplacian(const MetricStructure& m, const Connection& c, const IndexedTensor& t) {
  require_covariant(t, "laplacian");
  IndexedTensor dd = covariant_derivative(c, covariant_derivative(c, t));
  int n = t.dim();
  int k = t.rank();
  IndexedTensor out(t.chart(), t.variance());
  Index src(static_cast<std::size_t>(k + 2));
  for (std::size_t off = 0; off < out.size(); ++off) {
    Index idx = out.index_of(off);
    std::copy(idx.begin(), idx.end(), src.begin());
    Expr v;
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        const Expr& gi = m.g_inv({a, b});
        if (gi.is_zero()) continue;
        src[k] = a;
        src[k + 1] = b;
        const Expr& d = dd(src);
        if (!d.is_zero()) v += gi * d;
      }
    out.data()[off] = std::move(v);
  }
  return out;
}

IndexedTensor lower_index(const IndexedTensor& t, int slot, const MetricStructure& m, int target) {
  return lower_index(t, slot, m.g, target);
}

IndexedTensor raise_index(const IndexedTensor& t, int slot, const MetricStructure& m, int target) {
  return raise_index(t, slot, m.g_inv, target);
}

Curvature curvature(const MetricStructure& m, RicciConvention conv) {
  Curvature c;
  c.connection = christoffel(m);
  c.riem13 = riemann(c.connection);
  c.riem04 = lower_riemann(m, c.riem13);
  c.ric = ricci(c.riem13, conv);
  c.scalar = scalar_curvature(m, c.ric);
  return c;
}

IndexedTensor derive(const IndexedTensor& t, Symbol s) {
  return map_components(t, [s](const Expr& e) { return derive(e, s); });
}

}  // namespace riemext
