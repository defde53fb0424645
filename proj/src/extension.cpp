#include "riemext/extension.hpp"

#include <set>
#include <utility>

#include "riemext/zoo.hpp"

namespace riemext {

BaseGeometry base_from_metric(const IndexedTensor& g) {
  MetricStructure m = invert_metric(g);
  Connection c = christoffel(m);
  return BaseGeometry{m.chart, std::move(c), std::move(m)};
}

BaseGeometry base_from_connection(Connection c) {
  Connection checked = make_connection(c.gamma);
  return BaseGeometry{checked.chart, std::move(checked), std::nullopt};
}

IndexedTensor zero_c(const Chart& base) { return IndexedTensor(base, {Variance::Down, Variance::Down}); }

std::string star_label(int slot, int n) {
  return slot > n ? std::to_string(slot - n) + "*" : std::to_string(slot);
}

namespace {

// -2 w_l Gamma^l_ij + c_ij
Expr base_block(const Connection& con, const IndexedTensor& c, const std::vector<Symbol>& omega,
                int i, int j) {
  Expr v = c({i, j});
  int n = con.chart.dim();
  for (int l = 1; l <= n; ++l) {
    const Expr& g = con.gamma({l, i, j});
    if (!g.is_zero()) v -= Expr(2) * Expr(omega[l - 1]) * g;
  }
  return v;
}

std::vector<Symbol> default_omega(int n) {
  std::vector<Symbol> w;
  for (int i = 1; i <= n; ++i) w.emplace_back("p" + std::to_string(i));
  return w;
}

}  // namespace

ExtendedSpace extend(const BaseGeometry& base, const IndexedTensor& c, std::vector<Symbol> omega) {
  int n = base.chart.dim();
  if (omega.empty()) omega = default_omega(n);
  if (static_cast<int>(omega.size()) != n)
    throw ShapeError("need " + std::to_string(n) + " omega names, got " +
                     std::to_string(omega.size()));
  for (Symbol w : omega)
    if (base.chart.position(w) != 0)
      throw ShapeError("omega name '" + w.name() + "' collides with a base coordinate");
  if (c.rank() != 2 || c.variance(1) != Variance::Down || c.variance(2) != Variance::Down ||
      !(c.chart() == base.chart))
    throw ShapeError("c must be a (0,2) tensor on the base chart");
  assert_symmetric(c, 1, 2);
  for (const Expr& e : c.data())
    for (Symbol w : omega)
      if (e.depends_on(w)) throw Error("c depends on the fiber coordinate '" + w.name() + "'");

  std::vector<Symbol> coords = base.chart.coords();
  coords.insert(coords.end(), omega.begin(), omega.end());
  Chart ext_chart(coords);  // rejects duplicate omega names
  IndexedTensor g(ext_chart, {Variance::Down, Variance::Down});
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      Expr v = base_block(base.connection, c, omega, i, j);
      g.set({i, j}, v);
      g.set({j, i}, v);
    }
    g.set({i, n + i}, 1);
    g.set({n + i, i}, 1);
  }
  return ExtendedSpace{base, c, omega, invert_metric(g)};
}

namespace {

using Residuals = std::vector<std::pair<std::string, Expr>>;

Check component_check(std::string name, const Residuals& rs, const ZeroTestOptions& options) {
  std::vector<ZeroVerdict> vs;
  for (const auto& [label, e] : rs) {
    if (e.is_zero()) continue;
    ZeroVerdict v = is_zero(e, options);
    v.location = label;
    vs.push_back(v);
    if (v.is_nonzero()) break;
  }
  return make_check(std::move(name), combine(vs));
}

std::string label(std::initializer_list<int> slots, int n) {
  std::string s = "[";
  bool first = true;
  for (int x : slots) {
    if (!first) s += ",";
    first = false;
    s += star_label(x, n);
  }
  return s + "]";
}

}  // namespace

std::vector<Check> verify_extension_identities(const ExtendedSpace& ext, RicciConvention conv,
                                               const ZeroTestOptions& options) {
  const int n = ext.base_dim();
  const MetricStructure& m = ext.metric;
  const Connection& base = ext.base.connection;
  Curvature cv = curvature(m, conv);
  const IndexedTensor& G = cv.connection.gamma;
  IndexedTensor base_riem = riemann(base);
  IndexedTensor base_ric = ricci(base_riem, conv);
  std::vector<Check> out;

  {
    Residuals rs;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        rs.emplace_back(label({i, j}, n), m.g_inv({i, j}));
        rs.emplace_back(label({i, n + j}, n), m.g_inv({i, n + j}) - Expr(i == j ? 1 : 0));
        rs.emplace_back(label({n + i, j}, n), m.g_inv({n + i, j}) - Expr(i == j ? 1 : 0));
        rs.emplace_back(label({n + i, n + j}, n),
                        m.g_inv({n + i, n + j}) + base_block(base, ext.c, ext.omega, i, j));
      }
    out.push_back(component_check("inverse metric blocks", rs, options));
  }
  {
    Residuals base_rs, mixed_rs, fiber_rs, dual_rs;
    for (int k = 1; k <= n; ++k)
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          base_rs.emplace_back(label({k, i, j}, n), G({k, i, j}) - base.gamma({k, i, j}));
          mixed_rs.emplace_back(label({k, n + i, j}, n), G({k, n + i, j}));
          mixed_rs.emplace_back(label({k, i, n + j}, n), G({k, i, n + j}));
          fiber_rs.emplace_back(label({k, n + i, n + j}, n), G({k, n + i, n + j}));
          fiber_rs.emplace_back(label({n + k, n + i, n + j}, n), G({n + k, n + i, n + j}));
          dual_rs.emplace_back(label({n + k, n + i, j}, n),
                               G({n + k, n + i, j}) + base.gamma({i, j, k}));
        }
    out.push_back(component_check("Gamma^k_ij = base Gamma^k_ij", base_rs, options));
    out.push_back(component_check("Gamma^k_{i*j} = 0", mixed_rs, options));
    out.push_back(component_check("Gamma^k_{i*j*} = Gamma^{k*}_{i*j*} = 0", fiber_rs, options));
    out.push_back(component_check("Gamma^{k*}_{i*j} = -Gamma^i_jk", dual_rs, options));
  }
  {
    Residuals rs;
    for_each_index(n, 4, [&](const Index& x) {
      rs.emplace_back(label({x[0], x[1], x[2], x[3]}, n), cv.riem13(x) - base_riem(x));
    });
    out.push_back(component_check("R^i_jkl = base R^i_jkl", rs, options));
  }
  {
    Residuals rs;
    for (int i = 1; i <= 2 * n; ++i)
      for (int j = 1; j <= 2 * n; ++j)
        if (i > n || j > n) rs.emplace_back(label({i, j}, n), cv.ric({i, j}));
    out.push_back(component_check("Ric_{i*j} = Ric_{i*j*} = 0", rs, options));
  }
  {
    Residuals rs;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        rs.emplace_back(label({i, j}, n), cv.ric({i, j}) - base_ric({i, j}) - base_ric({j, i}));
    out.push_back(component_check("Ric_ij = R_ij + R_ji", rs, options));
  }
  {
    Residuals rs;
    for_each_index(n, 4, [&](const Index& x) {
      rs.emplace_back(label({n + x[0], x[1], n + x[2], x[3]}, n),
                      cv.riem04({n + x[0], x[1], n + x[2], x[3]}));
    });
    out.push_back(component_check("R_{i*jk*l} = 0", rs, options));
  }
  out.push_back(component_check("scalar curvature = 0", {{"", cv.scalar}}, options));
  if (2 * n < 3) {
    out.push_back(note_check("concircular = Riemann", Status::Skipped, "needs dimension >= 3"));
    out.push_back(note_check("conharmonic = Weyl", Status::Skipped, "needs dimension >= 3"));
  } else {
    IndexedTensor C = concircular(m, cv.riem04, cv.scalar);
    IndexedTensor L = conharmonic(m, cv.riem04, cv.ric);
    IndexedTensor W = weyl(m, cv.riem04, cv.ric, cv.scalar);
    out.push_back(make_check("concircular = Riemann", is_zero(tensor_sub(C, cv.riem04), options)));
    out.push_back(make_check("conharmonic = Weyl", is_zero(tensor_sub(L, W), options)));
  }
  return out;
}

std::optional<IndexedTensor> recognize_extension(const IndexedTensor& m,
                                                 const Connection& base_connection) {
  int dim = m.dim();
  if (dim % 2 != 0) throw ShapeError("an extension metric needs an even dimension");
  if (m.rank() != 2 || m.variance(1) != Variance::Down || m.variance(2) != Variance::Down)
    throw ShapeError("expected a (0,2) metric");
  int n = dim / 2;
  const auto& coords = m.chart().coords();
  if (base_connection.chart.dim() != n ||
      !std::equal(coords.begin(), coords.begin() + n, base_connection.chart.coords().begin()))
    throw ShapeError("the first half of the chart must be the base chart");
  std::vector<Symbol> omega(coords.begin() + n, coords.end());

  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Expr delta = i == j ? 1 : 0;
      if (m({i, n + j}) != delta || m({n + i, j}) != delta) return std::nullopt;
      if (!m({n + i, n + j}).is_zero()) return std::nullopt;
    }
  IndexedTensor c(base_connection.chart, {Variance::Down, Variance::Down});
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Expr v = m({i, j});
      for (int l = 1; l <= n; ++l) {
        const Expr& g = base_connection.gamma({l, i, j});
        if (!g.is_zero()) v += Expr(2) * Expr(omega[l - 1]) * g;
      }
      for (Symbol w : omega)
        if (!derive(v, w).is_zero()) return std::nullopt;
      c.set({i, j}, v);
    }
  if (!is_symmetric(c, 1, 2)) return std::nullopt;
  return c;
}

}  // namespace riemext
