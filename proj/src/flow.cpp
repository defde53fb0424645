#include "riemext/flow.hpp"

#include "riemext/zoo.hpp"

namespace riemext {

TimeDependentMetric make_time_dependent(IndexedTensor g, Symbol t, RicciConvention conv) {
  if (g.rank() != 2 || g.variance(1) != Variance::Down || g.variance(2) != Variance::Down)
    throw ShapeError("a time-dependent metric must be a (0,2) tensor");
  if (g.chart().position(t) != 0)
    throw ShapeError("time symbol '" + t.name() + "' is also a coordinate");
  TimeDependentMetric tdm{g.chart(), t, std::move(g), conv};
  at_symbolic_time(tdm);  // symmetry and invertibility
  return tdm;
}

MetricStructure at_symbolic_time(const TimeDependentMetric& tdm) { return invert_metric(tdm.g); }

IndexedTensor flow_rhs(const MetricStructure& m, RicciConvention conv) {
  return tensor_scale(curvature(m, conv).ric, -2);
}

namespace {

ZeroVerdict flow_verdict(const TimeDependentMetric& tdm, const IndexedTensor& ric,
                         const ZeroTestOptions& options) {
  IndexedTensor r = tensor_add(derive(tdm.g, tdm.t), tensor_scale(ric, 2));
  return is_zero(r, options);
}

// S^p_i = g^pq R_qi
IndexedTensor mixed_ricci(const MetricStructure& m, const IndexedTensor& ric) {
  return raise_index(ric, 1, m.g_inv);
}

// U^r_i^s_j = g^rp g^sq R_piqj
IndexedTensor raised_13(const MetricStructure& m, const IndexedTensor& riem04) {
  return raise_index(raise_index(riem04, 1, m.g_inv), 3, m.g_inv);
}

}  // namespace

ZeroVerdict is_flow_solution(const TimeDependentMetric& tdm, const ZeroTestOptions& options) {
  MetricStructure m = at_symbolic_time(tdm);
  return flow_verdict(tdm, curvature(m, tdm.convention).ric, options);
}

IndexedTensor b_tensor(const MetricStructure& m, const IndexedTensor& riem04) {
  IndexedTensor U = raised_13(m, riem04);
  int n = m.chart.dim();
  IndexedTensor B(m.chart, riem04.variance());
  for (std::size_t off = 0; off < B.size(); ++off) {
    Index x = B.index_of(off);
    int i = x[0], j = x[1], k = x[2], l = x[3];
    Expr v;
    for (int r = 1; r <= n; ++r)
      for (int s = 1; s <= n; ++s) {
        const Expr& u = U({r, i, s, j});
        if (u.is_zero()) continue;
        const Expr& w = riem04({r, k, s, l});
        if (!w.is_zero()) v += u * w;
      }
    B.data()[off] = std::move(v);
  }
  return B;
}

Check residual_check(std::string name, const Residual& r) {
  if (r.precondition_holds()) return make_check(std::move(name), r.residual);
  Check c = make_check(std::move(name), r.residual);
  c.status = Status::Precondition;
  c.note = "input is not a flow solution; residual " + to_string(r.residual.verdict);
  return c;
}

namespace {

struct StandardState {
  MetricStructure m;
  Curvature cv;
  ZeroVerdict precondition;
};

StandardState standard_state(const TimeDependentMetric& tdm, const ZeroTestOptions& options) {
  MetricStructure m = at_symbolic_time(tdm);
  Curvature cv = curvature(m, RicciConvention::Standard);
  ZeroVerdict pre = flow_verdict(tdm, cv.ric, options);
  return StandardState{std::move(m), std::move(cv), pre};
}

}  // namespace

Residual riemann_evolution_residual(const TimeDependentMetric& tdm, const ZeroTestOptions& options) {
  StandardState st = standard_state(tdm, options);
  const auto& m = st.m;
  const auto& R = st.cv.riem04;
  int n = m.chart.dim();
  IndexedTensor lhs = derive(R, tdm.t);
  IndexedTensor lap = laplacian(m, st.cv.connection, R);
  IndexedTensor B = b_tensor(m, R);
  IndexedTensor S = mixed_ricci(m, st.cv.ric);
  IndexedTensor res(m.chart, R.variance());
  for (std::size_t off = 0; off < res.size(); ++off) {
    Index x = res.index_of(off);
    int i = x[0], j = x[1], k = x[2], l = x[3];
    Expr quad = B({i, j, k, l}) - B({i, j, l, k}) - B({i, l, j, k}) + B({i, k, j, l});
    Expr ricci_terms;
    for (int p = 1; p <= n; ++p) {
      auto add = [&](const Expr& r, const Expr& s) {
        if (!r.is_zero() && !s.is_zero()) ricci_terms += r * s;
      };
      add(R({p, j, k, l}), S({p, i}));
      add(R({i, p, k, l}), S({p, j}));
      add(R({i, j, p, l}), S({p, k}));
      add(R({i, j, k, p}), S({p, l}));
    }
    res.data()[off] = lhs.data()[off] - lap.data()[off] - Expr(2) * quad + ricci_terms;
  }
  return Residual{is_zero(res, options), st.precondition};
}

Residual ricci_evolution_residual(const TimeDependentMetric& tdm, const ZeroTestOptions& options) {
  StandardState st = standard_state(tdm, options);
  const auto& m = st.m;
  const auto& ric = st.cv.ric;
  int n = m.chart.dim();
  IndexedTensor lhs = derive(ric, tdm.t);
  IndexedTensor lap = laplacian(m, st.cv.connection, ric);
  IndexedTensor U = raised_13(m, st.cv.riem04);
  IndexedTensor S = mixed_ricci(m, ric);
  IndexedTensor res(m.chart, ric.variance());
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Expr a, b;
      for (int r = 1; r <= n; ++r)
        for (int s = 1; s <= n; ++s) {
          const Expr& u = U({r, i, s, j});
          if (!u.is_zero() && !ric({r, s}).is_zero()) a += u * ric({r, s});
        }
      for (int q = 1; q <= n; ++q)
        if (!S({q, i}).is_zero() && !ric({q, j}).is_zero()) b += S({q, i}) * ric({q, j});
      res.set({i, j}, lhs({i, j}) - lap({i, j}) - Expr(2) * a + Expr(2) * b);
    }
  return Residual{is_zero(res, options), st.precondition};
}

Residual scalar_evolution_residual(const TimeDependentMetric& tdm, const ZeroTestOptions& options) {
  StandardState st = standard_state(tdm, options);
  const auto& m = st.m;
  const auto& ric = st.cv.ric;
  int n = m.chart.dim();
  Expr lhs = derive(st.cv.scalar, tdm.t);
  Expr lap = laplacian(m, st.cv.connection, IndexedTensor::scalar(m.chart, st.cv.scalar)).data()[0];
  IndexedTensor up = raise_index(raise_index(ric, 1, m.g_inv), 2, m.g_inv);
  Expr norm2;
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k)
      if (!up({i, k}).is_zero() && !ric({i, k}).is_zero()) norm2 += up({i, k}) * ric({i, k});
  Expr res = lhs - lap - Expr(2) * norm2;
  return Residual{is_zero(IndexedTensor::scalar(m.chart, res), options), st.precondition};
}

namespace {

// lambda with ric = lambda g, if it is a constant.
std::optional<Expr> einstein_constant(const IndexedTensor& g, const IndexedTensor& ric) {
  Expr lambda;
  for (std::size_t off = 0; off < g.size(); ++off)
    if (!g.data()[off].is_zero()) {
      lambda = ric.data()[off] / g.data()[off];
      break;
    }
  if (!lambda.is_constant() || !(ric == tensor_scale(g, lambda))) return std::nullopt;
  return lambda;
}

}  // namespace

std::optional<TimeDependentMetric> einstein_family(const MetricStructure& m, RicciConvention conv,
                                                   Symbol t) {
  std::optional<Expr> lambda = einstein_constant(m.g, curvature(m, conv).ric);
  if (!lambda) return std::nullopt;
  Expr factor = Expr(1) - Expr(2) * *lambda * Expr(t);
  return make_time_dependent(tensor_scale(m.g, factor), t, conv);
}

Model parse_model(std::string_view name) {
  if (name == "sphere") return Model::Sphere;
  if (name == "hyperbolic") return Model::Hyperbolic;
  throw Error("unknown model '" + std::string(name) + "' (expected sphere or hyperbolic)");
}

std::string to_string(Model m) { return m == Model::Sphere ? "sphere" : "hyperbolic"; }

MetricStructure constant_curvature_model(Model model, int n) {
  if (n < 2) throw UnsupportedDimension("constant-curvature models need n >= 2");
  std::vector<Symbol> coords;
  for (int i = 1; i <= n; ++i) coords.emplace_back("x" + std::to_string(i));
  Chart chart(coords);
  Expr factor;
  if (model == Model::Sphere) {
    Expr s = 1;
    for (Symbol x : coords) s += Expr(x) * Expr(x);
    factor = Expr(4 * (n - 1)) / (s * s);
  } else {
    factor = Expr(n - 1) / pow(Expr(coords.back()), 2);
  }
  IndexedTensor g(chart, {Variance::Down, Variance::Down});
  for (int i = 1; i <= n; ++i) g.set({i, i}, factor);
  return invert_metric(g);
}

namespace {

// k with R(t) = exp(k t) R(0) for every component, searched over |k| <= 8.
std::optional<int> exponential_rate(const IndexedTensor& rt, const IndexedTensor& r0, Symbol t) {
  for (int k = -8; k <= 8; ++k) {
    Expr f = exp(Expr(k) * Expr(t));
    if (rt == tensor_scale(r0, f)) return k;
  }
  return std::nullopt;
}

}  // namespace

ConstantCurvatureFamily constant_curvature_solution(Model model, int n, RicciConvention conv,
                                                    const ZeroTestOptions& options) {
  return constant_curvature_solution(constant_curvature_model(model, n), conv, options);
}

ConstantCurvatureFamily constant_curvature_solution(const MetricStructure& g0, RicciConvention conv,
                                                    const ZeroTestOptions& options) {
  Symbol t("t");
  if (g0.chart.position(t) != 0) throw ShapeError("the chart already uses the time symbol 't'");
  Curvature cv0 = curvature(g0, conv);
  std::optional<Expr> einstein = einstein_constant(g0.g, cv0.ric);
  if (!einstein) throw PreconditionError("initial metric is not Einstein with constant factor");
  Expr lambda = *einstein;
  ConstantCurvatureFamily out;
  out.initial = g0;
  Expr exact_factor = Expr(1) - Expr(2) * lambda * Expr(t);
  TimeDependentMetric exact = make_time_dependent(tensor_scale(g0.g, exact_factor), t, conv);

  if (conv == RicciConvention::Standard) {
    out.family = exact;
    out.checks.push_back(make_check("(1 - 2 lambda t) g0 solves the flow", is_flow_solution(exact, options)));
    IndexedTensor rt = curvature(at_symbolic_time(exact), conv).riem04;
    out.riemann_exponent = exponential_rate(rt, cv0.riem04, t);
    return out;
  }

  if (!lambda.is_one())
    throw PreconditionError("the exp(-2t) family needs Ric = g0 under the paper convention "
                            "(K = 1/(1-n))");
  out.family = make_time_dependent(tensor_scale(g0.g, exp(Expr(-2) * Expr(t))), t, conv);
  out.checks.push_back(
      make_check("exp(-2t) g0 solves the flow", is_flow_solution(out.family, options)));

  IndexedTensor rt = curvature(at_symbolic_time(out.family), conv).riem04;
  out.riemann_exponent = exponential_rate(rt, cv0.riem04, t);
  IndexedTensor claimed = tensor_sub(rt, tensor_scale(cv0.riem04, exp(Expr(-4) * Expr(t))));
  ZeroVerdict pv = is_zero(claimed, options);
  std::string measured = out.riemann_exponent
                             ? "engine finds R_ijkl(t) = exp(" + std::to_string(*out.riemann_exponent) +
                                   "t) R_ijkl(0)"
                             : "engine finds no exponential scaling";
  Check c = make_check("R_ijkl(t) = exp(-4t) R_ijkl(0)", pv, measured);
  if (pv.is_nonzero()) c.status = Status::Erratum;
  out.checks.push_back(c);
  out.checks.push_back(make_check("(1 - 2t) g0 solves the flow", is_flow_solution(exact, options)));
  return out;
}

ZeroVerdict ricci_laplacian(const ExtendedSpace& ext, RicciConvention conv,
                            const ZeroTestOptions& options) {
  Curvature cv = curvature(ext.metric, conv);
  return is_zero(laplacian(ext.metric, cv.connection, cv.ric), options);
}

ExtensionFlow solve_extension_flow(const ExtendedSpace& ext, RicciConvention conv,
                                   const ZeroTestOptions& options) {
  Symbol t("t");
  for (Symbol s : ext.metric.chart.coords())
    if (s == t) throw ShapeError("the extended chart already uses the time symbol 't'");
  Curvature cv0 = curvature(ext.metric, conv);
  Expr tt(t);
  IndexedTensor gt = tensor_sub(ext.metric.g, tensor_scale(cv0.ric, Expr(2) * tt));
  ExtensionFlow out{make_time_dependent(gt, t, conv), ext, cv0.ric, {}};

  MetricStructure mt = at_symbolic_time(out.family);
  Curvature cvt = curvature(mt, conv);
  out.checks.push_back(make_check("Ric(g(t)) = Ric(g(0))", is_zero(tensor_sub(cvt.ric, cv0.ric), options)));
  out.checks.push_back(make_check("g(t) solves the flow", flow_verdict(out.family, cvt.ric, options)));
  out.checks.push_back(make_check("d2g/dt2 = 0", is_zero(derive(derive(gt, t), t), options)));

  std::optional<IndexedTensor> ct = recognize_extension(gt, ext.base.connection);
  if (!ct) {
    out.checks.push_back(note_check("g(t) is a modified Riemann extension", Status::Fail,
                                    "block structure or omega-independence of c(t) fails"));
  } else {
    IndexedTensor base_ric = ricci(riemann(ext.base.connection), conv);
    IndexedTensor expected = tensor_sub(
        ext.c, tensor_scale(tensor_add(base_ric, permute_slots(base_ric, {2, 1})), Expr(2) * tt));
    out.checks.push_back(make_check("g(t) is a modified Riemann extension with c(t) = c(0) - 2t(R_ij + R_ji)",
                                    is_zero(tensor_sub(*ct, expected), options)));
  }
  out.checks.push_back(make_check("Laplacian of Ric = 0",
                                  is_zero(laplacian(ext.metric, cv0.connection, cv0.ric), options)));
  out.checks.push_back(make_check("scalar curvature of g(t) = 0",
                                  is_zero(IndexedTensor::scalar(mt.chart, cvt.scalar), options)));

  // The claimed form g(0) + t Ric.
  IndexedTensor claimed = tensor_add(ext.metric.g, tensor_scale(cv0.ric, tt));
  TimeDependentMetric pf{out.family.chart, t, claimed, conv};
  ZeroVerdict pv = is_flow_solution(pf, options);
  Check pc = make_check("g(0) + t Ric solves the flow", pv,
                        pv.is_nonzero() ? "coefficient forced by the flow equation is -2" : "");
  if (pv.is_nonzero()) pc.status = Status::Erratum;
  out.checks.push_back(pc);
  return out;
}

namespace {

struct RateInputs {
  MetricStructure m;
  Curvature cv;
  ZeroVerdict precondition;
  int n;
};

RateInputs rate_inputs(const TimeDependentMetric& tdm, const ZeroTestOptions& options) {
  MetricStructure m = at_symbolic_time(tdm);
  int n = m.chart.dim();
  if (n < 3) throw PreconditionError("rate theorems need n >= 3 (conharmonic tensor)");
  Curvature cv = curvature(m, tdm.convention);
  if (cv.scalar.is_zero())
    throw PreconditionError("rate theorems need non-zero scalar curvature");
  ZeroVerdict pre = flow_verdict(tdm, cv.ric, options);
  return RateInputs{std::move(m), std::move(cv), pre, n};
}

IndexedTensor concircular_rate(const RateInputs& in, Symbol t) {
  const auto& cv = in.cv;
  int n = in.n;
  IndexedTensor C = concircular(in.m, cv.riem04, cv.scalar);
  IndexedTensor L = conharmonic(in.m, cv.riem04, cv.ric);
  IndexedTensor q = derive(tensor_scale(tensor_sub(C, cv.riem04), 1 / cv.scalar), t);
  IndexedTensor rhs = tensor_scale(tensor_sub(cv.riem04, L), Expr::rational(2 * (n - 2), n * (n - 1)));
  return tensor_sub(q, rhs);
}

IndexedTensor weyl_conharmonic_rate(const RateInputs& in, Symbol t) {
  const auto& cv = in.cv;
  int n = in.n;
  IndexedTensor L = conharmonic(in.m, cv.riem04, cv.ric);
  IndexedTensor W = weyl(in.m, cv.riem04, cv.ric, cv.scalar);
  IndexedTensor q = derive(tensor_scale(tensor_sub(W, L), 1 / cv.scalar), t);
  IndexedTensor rhs = tensor_scale(tensor_sub(L, cv.riem04), Expr::rational(2, n - 1));
  return tensor_sub(q, rhs);
}

}  // namespace

Residual theorem_concircular_rate_residual(const TimeDependentMetric& tdm,
                                           const ZeroTestOptions& options) {
  RateInputs in = rate_inputs(tdm, options);
  return Residual{is_zero(concircular_rate(in, tdm.t), options), in.precondition};
}

Residual theorem_weyl_conharmonic_rate_residual(const TimeDependentMetric& tdm,
                                                const ZeroTestOptions& options) {
  RateInputs in = rate_inputs(tdm, options);
  return Residual{is_zero(weyl_conharmonic_rate(in, tdm.t), options), in.precondition};
}

ZeroVerdict theorem_rate_consistency(const TimeDependentMetric& tdm, const ZeroTestOptions& options) {
  RateInputs in = rate_inputs(tdm, options);
  IndexedTensor c = concircular_rate(in, tdm.t);
  IndexedTensor w = weyl_conharmonic_rate(in, tdm.t);
  return is_zero(tensor_add(w, tensor_scale(c, Expr::rational(in.n, in.n - 2))), options);
}

std::vector<Check> theorem_weyl_rate_extension(const ExtensionFlow& flow,
                                               const ZeroTestOptions& options) {
  const TimeDependentMetric& tdm = flow.family;
  MetricStructure m = at_symbolic_time(tdm);
  int N = m.chart.dim();
  int nb = N / 2;
  std::vector<Check> out;
  if (N < 3) {
    out.push_back(note_check("Weyl rate on the extension", Status::Skipped, "needs dimension >= 3"));
    return out;
  }
  Curvature cv = curvature(m, tdm.convention);
  const IndexedTensor& g = m.g;
  const IndexedTensor& ric = cv.ric;
  IndexedTensor W = weyl(m, cv.riem04, ric, cv.scalar);
  // The alternative form R - 1/(N-2)(g_ik R_jl - g_il R_jk - g_jk R_il + g_jl R_ik).
  IndexedTensor W4 = cv.riem04;
  Expr f = Expr::rational(1, N - 2);
  for (std::size_t off = 0; off < W4.size(); ++off) {
    Index x = W4.index_of(off);
    int i = x[0], j = x[1], k = x[2], l = x[3];
    Expr b = g({i, k}) * ric({j, l}) - g({i, l}) * ric({j, k}) - g({j, k}) * ric({i, l}) +
             g({j, l}) * ric({i, k});
    if (!b.is_zero()) W4.data()[off] -= f * b;
  }
  IndexedTensor dR = derive(cv.riem04, tdm.t);
  IndexedTensor dW = derive(W, tdm.t);
  IndexedTensor dW4 = derive(W4, tdm.t);
  IndexedTensor prod(m.chart, cv.riem04.variance());
  for (std::size_t off = 0; off < prod.size(); ++off) {
    Index x = prod.index_of(off);
    int i = x[0], j = x[1], k = x[2], l = x[3];
    prod.data()[off] = ric({i, l}) * ric({j, k}) - ric({i, k}) * ric({j, l});
  }
  Expr c4 = Expr::rational(4, N - 2);
  IndexedTensor display = tensor_add(tensor_sub(dW4, dR), tensor_scale(prod, c4));
  out.push_back(make_check("dW/dt = dR/dt - 4/(n-2)(R_il R_jk - R_ik R_jl), alternative Weyl form",
                           is_zero(display, options)));
  IndexedTensor corrected = tensor_sub(tensor_sub(dW, dR), tensor_scale(prod, c4));
  out.push_back(make_check("dW/dt = dR/dt + 4/(n-2)(R_il R_jk - R_ik R_jl), Weyl tensor",
                           is_zero(corrected, options)));
  IndexedTensor literal = tensor_add(tensor_sub(dW, dR), tensor_scale(prod, c4));
  ZeroVerdict lv = is_zero(literal, options);
  Check lc = make_check("dW/dt = dR/dt - 4/(n-2)(R_il R_jk - R_ik R_jl), Weyl tensor", lv,
                        lv.is_nonzero() ? "holds with the opposite sign of the Ricci product term" : "");
  if (lv.is_nonzero()) lc.status = Status::Erratum;
  out.push_back(lc);

  IndexedTensor starred_prod(m.chart, prod.variance());
  IndexedTensor starred_rate(m.chart, prod.variance());
  for (std::size_t off = 0; off < prod.size(); ++off) {
    Index x = prod.index_of(off);
    int stars = 0;
    for (int s : x) stars += s > nb ? 1 : 0;
    if (stars < 2) continue;
    starred_prod.data()[off] = prod.data()[off];
    starred_rate.data()[off] = dW.data()[off] - dR.data()[off];
  }
  out.push_back(make_check("Ricci product vanishes with two or more starred indices",
                           is_zero(starred_prod, options)));
  out.push_back(make_check("dW/dt = dR/dt with two or more starred indices",
                           is_zero(starred_rate, options)));
  return out;
}

}  // namespace riemext
