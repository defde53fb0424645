#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "riemext/extension.hpp"
#include "riemext/report.hpp"

namespace riemext {

/// Metric whose components may contain the time symbol t.
struct TimeDependentMetric {
  Chart chart;
  Symbol t;
  IndexedTensor g;
  RicciConvention convention = RicciConvention::Standard;
};

/// Throws ShapeError if t is a chart coordinate or g is not a (0,2) tensor on
/// the chart, SymmetryError if g is not symmetric, SingularMetric if det g
/// vanishes identically.
TimeDependentMetric make_time_dependent(IndexedTensor g, Symbol t, RicciConvention conv);

/// Metric structure of g at symbolic t.
MetricStructure at_symbolic_time(const TimeDependentMetric& tdm);

/// -2 Ric.
IndexedTensor flow_rhs(const MetricStructure& m, RicciConvention conv);

/// Verdict on d_t g + 2 Ric(g(t)) = 0.
ZeroVerdict is_flow_solution(const TimeDependentMetric& tdm, const ZeroTestOptions& options = {});

/// B_ijkl = g^pr g^qs R_piqj R_rksl.
IndexedTensor b_tensor(const MetricStructure& m, const IndexedTensor& riem04);

/// A residual together with the verdict on the precondition it presupposes.
struct Residual {
  ZeroVerdict residual;
  ZeroVerdict precondition;

  bool precondition_holds() const { return precondition.is_zero(); }
};

/// Report entry for a Residual: the residual's status when the precondition
/// holds, Status::Precondition otherwise.
Check residual_check(std::string name, const Residual& r);

// Evolution of curvature along a flow solution, always with the standard
// Ricci contraction (the precondition is is_flow_solution under it). The
// left side is the literal t-derivative of the tensor computed from g(t).

/// d_t R_ijkl = Delta R_ijkl + 2(B_ijkl - B_ijlk - B_iljk + B_ikjl)
///   - g^pq (R_pjkl R_qi + R_ipkl R_qj + R_ijpl R_qk + R_ijkp R_ql)
Residual riemann_evolution_residual(const TimeDependentMetric& tdm, const ZeroTestOptions& options = {});
/// d_t R_ij = Delta R_ij + 2 g^pr g^qs R_piqj R_rs - 2 g^pq R_pi R_qj
Residual ricci_evolution_residual(const TimeDependentMetric& tdm, const ZeroTestOptions& options = {});
/// d_t R = Delta R + 2 g^ij g^kl R_ik R_jl
Residual scalar_evolution_residual(const TimeDependentMetric& tdm, const ZeroTestOptions& options = {});

/// If Ric(g, conv) = lambda g with constant lambda, the exact solution
/// (1 - 2 lambda t) g.
std::optional<TimeDependentMetric> einstein_family(const MetricStructure& m, RicciConvention conv,
                                                   Symbol t);

enum class Model { Sphere, Hyperbolic };

Model parse_model(std::string_view name);
std::string to_string(Model m);

/// Constant curvature K = 1/(n-1) (sphere, stereographic coordinates
/// x1..xn) or K = -1/(n-1) (hyperbolic, upper half space in x1..xn).
MetricStructure constant_curvature_model(Model model, int n);

struct ConstantCurvatureFamily {
  TimeDependentMetric family;
  MetricStructure initial;
  /// k such that R_ijkl(t) = exp(k t) R_ijkl(0), if the engine finds one.
  std::optional<int> riemann_exponent;
  std::vector<Check> checks;
};

/// Paper convention: K must be 1/(1-n), so the model must be hyperbolic. The
/// family is exp(-2t) g0 and the checks record whether it solves the flow,
/// how R_ijkl(t) scales against exp(-4t), and that (1-2t) g0 is the exact
/// solution. Standard convention: the exact solution (1 - 2 lambda t) g0.
ConstantCurvatureFamily constant_curvature_solution(Model model, int n, RicciConvention conv,
                                                    const ZeroTestOptions& options = {});

/// Same for any g0 with Ric(g0) = lambda g0, lambda a constant; throws
/// PreconditionError otherwise (and, in paper mode, unless lambda = 1).
ConstantCurvatureFamily constant_curvature_solution(const MetricStructure& g0, RicciConvention conv,
                                                    const ZeroTestOptions& options = {});

/// Flow of a modified Riemann extension: g(t) = gbar(0) - 2t Ric(gbar(0)).
struct ExtensionFlow {
  TimeDependentMetric family;
  ExtendedSpace initial;
  IndexedTensor ricci0;
  std::vector<Check> checks;
};

/// Builds the family and verifies it: Ricci invariance, flow equation,
/// linearity in t, that every g(t) is again an extension with
/// c(t) = c(0) - 2t(R_ij + R_ji), the Laplacian of Ricci, scalar flatness,
/// and whether the claimed form g(0) + t Ric also solves the flow (an
/// "erratum" entry when it does not).
ExtensionFlow solve_extension_flow(const ExtendedSpace& ext, RicciConvention conv,
                                   const ZeroTestOptions& options = {});

/// Delta Ric = 0 for the extension metric at t = 0.
ZeroVerdict ricci_laplacian(const ExtendedSpace& ext, RicciConvention conv,
                            const ZeroTestOptions& options = {});

/// d_t[(C - R)/R_s] - 2(n-2)/(n(n-1)) (R - L) = 0. Throws PreconditionError if
/// the scalar curvature of g(t) is canonically zero or n < 3; the
/// precondition verdict is is_flow_solution.
Residual theorem_concircular_rate_residual(const TimeDependentMetric& tdm,
                                           const ZeroTestOptions& options = {});

/// d_t[(W - L)/R_s] - 2/(n-1) (L - R) = 0, same preconditions.
Residual theorem_weyl_conharmonic_rate_residual(const TimeDependentMetric& tdm,
                                                const ZeroTestOptions& options = {});

/// Residual of the Weyl-conharmonic rate plus n/(n-2) times the concircular
/// rate residual; zero for any family by the linear relation between C, L, W.
ZeroVerdict theorem_rate_consistency(const TimeDependentMetric& tdm, const ZeroTestOptions& options = {});

/// Rate of the Weyl tensor along an extension flow (dimension N = 2n):
///  - d_t W = d_t R - 4/(N-2)(R_il R_jk - R_ik R_jl) with W in the form
///    R - 1/(N-2)(g_ik R_jl - g_il R_jk - g_jk R_il + g_jl R_ik);
///  - d_t W = d_t R + 4/(N-2)(R_il R_jk - R_ik R_jl) with W from weyl();
///  - whether the first form also holds with W from weyl() (an erratum
///    entry when it does not);
///  - on components with two or more starred indices the Ricci product
///    vanishes and d_t W = d_t R.
std::vector<Check> theorem_weyl_rate_extension(const ExtensionFlow& flow,
                                               const ZeroTestOptions& options = {});

}  // namespace riemext
