#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "manifold.hpp"
#include "riemext/flow.hpp"
#include "riemext/render.hpp"
#include "riemext/zoo.hpp"

namespace riemext::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public Error {
 public:
  using Error::Error;
};

const std::vector<std::string> kSuites = {"extension-identities", "lemma-laplacian", "thm-ricci-invariant",
                                          "thm-linear-flow",      "thm31",           "thm33",
                                          "thm45",                "evolution-eqs",   "relation-eq17"};

RicciConvention default_convention(const std::string& suite) {
  if (suite == "evolution-eqs" || suite == "thm31" || suite == "thm33") return RicciConvention::Standard;
  return RicciConvention::Paper;
}

ExtendedSpace extension_of(const ManifoldFile& f) { return extend(f.base(), f.c_or_zero(), f.omega); }

const Check& named(const std::vector<Check>& checks, const std::string& name) {
  for (const auto& c : checks)
    if (c.name.rfind(name, 0) == 0) return c;
  throw Error("internal: missing check '" + name + "'");
}

// Exact flow family on the file's metric: (1 - 2 lambda t) g when Einstein.
std::optional<TimeDependentMetric> einstein_family_of(const ManifoldFile& f, RicciConvention conv) {
  if (!f.metric) return std::nullopt;
  return einstein_family(invert_metric(*f.metric), conv, Symbol("t"));
}

std::vector<Check> rate_suite(const ManifoldFile& f, RicciConvention conv, bool weyl_form,
                              const ZeroTestOptions& opts) {
  const std::string name = weyl_form ? "d/dt[(W - L)/R] = 2/(n-1) (L - R)"
                                     : "d/dt[(C - R)/R] = 2(n-2)/(n(n-1)) (R - L)";
  if (!f.metric) return {note_check(name, Status::Skipped, "no base metric")};
  auto family = einstein_family_of(f, conv);
  if (!family)
    return {note_check(name, Status::Skipped, "no exact flow family: the metric is not Einstein")};
  try {
    if (!weyl_form) return {residual_check(name, theorem_concircular_rate_residual(*family, opts))};
    return {residual_check(name, theorem_weyl_conharmonic_rate_residual(*family, opts)),
            make_check("(W - L) rate residual = -n/(n-2) (C - R) rate residual",
                       theorem_rate_consistency(*family, opts))};
  } catch (const PreconditionError& e) {
    return {note_check(name, Status::Skipped, e.what())};
  }
}

std::vector<Check> evolution_suite(const ManifoldFile& f, RicciConvention conv, const ZeroTestOptions& opts) {
  std::optional<TimeDependentMetric> family = einstein_family_of(f, conv);
  std::string note = "family (1 - 2 lambda t) g";
  if (!family) {
    family = solve_extension_flow(extension_of(f), conv, opts).family;
    note = "family: flow of the modified Riemann extension";
  }
  std::vector<Check> out = {
      residual_check("Riemann evolution", riemann_evolution_residual(*family, opts)),
      residual_check("Ricci evolution", ricci_evolution_residual(*family, opts)),
      residual_check("scalar curvature evolution", scalar_evolution_residual(*family, opts))};
  for (auto& c : out)
    if (c.note.empty()) c.note = note;
  if (conv == RicciConvention::Paper)
    for (auto& c : out) c.note += "; these identities hold for the standard contraction";
  return out;
}

std::vector<Check> relation_suite(const ManifoldFile& f, RicciConvention conv, const ZeroTestOptions& opts) {
  const std::string rel = "(W - L) = -n/(n-2)(C - R)";
  auto check = [&](const MetricStructure& m) {
    Curvature cv = curvature(m, conv);
    return check_linear_relation(concircular(m, cv.riem04, cv.scalar), conharmonic(m, cv.riem04, cv.ric),
                                 weyl(m, cv.riem04, cv.ric, cv.scalar), cv.riem04, opts);
  };
  std::vector<Check> out;
  if (!f.metric)
    out.push_back(note_check("base: " + rel, Status::Skipped, "no base metric"));
  else if (f.dim() < 3)
    out.push_back(note_check("base: " + rel, Status::Skipped, "needs dimension >= 3"));
  else
    out.push_back(make_check("base: " + rel, check(invert_metric(*f.metric))));
  ExtendedSpace ext = extension_of(f);
  if (2 * f.dim() < 3)
    out.push_back(note_check("extension: " + rel, Status::Skipped, "needs dimension >= 3"));
  else
    out.push_back(make_check("extension: " + rel, check(ext.metric)));
  return out;
}

std::vector<Check> run_suite(const std::string& suite, const ManifoldFile& f, RicciConvention conv,
                             const ZeroTestOptions& opts) {
  if (suite == "extension-identities") return verify_extension_identities(extension_of(f), conv, opts);
  if (suite == "lemma-laplacian")
    return {make_check("Laplacian of Ric = 0", ricci_laplacian(extension_of(f), conv, opts))};
  if (suite == "thm-ricci-invariant") {
    auto flow = solve_extension_flow(extension_of(f), conv, opts);
    return {named(flow.checks, "Ric(g(t)) = Ric(g(0))")};
  }
  if (suite == "thm-linear-flow") {
    auto flow = solve_extension_flow(extension_of(f), conv, opts);
    std::vector<Check> out;
    for (const auto& c : flow.checks)
      if (c.name != "Ric(g(t)) = Ric(g(0))" && c.name != "Laplacian of Ric = 0") out.push_back(c);
    return out;
  }
  if (suite == "thm31") return rate_suite(f, conv, false, opts);
  if (suite == "thm33") return rate_suite(f, conv, true, opts);
  if (suite == "thm45")
    return theorem_weyl_rate_extension(solve_extension_flow(extension_of(f), conv, opts), opts);
  if (suite == "evolution-eqs") return evolution_suite(f, conv, opts);
  if (suite == "relation-eq17") return relation_suite(f, conv, opts);
  throw UsageError("unknown suite '" + suite + "'");
}

std::string latex_escape(const std::string& s) {
  std::string o;
  for (char ch : s) {
    if (ch == '_' || ch == '&' || ch == '%' || ch == '#' || ch == '$' || ch == '{' || ch == '}') o += '\\';
    if (ch == '^') {
      o += "\\^{}";
      continue;
    }
    o += ch;
  }
  return o;
}

std::string render_report(const Report& r, Format format, const std::string& convention_label) {
  if (format == Format::Json) {
    json j = to_json(r);
    j["convention"] = convention_label;
    return j.dump(2) + "\n";
  }
  if (format == Format::Text) {
    std::string text = render_text(r);
    std::string header = "(convention " + to_string(r.convention) + ")";
    std::size_t at = text.find(header);
    if (at != std::string::npos) text.replace(at, header.size(), "(convention " + convention_label + ")");
    return text;
  }
  std::ostringstream o;
  o << "\\begin{tabular}{ll}\n";
  for (const auto& c : r.checks)
    o << "  \\texttt{" << to_string(c.status) << "} & " << latex_escape(c.name) << " \\\\\n";
  o << "\\end{tabular}\n";
  return o.str();
}

std::string render_tensor(const std::string& name, const IndexedTensor& t, RicciConvention conv, Format f) {
  if (f == Format::Json) {
    json j;
    j["tensor"] = name;
    j["convention"] = to_string(conv);
    json body = to_json(t);
    for (auto& [k, v] : body.items()) j[k] = v;
    return j.dump(2) + "\n";
  }
  std::ostringstream o;
  bool any = false;
  for (std::size_t off = 0; off < t.size(); ++off) {
    const Expr& e = t.data()[off];
    if (e.is_zero()) continue;
    any = true;
    o << index_label(t.index_of(off)) << (f == Format::Latex ? " & " : " = ") << render(e, f)
      << (f == Format::Latex ? " \\\\" : "") << "\n";
  }
  if (!any) o << "0\n";
  return o.str();
}

IndexedTensor named_tensor(const std::string& name, const MetricStructure& m, RicciConvention conv) {
  if (name == "metric") return m.g;
  if (name == "inverse") return m.g_inv;
  if (name == "determinant") return IndexedTensor::scalar(m.chart, m.det);
  Curvature cv = curvature(m, conv);
  if (name == "christoffel") return cv.connection.gamma;
  if (name == "riemann") return cv.riem13;
  if (name == "riemann-lowered") return cv.riem04;
  if (name == "ricci") return cv.ric;
  if (name == "scalar") return IndexedTensor::scalar(m.chart, cv.scalar);
  if (name == "b") return b_tensor(m, cv.riem04);
  if (name == "concircular") return concircular(m, cv.riem04, cv.scalar);
  if (name == "conharmonic") return conharmonic(m, cv.riem04, cv.ric);
  if (name == "weyl") return weyl(m, cv.riem04, cv.ric, cv.scalar);
  throw UsageError("unknown tensor '" + name + "'");
}

const std::vector<std::string> kTensors = {"metric", "inverse",         "determinant", "christoffel",
                                           "riemann", "riemann-lowered", "ricci",       "scalar",
                                           "b",       "concircular",     "conharmonic", "weyl"};

// Connection-only bases have no metric; only their connection tensors exist.
IndexedTensor connection_tensor(const std::string& name, const Connection& c, RicciConvention conv) {
  if (name == "christoffel") return c.gamma;
  IndexedTensor r = riemann(c);
  if (name == "riemann") return r;
  if (name == "ricci") return ricci(r, conv);
  throw UsageError("tensor '" + name + "' needs a metric");
}

std::vector<Symbol> parse_names(const std::string& text) {
  std::vector<Symbol> out;
  std::string word;
  std::istringstream in(text);
  while (std::getline(in, word, ',')) {
    std::istringstream parts(word);
    std::string w;
    while (parts >> w) {
      if (!is_identifier(w)) throw UsageError("bad omega name '" + w + "'");
      out.emplace_back(w);
    }
  }
  return out;
}

ZeroTestOptions zero_options(int trials, double threshold, std::optional<std::uint64_t> seed) {
  ZeroTestOptions o;
  o.trials = trials;
  o.threshold = threshold;
  if (seed) {
    o.seed = *seed;
  } else if (const char* env = std::getenv("RIEMEXT_SEED")) {
    char* end = nullptr;
    o.seed = std::strtoull(env, &end, 10);
    if (*env == '\0' || *end != '\0') throw UsageError("RIEMEXT_SEED must be a non-negative integer");
  }
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic curvature and Ricci-flow verification on modified Riemann extensions", "riemext"};
  app.require_subcommand(1);

  std::string file, convention, format = "json";
  std::string tensor, family, suite, c_file, omega_names, out_path;
  bool extended = false;
  int trials = 8;
  double threshold = 1e-9;
  std::optional<std::uint64_t> seed;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", file, "Manifold file")->required();
    sub->add_option("--convention", convention, "Ricci contraction: standard or paper")
        ->check(CLI::IsMember({"standard", "paper"}));
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "latex", "json"}));
    sub->add_option("--seed", seed, "Zero-test seed (default RIEMEXT_SEED, else 0)");
    sub->add_option("--trials", trials, "Zero-test sample points")->check(CLI::PositiveNumber);
    sub->add_option("--threshold", threshold, "Zero-test tolerance")->check(CLI::PositiveNumber);
  };

  CLI::App* curv = app.add_subcommand("curvature", "Print a tensor computed from the file");
  common(curv);
  curv->add_option("--tensor", tensor, "Tensor name")->required()->check(CLI::IsMember(kTensors));
  curv->add_flag("--extended", extended, "Compute on the modified Riemann extension");

  CLI::App* ext = app.add_subcommand("extend", "Write the modified Riemann extension as a manifold file");
  ext->add_option("file", file, "Manifold file")->required();
  ext->add_option("--c", c_file, "File with a c { ... } block");
  ext->add_option("--omega", omega_names, "Fiber coordinate names, comma separated");
  ext->add_option("--out", out_path, "Output path (default stdout)");

  CLI::App* flow = app.add_subcommand("flow", "Build and verify a Ricci-flow family");
  common(flow);
  flow->add_option("--family", family, "extension or constant-curvature")
      ->required()
      ->check(CLI::IsMember({"extension", "constant-curvature"}));

  CLI::App* ver = app.add_subcommand("verify", "Run a verification suite");
  common(ver);
  std::vector<std::string> suite_names = kSuites;
  suite_names.push_back("all");
  ver->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "riemext: " << e.what() << "\n";
    return 2;
  }

  try {
    ZeroTestOptions opts = zero_options(trials, threshold, seed);
    Format fmt = parse_format(format);
    ManifoldFile mf = load_manifold(file);
    std::optional<RicciConvention> conv_override;
    if (!convention.empty()) conv_override = parse_convention(convention);

    if (curv->parsed()) {
      RicciConvention conv = conv_override.value_or(RicciConvention::Standard);
      IndexedTensor t = [&] {
        if (extended) return named_tensor(tensor, extension_of(mf).metric, conv);
        if (mf.metric) return named_tensor(tensor, invert_metric(*mf.metric), conv);
        return connection_tensor(tensor, make_connection(*mf.connection), conv);
      }();
      out << render_tensor(tensor, t, conv, fmt);
      return 0;
    }

    if (ext->parsed()) {
      if (!c_file.empty()) mf.c = load_c_file(c_file, mf);
      if (!omega_names.empty()) mf.omega = parse_names(omega_names);
      ExtendedSpace e = extension_of(mf);
      std::string text = write_manifold(mf.name + "_ext", mf.params, e.metric.g);
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream o(out_path, std::ios::binary);
        if (!(o << text)) throw Error("cannot write '" + out_path + "'");
      }
      return 0;
    }

    if (flow->parsed()) {
      RicciConvention conv = conv_override.value_or(RicciConvention::Paper);
      Report r{"flow-" + family, conv, {}};
      std::optional<json> exponent;
      IndexedTensor family_g;
      if (family == "extension") {
        ExtensionFlow f = solve_extension_flow(extension_of(mf), conv, opts);
        r.checks = f.checks;
        family_g = f.family.g;
      } else {
        if (!mf.metric) throw UsageError("the constant-curvature family needs a metric");
        ConstantCurvatureFamily f = constant_curvature_solution(invert_metric(*mf.metric), conv, opts);
        r.checks = f.checks;
        family_g = f.family.g;
        exponent = f.riemann_exponent ? json(*f.riemann_exponent) : json(nullptr);
      }
      if (fmt == Format::Json) {
        json j = to_json(r);
        json o;
        for (auto& [k, v] : j.items())
          if (k != "checks") o[k] = v;
        o["family"] = to_json(family_g);
        if (exponent) o["riemann_exponent"] = *exponent;
        o["checks"] = j["checks"];
        out << o.dump(2) << "\n";
      } else {
        out << "g(t):\n" << render_tensor("g(t)", family_g, conv, fmt);
        if (exponent && !exponent->is_null())
          out << "R_ijkl(t) = exp(" << exponent->get<int>() << "t) R_ijkl(0)\n";
        out << render_report(r, fmt, to_string(conv));
      }
      return r.passed() ? 0 : 1;
    }

    // verify
    Report r{suite, conv_override.value_or(default_convention(suite)), {}};
    std::string label = to_string(r.convention);
    if (suite == "all") {
      label = conv_override ? to_string(*conv_override) : "per-suite";
      for (const auto& s : kSuites) {
        RicciConvention conv = conv_override.value_or(default_convention(s));
        for (Check c : run_suite(s, mf, conv, opts)) {
          c.name = s + " (" + to_string(conv) + "): " + c.name;
          r.add(std::move(c));
        }
      }
    } else {
      r.checks = run_suite(suite, mf, r.convention, opts);
    }
    out << render_report(r, fmt, label);
    return r.passed() ? 0 : 1;
  } catch (const ParseError& e) {
    err << "riemext: " << file << ":" << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "riemext: " << file << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace riemext::cli
