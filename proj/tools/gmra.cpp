// Command-line front end. Each command parses its inputs, calls one library
// routine, and renders the result as text or JSON.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gmra/cascade.hpp"
#include "gmra/catalog.hpp"
#include "gmra/equivalence.hpp"
#include "gmra/error.hpp"
#include "gmra/gmra.hpp"
#include "gmra/json_io.hpp"
#include "gmra/ruelle.hpp"

namespace {

using gmra::io::Json;

enum Exit { kOk = 0, kFailed = 2, kUnknown = 3, kInputError = 4 };

struct Globals {
  bool json = false;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::string convention = "unit";
};

struct Context {
  const Globals& globals;

  gmra::Convention convention() const {
    return globals.convention == "centered" ? gmra::Convention::Centered : gmra::Convention::Unit;
  }

  double tolerance(const gmra::io::Problem* p = nullptr) const {
    if (globals.tol) return *globals.tol;
    if (p && p->options.tolerance) return *p->options.tolerance;
    if (const char* env = std::getenv("GMRA_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end != env && *end == '\0' && v > 0) return v;
      throw gmra::Error(gmra::ErrorCode::ParseError, "GMRA_TOL: not a positive number");
    }
    return gmra::kDefaultTolerance;
  }

  std::uint64_t seed(const gmra::io::Problem& p) const {
    return globals.seed != 0 ? globals.seed : p.options.seed.value_or(0);
  }

  std::string set(const gmra::TorusSet& s) const { return s.is_empty() ? "{}" : s.to_string(convention()); }

  int emit(const Json& doc, const std::string& text, int code) const {
    if (globals.json) {
      std::cout << gmra::io::dump(doc);
    } else {
      std::cout << text;
    }
    return code;
  }
};

std::string report_text(const std::string& name, const gmra::VerificationReport& r) {
  std::ostringstream os;
  os << name << ": " << (r.passed ? "pass" : "FAIL") << " (max residual " << r.max_residual << ")\n";
  for (const auto& [k, v] : r.residuals) os << "  " << k << " " << v << "\n";
  for (const auto& o : r.offending) os << "  offending: " << o << "\n";
  return os.str();
}

std::string multiplicity_text(const gmra::MultiplicityFunction& m, const Context& ctx) {
  std::ostringstream os;
  const auto pieces = m.pieces();
  if (pieces.empty()) os << "  0 everywhere\n";
  for (const auto& p : pieces) os << "  " << p.value << " on " << ctx.set(p.set) << "\n";
  return os.str();
}

Json sets_json(const std::vector<gmra::TorusSet>& sets, const Context& ctx) {
  Json out = Json::array();
  for (const auto& s : sets) out.push_back(gmra::io::to_json(s, ctx.convention()));
  return out;
}

// ------------------------------------------------------------ commands

int cmd_validate(const Context& ctx, const std::string& input) {
  const auto p = gmra::io::load_problem(input);
  const double tol = ctx.tolerance(&p);
  const auto consistency = gmra::check_consistency(p.multiplicity, p.endomorphism);
  bool ok = consistency.holds;
  Json doc{{"source", p.source},
           {"consistency", Json{{"holds", consistency.holds},
                                {"violation", gmra::io::to_json(consistency.violation, ctx.convention())}}}};
  std::string text = "consistency: " + std::string(consistency.holds ? "holds" : "VIOLATED on " + ctx.set(consistency.violation)) + "\n";
  if (p.h) {
    const auto r = gmra::verify_filter(*p.h, tol);
    ok = ok && r.passed;
    doc["H"] = gmra::io::to_json(r);
    text += report_text("H", r);
  }
  if (p.g && consistency.holds) {
    const auto r = gmra::verify_complementary(*p.g, p.low_pass(), tol);
    ok = ok && r.passed;
    doc["G"] = gmra::io::to_json(r);
    text += report_text("G", r);
  }
  doc["valid"] = ok;
  return ctx.emit(doc, text, ok ? kOk : kFailed);
}

int cmd_mtilde(const Context& ctx, const std::string& input) {
  const auto p = gmra::io::load_problem(input);
  const auto mt = gmra::compute_mtilde(p.multiplicity, p.endomorphism);
  return ctx.emit(Json{{"mtilde", gmra::io::to_json(mt, ctx.convention())}},
                  "complementary multiplicity:\n" + multiplicity_text(mt, ctx), kOk);
}

int cmd_sigma(const Context& ctx, const std::string& input) {
  const auto p = gmra::io::load_problem(input);
  const auto sigma = gmra::sigma_sets(p.multiplicity);
  const auto sigma_tilde = gmra::sigma_tilde_sets(p.multiplicity, p.endomorphism);
  const auto strict = gmra::strict_set(p.multiplicity, p.endomorphism);
  std::ostringstream os;
  for (std::size_t i = 0; i < sigma.size(); ++i) os << "sigma_" << i + 1 << " = " << ctx.set(sigma[i]) << "\n";
  for (std::size_t k = 0; k < sigma_tilde.size(); ++k) os << "sigma~_" << k + 1 << " = " << ctx.set(sigma_tilde[k]) << "\n";
  os << "strict set = " << ctx.set(strict) << "\n";
  Json doc{{"sigma", sets_json(sigma, ctx)},
           {"sigma_tilde", sets_json(sigma_tilde, ctx)},
           {"strict", gmra::io::to_json(strict, ctx.convention())}};
  return ctx.emit(doc, os.str(), kOk);
}

int cmd_check_filter(const Context& ctx, const std::string& input, int trials) {
  const auto p = gmra::io::load_problem(input);
  const double tol = ctx.tolerance(&p);
  const auto& h = p.low_pass();
  const auto rh = gmra::verify_filter(h, tol);
  bool ok = rh.passed;
  Json doc{{"H", gmra::io::to_json(rh)}};
  std::string text = report_text("H", rh);
  if (p.g) {
    const auto rg = gmra::verify_complementary(*p.g, h, tol);
    ok = ok && rg.passed;
    doc["G"] = gmra::io::to_json(rg);
    text += report_text("G", rg);
    if (rh.passed && rg.passed) {
      const auto rc = gmra::cuntz_check(h, *p.g, trials, ctx.seed(p), tol);
      ok = ok && rc.passed;
      doc["cuntz"] = gmra::io::to_json(rc);
      text += report_text("Cuntz relations", rc);
    }
  }
  doc["passed"] = ok;
  return ctx.emit(doc, text, ok ? kOk : kFailed);
}

int cmd_complement(const Context& ctx, const std::string& input, std::optional<std::size_t> grid) {
  const auto p = gmra::io::load_problem(input);
  const double tol = ctx.tolerance(&p);
  const std::size_t m = grid.value_or(p.options.grid.value_or(256));
  const auto c = gmra::complement_numeric(p.low_pass(), m, tol);
  std::ostringstream os;
  os << "sampled high-pass filter: " << c.g.rows << " x " << c.g.cols << " on " << c.g.grid_size() << " points\n"
     << report_text("verification", c.report);
  Json doc{{"G", gmra::io::to_json(c.g)}, {"report", gmra::io::to_json(c.report)}};
  return ctx.emit(doc, os.str(), c.report.passed ? kOk : kFailed);
}

int cmd_purity(const Context& ctx, const std::string& input) {
  const auto p = gmra::io::load_problem(input);
  const auto v = gmra::purity_test(p.low_pass(), ctx.tolerance(&p));
  const std::string kind(gmra::to_string(v.kind));
  Json doc{{"verdict", kind}, {"reason", v.reason}};
  std::ostringstream os;
  os << "purity: " << kind << "\n  " << v.reason << "\n";
  if (v.kind == gmra::PurityKind::Pure) {
    doc["certificate"] = gmra::io::to_json(v.certificate, ctx.convention());
    doc["certificate_measure"] = v.certificate.measure().to_string();
    os << "  certificate " << ctx.set(v.certificate) << " (measure " << v.certificate.measure().to_string() << ")\n";
  }
  if (v.kind == gmra::PurityKind::NotPure) {
    doc["lambda"] = gmra::io::to_json(v.lambda);
    Json vec = Json::array();
    for (const auto& f : v.eigenvector) vec.push_back(gmra::io::to_json(f, ctx.convention()));
    doc["eigenvector"] = vec;
    os << "  eigenvalue " << v.lambda.real() << (v.lambda.imag() < 0 ? " - " : " + ") << std::abs(v.lambda.imag())
       << "i\n";
  }
  return ctx.emit(doc, os.str(), v.kind == gmra::PurityKind::Unknown ? kUnknown : kOk);
}

int cmd_equiv(const Context& ctx, const std::string& a, const std::string& b, std::optional<int> degree) {
  const auto pa = gmra::io::load_problem(a);
  const auto pb = gmra::io::load_problem(b);
  gmra::EquivalenceOptions opt;
  opt.tol = ctx.tolerance(&pa);
  opt.max_degree = degree.value_or(pa.options.degree.value_or(opt.max_degree));
  if (pa.options.grid) opt.grid = *pa.options.grid;
  const auto v = gmra::decide(pa.low_pass(), pb.low_pass(), opt);
  const std::string kind(gmra::to_string(v.kind));
  Json doc{{"verdict", kind}, {"detail", v.detail}};
  std::ostringstream os;
  os << "verdict: " << kind << "\n";
  if (!v.detail.empty()) os << "  " << v.detail << "\n";
  if (v.obstruction) {
    const auto& o = *v.obstruction;
    Json oj{{"kind", std::string(gmra::to_string(o.kind))}, {"detail", o.detail}};
    os << "  obstruction " << gmra::to_string(o.kind);
    if (o.kind == gmra::ObstructionKind::ConstantRatio) {
      oj["ratio"] = gmra::io::to_json(o.ratio);
      os << "(" << o.ratio.real() << (o.ratio.imag() < 0 ? " - " : " + ") << std::abs(o.ratio.imag()) << "i)";
    }
    if (o.kind == gmra::ObstructionKind::NoSolutionUpToDegree) {
      oj["degree"] = o.degree;
      os << "(" << o.degree << ")";
    }
    if (!o.where.is_empty()) {
      oj["where"] = gmra::io::to_json(o.where, ctx.convention());
      os << " on " << ctx.set(o.where);
    }
    os << "\n";
    doc["obstruction"] = oj;
  }
  if (v.witness) {
    doc["witness"] = gmra::io::to_json(*v.witness, ctx.convention());
    doc["witness_residual"] = v.witness_residual;
    os << "  witness residual " << v.witness_residual << "\n";
  }
  const int code = v.kind == gmra::EquivalenceKind::Equivalent ? kOk
                   : v.kind == gmra::EquivalenceKind::Inequivalent ? kFailed
                                                                   : kUnknown;
  return ctx.emit(doc, os.str(), code);
}

int cmd_construct(const Context& ctx, const std::string& input, int down, std::optional<int> depth_flag) {
  const auto p = gmra::io::load_problem(input);
  if (!p.g) throw gmra::Error(gmra::ErrorCode::ParseError, "filters.G: required field missing");
  const int depth = depth_flag.value_or(p.options.depth.value_or(1));
  const auto g = gmra::build(p.low_pass(), *p.g, depth, ctx.tolerance(&p));

  std::ostringstream os;
  os << "ledger: " << gmra::ledger_shape(g) << "\n";
  Json v0 = Json::array();
  std::map<int, Json> levels;
  for (const auto& s : g.ledger()) {
    if (s.kind == gmra::SlotKind::Scaling) {
      v0.push_back(gmra::io::to_json(s.base, ctx.convention()));
      continue;
    }
    auto& lvl = levels[s.level];
    if (lvl.is_null()) lvl = Json{{"n", s.level}, {"weight", s.weight}, {"components", Json::array()}};
    lvl["components"].push_back(gmra::io::to_json(s.base, ctx.convention()));
  }
  Json w = Json::array();
  for (auto& [n, lvl] : levels) w.push_back(std::move(lvl));
  Json doc{{"V0", v0}, {"W", w}};

  Json negative = Json::array();
  if (down > 0) {
    for (const auto& lvl : gmra::negative_supports(g, down)) {
      negative.push_back(Json{{"j", lvl.j}, {"V", sets_json(lvl.scaling, ctx)}, {"W", sets_json(lvl.wavelet, ctx)}});
      os << "V_-" << lvl.j << ":";
      for (const auto& s : lvl.scaling) os << " [" << ctx.set(s) << "]";
      os << "\nW_-" << lvl.j << ":";
      for (const auto& s : lvl.wavelet) os << " [" << ctx.set(s) << "]";
      os << "\n";
    }
  }
  doc["negative"] = negative;
  return ctx.emit(doc, os.str(), kOk);
}

int cmd_cascade(const Context& ctx, const std::string& input, int iters, std::size_t samples, const std::string& csv) {
  const auto p = gmra::io::load_problem(input);
  gmra::CascadeOptions opt;
  opt.iterations = iters;
  opt.samples = samples;
  opt.tol = ctx.tolerance(&p);
  const auto r = gmra::cascade_diagnostic(p.low_pass(), opt);
  if (!csv.empty()) {
    std::ofstream out(csv);
    if (!out) throw gmra::Error(gmra::ErrorCode::ParseError, csv + ": cannot write");
    out << "omega,re,im\n";
    out.precision(17);
    for (std::size_t s = 0; s < r.omega.size(); ++s) {
      out << r.omega[s] << ',' << r.values[s].real() << ',' << r.values[s].imag() << '\n';
    }
  }
  double peak = 0.0;
  for (const auto& z : r.values) peak = std::max(peak, std::abs(z));
  const std::string verdict(gmra::to_string(r.verdict));
  Json doc{{"verdict", verdict},
           {"iterations", iters},
           {"samples", samples},
           {"peak", peak},
           {"last_increment", r.increments.empty() ? 0.0 : r.increments.back()},
           {"increments", r.increments}};
  std::ostringstream os;
  os << "cascade after " << iters << " steps: " << verdict << "\n  peak |P_J| " << peak << "\n";
  if (!r.increments.empty()) os << "  last increment " << r.increments.back() << "\n";
  return ctx.emit(doc, os.str(), kOk);
}

int cmd_catalog_list(const Context& ctx) {
  Json doc = Json::array();
  std::ostringstream os;
  for (const auto& name : gmra::catalog_list()) {
    const auto& e = gmra::catalog_get(name);
    doc.push_back(Json{{"name", name}, {"summary", e.summary}});
    os << name << "  " << e.summary << "\n";
  }
  return ctx.emit(Json{{"entries", doc}}, os.str(), kOk);
}

int cmd_catalog_show(const Context& ctx, const std::string& name, bool check) {
  const auto& e = gmra::catalog_get(name);
  Json doc = gmra::io::problem_to_json(gmra::io::from_catalog(e), ctx.convention());
  std::ostringstream os;
  os << e.name << ": " << e.summary << "\nN = " << e.endomorphism().n() << "\nmultiplicity:\n"
     << multiplicity_text(e.multiplicity(), ctx) << "expectations:\n";
  Json ex = Json::array();
  for (const auto& x : e.expectations) {
    ex.push_back(Json{{"property", x.property},
                      {"expected", x.expected},
                      {"provenance", std::string(gmra::to_string(x.provenance))},
                      {"note", x.note}});
    os << "  " << x.property << " = " << x.expected << "  [" << gmra::to_string(x.provenance) << "] " << x.note
       << "\n";
  }
  doc["expectations"] = ex;
  int code = kOk;
  if (check) {
    const auto r = gmra::run_expectations(name, ctx.tolerance());
    doc["check"] = gmra::io::to_json(r);
    os << report_text("check", r);
    code = r.passed ? kOk : kFailed;
  }
  return ctx.emit(doc, os.str(), code);
}

int exit_code_for(gmra::ErrorCode c) {
  switch (c) {
    case gmra::ErrorCode::ParseError:
    case gmra::ErrorCode::UnknownName:
    case gmra::ErrorCode::ContextMismatch:
    case gmra::ErrorCode::NotApplicable:
    case gmra::ErrorCode::UnsupportedRepresentation:
    case gmra::ErrorCode::Overflow:
      return kInputError;
    default:
      return kFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized multiresolution analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Print a JSON report");
  app.add_option("--tol", g.tol, "Tolerance (default: GMRA_TOL or 1e-9)")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_option("--convention", g.convention, "Interval display convention")
      ->check(CLI::IsMember({"centered", "unit"}));

  std::string input, input_b, name, csv;
  int trials = 20, down = 0, iters = 30;
  std::optional<int> depth, degree;
  std::optional<std::size_t> grid;
  std::size_t samples = 1024;
  bool check = false;

  auto* validate = app.add_subcommand("validate", "Check a problem file: consistency and filter equations");
  validate->add_option("input", input, "Problem file or catalog:NAME")->required();
  auto* mtilde = app.add_subcommand("mtilde", "Complementary multiplicity");
  mtilde->add_option("input", input)->required();
  auto* sigma = app.add_subcommand("sigma", "Superlevel sets of m and of the complementary multiplicity");
  sigma->add_option("input", input)->required();
  auto* check_filter = app.add_subcommand("check-filter", "Filter equations and Cuntz relations");
  check_filter->add_option("input", input)->required();
  check_filter->add_option("--trials", trials, "Random vectors for the Cuntz check")->check(CLI::NonNegativeNumber);
  auto* complement = app.add_subcommand("complement", "Numerical high-pass completion");
  complement->add_option("input", input)->required();
  complement->add_option("--grid", grid, "Quotient grid size")->check(CLI::PositiveNumber);
  auto* purity = app.add_subcommand("purity", "Pure-isometry test for the low-pass filter");
  purity->add_option("input", input)->required();
  auto* equiv = app.add_subcommand("equiv", "Decide equivalence of two low-pass filters");
  equiv->add_option("a", input)->required();
  equiv->add_option("b", input_b)->required();
  equiv->add_option("--degree", degree, "Maximal multiplier degree")->check(CLI::NonNegativeNumber);
  auto* construct = app.add_subcommand("construct", "Canonical ledger and negative dilates");
  construct->add_option("input", input)->required();
  construct->add_option("--down", down, "Negative levels to report")->check(CLI::NonNegativeNumber);
  construct->add_option("--depth", depth, "Wavelet levels in the ledger")->check(CLI::NonNegativeNumber);
  auto* cascade = app.add_subcommand("cascade", "Partial products of the refinement equation");
  cascade->add_option("input", input)->required();
  cascade->add_option("--iters", iters)->check(CLI::PositiveNumber);
  cascade->add_option("--samples", samples)->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  cascade->add_option("--csv", csv, "Write omega,re,im samples to this file");
  auto* catalog = app.add_subcommand("catalog", "Built-in examples");
  catalog->require_subcommand(1);
  catalog->fallthrough();
  auto* catalog_list = catalog->add_subcommand("list", "List entries");
  auto* catalog_show = catalog->add_subcommand("show", "Show an entry and its expectations");
  catalog_show->add_option("name", name)->required();
  catalog_show->add_flag("--check", check, "Evaluate the expectations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  const Context ctx{g};
  try {
    if (*validate) return cmd_validate(ctx, input);
    if (*mtilde) return cmd_mtilde(ctx, input);
    if (*sigma) return cmd_sigma(ctx, input);
    if (*check_filter) return cmd_check_filter(ctx, input, trials);
    if (*complement) return cmd_complement(ctx, input, grid);
    if (*purity) return cmd_purity(ctx, input);
    if (*equiv) return cmd_equiv(ctx, input, input_b, degree);
    if (*construct) return cmd_construct(ctx, input, down, depth);
    if (*cascade) return cmd_cascade(ctx, input, iters, samples, csv);
    if (*catalog_list) return cmd_catalog_list(ctx);
    if (*catalog_show) return cmd_catalog_show(ctx, name, check);
  } catch (const gmra::Error& e) {
    const int code = exit_code_for(e.code());
    if (g.json) {
      std::cout << gmra::io::dump(Json{{"error", Json{{"code", std::string(gmra::to_string(e.code()))},
                                                      {"message", e.what()}}}});
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return code;
  }
  return kInputError;
}
