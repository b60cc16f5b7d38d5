#include "bohr/cli.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bohr/convolution.hpp"
#include "bohr/errors.hpp"
#include "bohr/function_lab.hpp"
#include "bohr/radius_solver.hpp"

namespace bohr {

namespace {

struct RunConfig {
  std::string theorem = "c1";
  std::string family = "geometric";
  double K = 1.0;
  double p = 1.0;
  std::string G;
  double tol = 1e-12;
  std::string format;  // json | csv; per-command default when empty
  std::string output;

  // verify
  std::string a_grid = "0,0.25,0.5,0.75,0.9,0.99";
  int r_count = 10;
  double r_max = -1.0;

  // sharpness
  double epsilon = -1.0;  // < 0: use 0.05 * (1 - radius)
  std::string probe_grid = "0.9,0.99,0.999,0.9999";

  // T3/T4 evaluation direction z = r e^(i angle)
  double z_angle = std::numbers::pi;

  // table
  std::string K_list;

  // lemmas
  int count = 1000;
  unsigned long long seed = 12345;
  int order = kDefaultOrder;
  int max_zeros = 4;
};

bool log_enabled() {
  const char* v = std::getenv("BOHR_LOG");
  return v != nullptr && v[0] != '\0' && !(v[0] == '0' && v[1] == '\0');
}

// Reproducible numeric formatting: 15 significant digits, '.' separator.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string json_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

class JsonWriter {
 public:
  JsonWriter& field(std::string_view key, double v) { return raw(key, fmt(v)); }
  JsonWriter& field(std::string_view key, int v) { return raw(key, std::to_string(v)); }
  JsonWriter& field(std::string_view key, unsigned long long v) {
    return raw(key, std::to_string(v));
  }
  JsonWriter& field(std::string_view key, bool v) { return raw(key, v ? "true" : "false"); }
  JsonWriter& field(std::string_view key, std::string_view v) {
    return raw(key, "\"" + json_escape(v) + "\"");
  }
  JsonWriter& null_field(std::string_view key) { return raw(key, "null"); }

  std::string str() const { return "{" + body_ + "}"; }

 private:
  JsonWriter& raw(std::string_view key, std::string_view value) {
    if (!body_.empty()) body_ += ",";
    body_ += "\"" + json_escape(key) + "\":" + std::string(value);
    return *this;
  }
  std::string body_;
};

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": cannot parse '" + item + "'");
    }
    if (used != item.size()) {
      throw std::invalid_argument(std::string(what) + ": trailing characters in '" +
                                  item + "'");
    }
    out.push_back(v);
  }
  return out;
}

RadiusProblem make_problem(const RunConfig& cfg) {
  const Theorem theorem = theorem_from_id(cfg.theorem);
  PsiFamily family = PsiFamily::from_id(cfg.family);
  PolynomialG G(parse_double_list(cfg.G, "--G"));
  return RadiusProblem::make(theorem, std::move(family), cfg.K, cfg.p, std::move(G));
}

// Writes through to -o when given, else to the session stream.
int with_sink(const RunConfig& cfg, std::ostream& out, std::ostream& err,
              const std::function<int(std::ostream&)>& body) {
  if (cfg.output.empty()) {
    return body(out);
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file '" << cfg.output << "'\n";
    return kExitUsage;
  }
  return body(file);
}

void emit_radius_report(const RunConfig& cfg, const RadiusProblem& problem,
                        const std::optional<RadiusResult>& res,
                        const std::optional<double>& closed, std::ostream& os) {
  const bool csv = cfg.format == "csv";
  if (csv) {
    os << "theorem,family,K,p,radius,residual,bracket_lo,bracket_hi,iterations,"
          "constraint_radius_R,closed_form\n";
    os << theorem_id(problem.theorem) << "," << problem.family.id() << ","
       << fmt(problem.K) << "," << fmt(problem.p) << ",";
    if (res) {
      os << fmt(res->radius) << "," << fmt(res->residual) << ","
         << fmt(res->bracket_lo) << "," << fmt(res->bracket_hi) << ","
         << res->iterations << ",";
      os << (res->constraint_radius_R ? fmt(*res->constraint_radius_R) : "") << ",";
    } else {
      os << ",,,,,";
    }
    os << (closed ? fmt(*closed) : "") << "\n";
    return;
  }
  JsonWriter w;
  w.field("theorem", theorem_id(problem.theorem))
      .field("family", problem.family.id())
      .field("K", problem.K)
      .field("p", problem.p);
  if (res) {
    w.field("radius", res->radius)
        .field("residual", res->residual)
        .field("bracket_lo", res->bracket_lo)
        .field("bracket_hi", res->bracket_hi)
        .field("iterations", res->iterations);
    if (res->constraint_radius_R) {
      w.field("constraint_radius_R", *res->constraint_radius_R);
    }
  } else {
    w.null_field("radius");
  }
  if (closed) {
    w.field("closed_form", *closed);
  }
  os << w.str() << "\n";
}

int cmd_radius(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const RadiusProblem problem = make_problem(cfg);
  if (log_enabled()) {
    err << "[bohr] radius: theorem=" << theorem_id(problem.theorem)
        << " family=" << problem.family.id() << " K=" << fmt(problem.K)
        << " p=" << fmt(problem.p) << " tol=" << fmt(cfg.tol) << "\n";
  }
  std::optional<RadiusResult> res;
  try {
    res = solve_radius(problem, cfg.tol);
  } catch (const NoRootError& e) {
    // The functional stays negative: the inequality holds on the whole
    // sampled domain and there is no finite radius to report.
    if (log_enabled()) err << "[bohr] " << e.what() << "\n";
    const auto closed = closed_form_radius(problem);
    with_sink(cfg, out, err, [&](std::ostream& os) {
      emit_radius_report(cfg, problem, std::nullopt, closed, os);
      return 0;
    });
    return kExitNoRoot;
  }
  const auto closed = closed_form_radius(problem);
  return with_sink(cfg, out, err, [&](std::ostream& os) {
    emit_radius_report(cfg, problem, res, closed, os);
    return 0;
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const RadiusProblem problem = make_problem(cfg);
  const RadiusResult res = solve_radius(problem, cfg.tol);
  const double top = cfg.r_max >= 0.0 ? cfg.r_max : 0.99 * res.radius;
  if (top > res.radius) {
    err << "error: --r-max " << fmt(cfg.r_max)
        << " lies beyond the solved radius " << fmt(res.radius)
        << "; the sweep is only defined below it\n";
    return kExitUsage;
  }
  const std::vector<double> a_values = parse_double_list(cfg.a_grid, "--a-grid");
  if (a_values.empty() || cfg.r_count < 1) {
    err << "error: verification grid is empty\n";
    return kExitUsage;
  }
  if (log_enabled()) {
    err << "[bohr] verify: radius=" << fmt(res.radius) << " grid "
        << a_values.size() << "x" << cfg.r_count << "\n";
  }
  double min_margin = std::numeric_limits<double>::infinity();
  const int rc = with_sink(cfg, out, err, [&](std::ostream& os) {
    os << "a,r,lhs,rhs,margin\n";
    const double lo = 0.1 * res.radius;
    for (double a : a_values) {
      const HarmonicMap map =
          mobius_coefficients(MobiusAtom{a, {1.0, 0.0}, problem.k()}, kDefaultOrder);
      for (int i = 0; i < cfg.r_count; ++i) {
        const double r =
            cfg.r_count == 1 ? top : lo + (top - lo) * i / (cfg.r_count - 1.0);
        const std::complex<double> at = (cfg.z_angle == std::numbers::pi)
                                            ? std::complex<double>(-r, 0.0)
                                            : std::polar(r, cfg.z_angle);
        const double lhs = majorant_lhs(map, problem.theorem, problem.family, r,
                                        problem.p, problem.G, at);
        const double rhs = problem.family.psi(0, r);
        const double margin = rhs - lhs;
        min_margin = std::min(min_margin, margin);
        os << fmt(a) << "," << fmt(r) << "," << fmt(lhs) << "," << fmt(rhs) << ","
           << fmt(margin) << "\n";
      }
    }
    return 0;
  });
  if (rc != 0) return rc;
  if (min_margin < -1e-10) {
    err << "error: majorant inequality violated below the radius (margin "
        << fmt(min_margin) << ")\n";
    return kExitViolation;
  }
  return 0;
}

int cmd_sharpness(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const RadiusProblem problem = make_problem(cfg);
  const RadiusResult res = solve_radius(problem, cfg.tol);
  const double eps = cfg.epsilon < 0.0 ? 0.05 * (1.0 - res.radius) : cfg.epsilon;
  if (!(eps > 0.0)) {
    err << "error: --epsilon must be positive; the probe is only defined "
           "strictly beyond the radius\n";
    return kExitUsage;
  }
  const std::vector<double> grid = parse_double_list(cfg.probe_grid, "--a-grid");
  const auto witness = sharpness_probe(problem, res, eps, grid, cfg.z_angle);
  const int rc = with_sink(cfg, out, err, [&](std::ostream& os) {
    JsonWriter w;
    w.field("theorem", theorem_id(problem.theorem))
        .field("family", problem.family.id())
        .field("K", problem.K)
        .field("p", problem.p)
        .field("radius", res.radius)
        .field("epsilon", eps)
        .field("r", res.radius + eps)
        .field("found", witness.has_value());
    if (witness) {
      w.field("a", witness->a).field("lhs", witness->lhs).field("rhs", witness->rhs);
    }
    os << w.str() << "\n";
    return 0;
  });
  if (rc != 0) return rc;
  return witness ? 0 : 1;
}

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<double> ks = parse_double_list(cfg.K_list, "--K-list");
  if (ks.empty()) {
    for (int i = 1; i <= 10; ++i) ks.push_back(i);
  }
  return with_sink(cfg, out, err, [&](std::ostream& os) {
    os << "K,radius,residual,constraint_radius_R,closed_form\n";
    for (double K : ks) {
      RunConfig one = cfg;
      one.K = K;
      const RadiusProblem problem = make_problem(one);
      os << fmt(K) << ",";
      try {
        const RadiusResult res = solve_radius(problem, cfg.tol);
        os << fmt(res.radius) << "," << fmt(res.residual) << ",";
        os << (res.constraint_radius_R ? fmt(*res.constraint_radius_R) : "");
      } catch (const NoRootError&) {
        os << ",,";
      }
      const auto closed = closed_form_radius(problem);
      os << "," << (closed ? fmt(*closed) : "") << "\n";
    }
    return 0;
  });
}

int cmd_lemmas(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.count < 1 || cfg.order < 8 || cfg.max_zeros < 1 ||
      cfg.max_zeros > cfg.order) {
    err << "error: lemma suite needs count >= 1, order >= 8, "
           "1 <= max-zeros <= order\n";
    return kExitUsage;
  }
  std::mt19937_64 rng(cfg.seed);
  auto unit = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };

  const PsiFamily families[] = {PsiFamily::geometric(), PsiFamily::harmonic_weight(),
                                PsiFamily::zeta_weight()};
  const double radii[] = {0.3, 0.6};
  std::vector<PsiTable> tables;
  for (const auto& fam : families) {
    for (double r : radii) {
      tables.emplace_back(fam, r, 2 * cfg.order + 2);
    }
  }

  double w1 = 1e300, w2 = 1e300, w3o = 1e300, w3e = 1e300;
  double w4 = 1e300, w6 = 1e300, w7 = 1e300;
  for (int i = 0; i < cfg.count; ++i) {
    const AnalyticSeries f = random_blaschke(rng, cfg.max_zeros, cfg.order);
    w1 = std::min(w1, lemma1_slack(f));
    w2 = std::min(w2, lemma2_slack(f));
    w3o = std::min(w3o, lemma3_odd_slack(f));
    w3e = std::min(w3e, lemma3_even_slack(f));
    const double k = 0.95 * unit();
    const auto lambda = std::polar(1.0, 2.0 * std::numbers::pi * unit());
    const HarmonicMap map = with_scaled_coanalytic(f, lambda, k);
    for (const auto& table : tables) {
      w4 = std::min(w4, lemma4_slack(map, table));
      w6 = std::min(w6, lemma6_slack(f, table));
      w7 = std::min(w7, lemma7_slack(f, table));
    }
  }

  // Mobius atoms realize |a_1| = 1 - |a_0|^2 exactly.
  double equality_err = 0.0;
  for (double a : {0.0, 0.37, 0.9}) {
    const HarmonicMap m = mobius_coefficients(MobiusAtom{a, {1.0, 0.0}, 0.0}, 8);
    equality_err = std::max(
        equality_err, std::abs(std::abs(m.h.coefficients[1]) - (1.0 - a * a)));
  }

  const double gate = -1e-10;
  const bool all_pass = w1 >= gate && w2 >= gate && w3o >= gate && w3e >= gate &&
                        w4 >= gate && w6 >= gate && w7 >= gate &&
                        equality_err <= 1e-14;
  const int rc = with_sink(cfg, out, err, [&](std::ostream& os) {
    if (cfg.format == "csv") {
      os << "check,worst_slack,pass\n";
      auto row = [&](const char* name, double slack) {
        os << name << "," << fmt(slack) << "," << (slack >= gate ? 1 : 0) << "\n";
      };
      row("lemma1", w1);
      row("lemma2", w2);
      row("lemma3_odd", w3o);
      row("lemma3_even", w3e);
      row("lemma4", w4);
      row("lemma6", w6);
      row("lemma7", w7);
      os << "mobius_lemma2_equality," << fmt(equality_err) << ","
         << (equality_err <= 1e-14 ? 1 : 0) << "\n";
    } else {
      JsonWriter w;
      w.field("count", cfg.count)
          .field("seed", cfg.seed)
          .field("order", cfg.order)
          .field("max_zeros", cfg.max_zeros)
          .field("lemma1_worst_slack", w1)
          .field("lemma2_worst_slack", w2)
          .field("lemma3_odd_worst_slack", w3o)
          .field("lemma3_even_worst_slack", w3e)
          .field("lemma4_worst_slack", w4)
          .field("lemma6_worst_slack", w6)
          .field("lemma7_worst_slack", w7)
          .field("mobius_lemma2_equality_error", equality_err)
          .field("all_pass", all_pass);
      os << w.str() << "\n";
    }
    return 0;
  });
  if (rc != 0) return rc;
  return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Sharp Bohr radii for K-quasiconformal harmonic mappings"};
  app.require_subcommand(1);

  auto add_problem_flags = [&cfg](CLI::App* cmd, bool with_G) {
    cmd->add_option("--theorem,-t", cfg.theorem,
                    "theorem id: t1|c1|t2|c2|t3|t4|conv");
    cmd->add_option("--family,-f", cfg.family,
                    "family id: geometric|harmonic|zeta2|hyp:a,b,c");
    cmd->add_option("--K", cfg.K, "quasiconformality constant, K >= 1");
    cmd->add_option("--p", cfg.p, "exponent of the |a_0| term, p in (0,2]");
    if (with_G) {
      cmd->add_option("--G", cfg.G, "polynomial coefficients c1,c2,... (t1/t2)");
    }
    cmd->add_option("--tol", cfg.tol, "bisection bracket tolerance");
    cmd->add_option("--format", cfg.format, "json|csv")
        ->check(CLI::IsMember({"", "json", "csv"}));
    cmd->add_option("--output,-o", cfg.output, "write the report to a file");
  };

  CLI::App* radius = app.add_subcommand("radius", "solve one radius problem");
  add_problem_flags(radius, true);

  CLI::App* verify =
      app.add_subcommand("verify", "sweep the majorant inequality below the radius");
  add_problem_flags(verify, true);
  verify->add_option("--a-grid", cfg.a_grid, "comma list of atom parameters a");
  verify->add_option("--r-count", cfg.r_count, "number of radii in the sweep");
  verify->add_option("--r-max", cfg.r_max, "upper sweep radius (must be <= radius)");
  verify->add_option("--z-angle", cfg.z_angle,
                     "t3/t4 evaluation direction z = r e^(i angle)");

  CLI::App* sharp =
      app.add_subcommand("sharpness", "probe for a violation beyond the radius");
  add_problem_flags(sharp, true);
  sharp->add_option("--epsilon,-e", cfg.epsilon,
                    "probe offset beyond the radius (default 0.05*(1-radius))");
  sharp->add_option("--a-grid", cfg.probe_grid, "atom parameters approaching 1");
  sharp->add_option("--z-angle", cfg.z_angle,
                    "t3/t4 evaluation direction z = r e^(i angle)");

  CLI::App* table = app.add_subcommand("table", "radius table across K values");
  add_problem_flags(table, true);
  table->add_option("--K-list", cfg.K_list, "comma list of K values (default 1..10)");

  CLI::App* lemmas =
      app.add_subcommand("lemmas", "coefficient-lemma property suite");
  lemmas->add_option("--count", cfg.count, "number of random test functions");
  lemmas->add_option("--seed", cfg.seed, "random seed");
  lemmas->add_option("--order", cfg.order, "truncation order");
  lemmas->add_option("--max-zeros", cfg.max_zeros, "zeros per Blaschke product");
  lemmas->add_option("--format", cfg.format, "json|csv")
      ->check(CLI::IsMember({"", "json", "csv"}));
  lemmas->add_option("--output,-o", cfg.output, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (radius->parsed()) return cmd_radius(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (sharp->parsed()) return cmd_sharpness(cfg, out, err);
    if (table->parsed()) return cmd_table(cfg, out, err);
    if (lemmas->parsed()) return cmd_lemmas(cfg, out, err);
  } catch (const HypothesisViolationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const NoRootError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoRoot;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace bohr
