// Command-line surface for the weighted translation semigroup toolkit.
//
//   wts <command> --symbol "sqrt(x+1)" [flags]
//
// Commands:
//   classify   function-class and semigroup-class verdicts for the symbol
//   dual       Cauchy-dual analysis: margins, dual classification, theorems
//   bridge     weighted-shift moments/weights and their sequence verdicts
//   fit        integral-representation fits (Laplace, Levy, moment forms)
//   apply      apply S_t to a sampled function read from CSV
//   report     all of the above merged into one document
//
// Exit status: 0 on success, 1 when --assert names a class whose verdict is
// not "Holds", 2 on input errors (bad expression, bad grid, bad flags).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wts/bridge.hpp"
#include "wts/classify.hpp"
#include "wts/dual.hpp"
#include "wts/errors.hpp"
#include "wts/expr.hpp"
#include "wts/opsim.hpp"
#include "wts/repfit.hpp"
#include "wts/report_json.hpp"

namespace {

constexpr int kBridgeTerms = 32;
constexpr int kMomentGridDivisions = 120;
constexpr int kCrossCheckMaxOrder = 6;

struct Options {
  std::string command;
  std::string symbol;
  int order = 8;
  double x_max = 20.0;
  int points = 201;
  std::vector<double> t_values;
  std::string atoms = "log:0.001:100:60";
  double a_max = 1.0;
  std::string input;
  std::string output;
  std::string assert_class;
  bool json = false;
};

// Atom-grid specification: "log:lo:hi:n", "lin:lo:hi:n", or a comma list of
// locations.
std::vector<double> parse_atom_spec(const std::string& spec) {
  auto parse_number = [&](const std::string& s) {
    try {
      size_t pos = 0;
      double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw wts::InputError("bad number '" + s + "' in atom grid spec '" +
                            spec + "'");
    }
  };
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
      if (c == sep) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    parts.push_back(cur);
    return parts;
  };

  if (spec.rfind("log:", 0) == 0 || spec.rfind("lin:", 0) == 0) {
    std::vector<std::string> parts = split(spec, ':');
    if (parts.size() != 4)
      throw wts::InputError("atom grid spec '" + spec +
                            "' must be log:lo:hi:n or lin:lo:hi:n");
    double lo = parse_number(parts[1]);
    double hi = parse_number(parts[2]);
    double n_raw = parse_number(parts[3]);
    int n = static_cast<int>(n_raw);
    if (n < 1 || n != n_raw)
      throw wts::InputError("atom grid spec '" + spec +
                            "': count must be a positive integer");
    if (!(lo > 0.0) && parts[0] == "log")
      throw wts::InputError("atom grid spec '" + spec +
                            "': log spacing needs lo > 0");
    if (!(hi >= lo))
      throw wts::InputError("atom grid spec '" + spec + "': need hi >= lo");
    if (parts[0] == "log") return wts::log_spaced_atoms(lo, hi, n);
    std::vector<double> atoms(n);
    for (int j = 0; j < n; ++j)
      atoms[j] = (n == 1) ? lo : lo + (hi - lo) * j / (n - 1);
    return atoms;
  }

  std::vector<double> atoms;
  for (const std::string& part : split(spec, ',')) {
    if (part.empty())
      throw wts::InputError("empty entry in atom list '" + spec + "'");
    atoms.push_back(parse_number(part));
  }
  return atoms;
}

wts::ClassifyConfig make_classify_config(const Options& opt) {
  wts::ClassifyConfig cfg;
  cfg.order = opt.order;
  cfg.x_max = opt.x_max;
  cfg.uniform_points = opt.points;
  if (!opt.t_values.empty()) cfg.t_values = opt.t_values;
  return cfg;
}

const wts::ClassVerdict* find_assert_verdict(
    const wts::ClassificationReport& report, const std::string& name) {
  const wts::FunctionClasses& fc = report.function_classes;
  const wts::SemigroupClasses& sc = report.semigroup_classes;
  if (name == "positivity") return &report.positivity;
  if (name == "contraction") return &report.contraction;
  if (name == "completely_monotone") return &fc.completely_monotone;
  if (name == "completely_alternating") return &fc.completely_alternating;
  if (name == "absolutely_monotone") return &fc.absolutely_monotone;
  if (name == "concave") return &fc.concave;
  if (name == "log_convex") return &fc.log_convex;
  if (name == "subnormal_contraction") return &sc.subnormal_contraction;
  if (name == "completely_hyperexpansive") return &sc.completely_hyperexpansive;
  if (name == "two_hyperexpansive") return &sc.two_hyperexpansive;
  if (name == "alternatingly_hyperexpansive")
    return &sc.alternatingly_hyperexpansive;
  if (name == "hyponormal") return &sc.hyponormal;
  if (name == "m_isometry") return &sc.m_isometry;
  return nullptr;
}

void write_config_section(wts::JsonWriter& w, const Options& opt,
                          const wts::ClassifyConfig& cfg) {
  w.key("config");
  w.begin_object();
  w.field("order", cfg.order);
  w.field("x_max", cfg.x_max);
  w.field("uniform_points", cfg.uniform_points);
  w.field("geometric_points", cfg.geometric_points);
  w.field("geometric_min", cfg.geometric_min);
  w.field("tol_scale", cfg.tol_scale);
  w.key("t_values");
  w.begin_array();
  for (double t : cfg.t_values) w.value(t);
  w.end_array();
  if (opt.command == "fit" || opt.command == "report") {
    w.field("atoms", opt.atoms);
    w.field("a_max", opt.a_max);
  }
  w.end_object();
}

void begin_document(wts::JsonWriter& w, const Options& opt,
                    const wts::ClassifyConfig& cfg) {
  w.begin_object();
  w.field("schema", wts::kReportSchema);
  w.field("command", opt.command);
  w.field("symbol", opt.symbol);
  write_config_section(w, opt, cfg);
}

void print_verdict_line(std::ostream& out, const std::string& label,
                        const wts::ClassVerdict& v) {
  out << "  " << label << ": " << wts::verdict_name(v.verdict);
  if (v.verdict == wts::Verdict::Fails && v.witness) {
    out << " (order " << (v.order ? *v.order : 0) << ", x = " << v.witness->x;
    if (v.witness->t) out << ", t = " << *v.witness->t;
    out << ", value = " << v.witness->value << ")";
  }
  out << "\n";
}

void print_text(std::ostream& out, const wts::ClassificationReport& r) {
  out << "symbol: " << r.symbol << "\n";
  out << "route: " << (r.derivative_route ? "derivative" : "difference")
      << ", checked order " << r.checked_order << "\n";
  print_verdict_line(out, "positivity", r.positivity);
  out << "  contraction: " << wts::verdict_name(r.contraction.verdict);
  if (r.contraction_sup) out << " (sup " << *r.contraction_sup << ")";
  out << "\n";
  out << "function classes:\n";
  print_verdict_line(out, "completely_monotone",
                     r.function_classes.completely_monotone);
  print_verdict_line(out, "completely_alternating",
                     r.function_classes.completely_alternating);
  print_verdict_line(out, "absolutely_monotone",
                     r.function_classes.absolutely_monotone);
  print_verdict_line(out, "concave", r.function_classes.concave);
  print_verdict_line(out, "log_convex", r.function_classes.log_convex);
  if (r.function_classes.polynomial_degree)
    out << "  polynomial_degree: " << *r.function_classes.polynomial_degree
        << "\n";
  out << "semigroup classes:\n";
  print_verdict_line(out, "subnormal_contraction",
                     r.semigroup_classes.subnormal_contraction);
  print_verdict_line(out, "completely_hyperexpansive",
                     r.semigroup_classes.completely_hyperexpansive);
  print_verdict_line(out, "two_hyperexpansive",
                     r.semigroup_classes.two_hyperexpansive);
  print_verdict_line(out, "alternatingly_hyperexpansive",
                     r.semigroup_classes.alternatingly_hyperexpansive);
  print_verdict_line(out, "hyponormal", r.semigroup_classes.hyponormal);
  print_verdict_line(out, "m_isometry", r.semigroup_classes.m_isometry);
  if (r.semigroup_classes.isometry_order)
    out << "  isometry_order: " << *r.semigroup_classes.isometry_order << "\n";
}

void print_text(std::ostream& out, const wts::DualReport& r) {
  out << "dual symbol: " << r.dual_symbol << "\n";
  out << "left-invertibility margins:\n";
  for (const wts::MarginEntry& m : r.margins)
    out << "  t = " << m.t << ": margin " << m.margin
        << (m.left_invertible ? "" : "  [not left invertible]") << "\n";
  out << "theorem checks:\n";
  for (const wts::TheoremCheck& c : r.theorem_checks)
    out << "  " << c.name << ": " << wts::theorem_status_name(c.status)
        << (c.detail.empty() ? "" : " - " + c.detail) << "\n";
}

// Sections shared between single-purpose commands and `report`.

void run_classify_section(wts::JsonWriter& w,
                          const wts::ClassificationReport& report) {
  w.key("classification");
  write_json(w, report);
}

void run_cross_check_section(wts::JsonWriter& w, const wts::Expr& phi,
                             const Options& opt,
                             const wts::ClassifyConfig& cfg) {
  int max_order = std::min(opt.order, kCrossCheckMaxOrder);
  wts::CrossCheckReport cc = wts::cross_check(phi, max_order, cfg);
  w.key("cross_check");
  write_json(w, cc);
}

void run_bridge_section(wts::JsonWriter& w, const wts::Expr& phi,
                        const Options& opt) {
  wts::ShiftWeights weights = wts::beta_alpha(phi, kBridgeTerms);
  wts::SeqVerdicts beta_v = wts::seq_classify(weights.beta, opt.order);
  wts::SeqVerdicts dual_v =
      wts::seq_classify(wts::dual_moments(weights), opt.order);
  w.key("bridge");
  write_json(w, weights, beta_v, dual_v);
}

void run_fit_section(wts::JsonWriter& w, const wts::Expr& phi,
                     const Options& opt) {
  wts::Grid grid = wts::make_grid(opt.x_max, opt.points);
  wts::SampledFunction samples = wts::sample(phi, grid);
  std::vector<double> atom_grid = parse_atom_spec(opt.atoms);

  std::vector<double> s_grid(kMomentGridDivisions);
  for (int j = 1; j <= kMomentGridDivisions; ++j)
    s_grid[j - 1] = opt.a_max * j / kMomentGridDivisions;

  wts::CmFit cm = wts::fit_cm(samples, atom_grid);
  wts::CaFit ca = wts::fit_ca(samples, atom_grid);
  wts::MomentFit moment = wts::fit_subnormal(samples, opt.a_max, s_grid);

  w.key("fits");
  w.begin_object();
  w.key("completely_monotone");
  write_json(w, cm);
  w.key("levy");
  write_json(w, ca);
  w.key("moment");
  write_json(w, moment);
  w.end_object();
}

int run_apply(const Options& opt) {
  if (opt.input.empty())
    throw wts::InputError("apply requires --input CSV");
  if (opt.t_values.empty())
    throw wts::InputError("apply requires --t");
  if (opt.json && opt.output.empty())
    throw wts::InputError("apply --json requires --output for the CSV");

  wts::Expr phi = wts::parse(opt.symbol);
  std::ifstream in(opt.input);
  if (!in) throw wts::InputError("cannot open input file '" + opt.input + "'");
  wts::SampledFunction f = wts::read_sampled_csv(in);
  double t = opt.t_values.front();
  wts::SampledFunction result = wts::apply_st(phi, t, f);

  if (!opt.output.empty()) {
    std::ofstream out(opt.output);
    if (!out)
      throw wts::InputError("cannot open output file '" + opt.output + "'");
    wts::write_csv(result, out);
  } else {
    wts::write_csv(result, std::cout);
  }

  if (opt.json) {
    wts::JsonWriter w;
    w.begin_object();
    w.field("schema", wts::kReportSchema);
    w.field("command", opt.command);
    w.field("symbol", opt.symbol);
    w.field("t", t);
    w.field("input", opt.input);
    w.field("output", opt.output);
    w.field("n_points", result.grid.n_points);
    w.field("x_max", result.grid.x_max);
    w.end_object();
    std::cout << w.str() << "\n";
  }
  return 0;
}

int run(const Options& opt) {
  if (opt.command == "apply") return run_apply(opt);

  wts::Expr phi = wts::parse(opt.symbol);
  wts::ClassifyConfig cfg = make_classify_config(opt);

  std::optional<wts::ClassificationReport> classification;
  std::optional<wts::DualReport> dual;
  auto classification_ref = [&]() -> const wts::ClassificationReport& {
    if (dual) return dual->primal;
    if (!classification) classification = wts::classify(phi, cfg);
    return *classification;
  };

  wts::JsonWriter w;
  begin_document(w, opt, cfg);

  if (opt.command == "classify") {
    run_classify_section(w, classification_ref());
  } else if (opt.command == "dual") {
    dual = wts::analyze_dual(phi, cfg);
    w.key("dual");
    write_json(w, *dual);
  } else if (opt.command == "bridge") {
    run_bridge_section(w, phi, opt);
  } else if (opt.command == "fit") {
    run_fit_section(w, phi, opt);
  } else if (opt.command == "report") {
    dual = wts::analyze_dual(phi, cfg);
    run_classify_section(w, dual->primal);
    run_cross_check_section(w, phi, opt, cfg);
    w.key("dual");
    write_json(w, *dual);
    run_bridge_section(w, phi, opt);
    run_fit_section(w, phi, opt);
  }
  w.end_object();

  int exit_code = 0;
  std::string assert_note;
  if (!opt.assert_class.empty()) {
    const wts::ClassVerdict* v =
        find_assert_verdict(classification_ref(), opt.assert_class);
    if (v == nullptr)
      throw wts::InputError("unknown class '" + opt.assert_class +
                            "' in --assert");
    const char* name = wts::verdict_name(v->verdict);
    assert_note = "assert " + opt.assert_class + ": " + name;
    if (v->verdict != wts::Verdict::Holds) exit_code = 1;
  }

  if (!opt.output.empty()) {
    std::ofstream out(opt.output);
    if (!out)
      throw wts::InputError("cannot open output file '" + opt.output + "'");
    out << w.str() << "\n";
  }
  if (opt.json) {
    std::cout << w.str() << "\n";
  } else if (opt.output.empty()) {
    // Human-readable summary.
    if (opt.command == "classify" || opt.command == "report") {
      print_text(std::cout, classification_ref());
    }
    if (dual) {
      if (opt.command == "dual") print_text(std::cout, dual->primal);
      print_text(std::cout, *dual);
    }
    if (opt.command == "bridge" || opt.command == "fit") {
      std::cout << w.str() << "\n";  // no shorter faithful rendering
    }
  }
  if (!assert_note.empty()) std::cerr << assert_note << "\n";
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{
      "Analyze weighted translation semigroups on L^2(R+) from their "
      "symbol."};
  app.set_config("--config", "", "flat key=value config file");
  app.add_option("command", opt.command, "one of: classify dual bridge fit apply report")
      ->required()
      ->check(CLI::IsMember(
          {"classify", "dual", "bridge", "fit", "apply", "report"}));
  app.add_option("--symbol", opt.symbol, "symbol expression phi(x)")
      ->required();
  app.add_option("--order", opt.order,
                 "highest derivative/difference order checked")
      ->check(CLI::Range(0, 16))
      ->capture_default_str();
  app.add_option("--xmax", opt.x_max, "grid upper endpoint")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--points", opt.points, "uniform sample count on [0, xmax]")
      ->check(CLI::Range(2, 100000000))
      ->capture_default_str();
  app.add_option("--t", opt.t_values,
                 "translation steps (repeatable or comma separated)")
      ->delimiter(',');
  app.add_option("--atoms", opt.atoms,
                 "atom grid: log:lo:hi:n, lin:lo:hi:n, or comma list")
      ->capture_default_str();
  app.add_option("--amax", opt.a_max,
                 "moment-fit upper bound for atom locations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--input", opt.input, "input CSV (apply)");
  app.add_option("--output", opt.output, "output file (JSON; CSV for apply)");
  app.add_option("--assert", opt.assert_class,
                 "exit 1 unless this class verdict is Holds");
  app.add_flag("--json", opt.json, "print the JSON document to stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (double t : opt.t_values)
      if (!(t >= 0.0)) throw wts::InputError("--t values must be >= 0");
    return run(opt);
  } catch (const wts::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
