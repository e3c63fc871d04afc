#include "wts/dual.hpp"

#include <cmath>
#include <limits>

#include "wts/errors.hpp"

namespace wts {

namespace {

constexpr double kLeftInvertibilityFloor = 1e-12;

}  // namespace

Expr dual_symbol(const Expr& phi) { return reciprocal(phi); }

const char* theorem_status_name(TheoremCheck::Status s) {
  switch (s) {
    case TheoremCheck::Status::Pass: return "pass";
    case TheoremCheck::Status::Fail: return "fail";
    case TheoremCheck::Status::NotApplicable: return "not_applicable";
  }
  return "?";
}

std::vector<MarginEntry> left_inv_margins(const Expr& phi,
                                          std::span<const double> t_values,
                                          const Grid& grid) {
  std::vector<MarginEntry> margins;
  margins.reserve(t_values.size());
  for (double t : t_values) {
    if (!(t > 0.0)) throw std::invalid_argument("t values must be positive");
    double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.n_points; ++i) {
      double x = grid.node(i);
      double den = eval(phi, x);
      if (!(den > 0.0)) throw DomainError("symbol must be positive");
      inf = std::min(inf, eval(phi, x + t) / den);
    }
    margins.push_back({t, inf, inf > kLeftInvertibilityFloor});
  }
  return margins;
}

SampledFunction apply_dual(const Expr& phi, double t, const SampledFunction& f) {
  return apply_st(dual_symbol(phi), t, f);
}

SampledFunction inverse_gram_multiplier(const Expr& phi, double t,
                                        const Grid& grid) {
  SampledFunction m{grid, std::vector<double>(static_cast<std::size_t>(grid.n_points), 0.0)};
  for (int i = 0; i < grid.n_points; ++i) {
    double x = grid.node(i);
    double num = eval(phi, x);
    double den = eval(phi, x + t);
    if (!(num > 0.0) || !(den > 0.0)) throw DomainError("symbol must be positive");
    m.values[static_cast<std::size_t>(i)] = num / den;
  }
  return m;
}

namespace {

TheoremCheck implication(const std::string& name, const ClassVerdict& hypothesis,
                         const ClassVerdict& conclusion,
                         const std::string& hypothesis_label,
                         const std::string& conclusion_label) {
  TheoremCheck check;
  check.name = name;
  if (hypothesis.verdict != Verdict::Holds) {
    check.status = TheoremCheck::Status::NotApplicable;
    check.detail = hypothesis_label + " does not hold";
    return check;
  }
  switch (conclusion.verdict) {
    case Verdict::Holds:
      check.status = TheoremCheck::Status::Pass;
      check.detail = hypothesis_label + " holds and " + conclusion_label + " holds";
      break;
    case Verdict::Fails: {
      check.status = TheoremCheck::Status::Fail;
      check.detail = hypothesis_label + " holds but " + conclusion_label + " fails";
      if (conclusion.order) {
        check.detail += " at order " + std::to_string(*conclusion.order);
      }
      if (conclusion.witness) {
        check.detail += " (x = " + std::to_string(conclusion.witness->x) + ")";
      }
      break;
    }
    case Verdict::Inconclusive:
      check.status = TheoremCheck::Status::NotApplicable;
      check.detail = conclusion_label + " is inconclusive";
      break;
  }
  return check;
}

}  // namespace

std::vector<TheoremCheck> verify_dual_theorems(const ClassificationReport& primal,
                                               const ClassificationReport& dual) {
  std::vector<TheoremCheck> checks;
  checks.push_back(implication(
      "completely_alternating_implies_dual_completely_monotone",
      primal.function_classes.completely_alternating,
      dual.function_classes.completely_monotone,
      "primal completely_alternating", "dual completely_monotone"));
  checks.push_back(implication(
      "concave_implies_dual_log_convex", primal.function_classes.concave,
      dual.function_classes.log_convex, "primal concave", "dual log_convex"));

  ClassVerdict degree_one;
  if (primal.function_classes.polynomial_degree &&
      *primal.function_classes.polynomial_degree == 1) {
    degree_one = {Verdict::Holds, std::nullopt, std::nullopt};
  } else {
    degree_one = {Verdict::Fails, std::nullopt, std::nullopt};
  }
  checks.push_back(implication(
      "degree_one_implies_dual_completely_monotone", degree_one,
      dual.function_classes.completely_monotone, "primal polynomial degree 1",
      "dual completely_monotone"));

  // Status of the conclusion itself: whether the dual symbol is completely
  // monotone.  This is the headline question for symbols that are
  // 2-hyperexpansive without being completely hyperexpansive, where the
  // implications above are vacuous but the dual can still fail to be a
  // subnormal contraction.
  TheoremCheck dual_cm;
  dual_cm.name = "dual_completely_monotone";
  const ClassVerdict& cm = dual.function_classes.completely_monotone;
  switch (cm.verdict) {
    case Verdict::Holds:
      dual_cm.status = TheoremCheck::Status::Pass;
      dual_cm.detail = "dual completely_monotone holds";
      break;
    case Verdict::Fails:
      dual_cm.status = TheoremCheck::Status::Fail;
      dual_cm.detail = "dual completely_monotone fails";
      if (cm.order) dual_cm.detail += " at order " + std::to_string(*cm.order);
      if (cm.witness)
        dual_cm.detail += " (x = " + std::to_string(cm.witness->x) + ")";
      break;
    case Verdict::Inconclusive:
      dual_cm.status = TheoremCheck::Status::NotApplicable;
      dual_cm.detail = "dual completely_monotone is inconclusive";
      break;
  }
  checks.push_back(dual_cm);
  return checks;
}

DualReport analyze_dual(const Expr& phi, const ClassifyConfig& config) {
  DualReport report;
  Expr psi = dual_symbol(phi);
  report.symbol = to_string(phi);
  report.dual_symbol = to_string(psi);
  Grid grid = make_grid(config.x_max, config.uniform_points);
  report.margins = left_inv_margins(phi, config.t_values, grid);
  report.primal = classify(phi, config);
  report.dual = classify(psi, config);
  report.theorem_checks = verify_dual_theorems(report.primal, report.dual);
  return report;
}

}  // namespace wts
