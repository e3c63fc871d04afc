#include "wts/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wts/errors.hpp"

namespace wts {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* sign_class_name(SignClass s) {
  switch (s) {
    case SignClass::NonNegative: return "non_negative";
    case SignClass::NonPositive: return "non_positive";
    case SignClass::Zero: return "zero";
    case SignClass::Mixed: return "mixed";
  }
  return "?";
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  // Every prefix product is itself a binomial coefficient, so each division
  // is exact in double for the orders used here.
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - i + 1) / i;
  return c;
}

std::vector<double> sample_points(const ClassifyConfig& config) {
  if (config.x_max <= 0.0) throw GridError("x_max must be positive");
  if (config.uniform_points < 2) throw GridError("need at least 2 uniform points");
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(config.uniform_points) +
              static_cast<std::size_t>(std::max(config.geometric_points, 0)));
  for (int i = 0; i < config.uniform_points; ++i) {
    pts.push_back(config.x_max * i / (config.uniform_points - 1));
  }
  if (config.geometric_points == 1) {
    if (1.0 <= config.x_max) pts.push_back(1.0);
  } else if (config.geometric_points > 1) {
    if (!(config.geometric_min > 0.0) || config.geometric_min >= 1.0) {
      throw GridError("geometric_min must lie in (0, 1)");
    }
    const double lg = std::log10(config.geometric_min);
    for (int j = 0; j < config.geometric_points; ++j) {
      double p = std::pow(10.0, lg * (1.0 - static_cast<double>(j) /
                                               (config.geometric_points - 1)));
      if (p <= config.x_max) pts.push_back(p);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<XtPair> difference_pairs(std::span<const double> points,
                                     std::span<const double> t_values,
                                     int n, double x_max) {
  if (n < 0) throw std::invalid_argument("difference order must be >= 0");
  std::vector<XtPair> out;
  const double slack = 1e-12 * (1.0 + std::abs(x_max));
  for (double t : t_values) {
    if (!(t > 0.0)) throw std::invalid_argument("t values must be positive");
    for (double x : points) {
      if (x + n * t <= x_max + slack) out.push_back({x, t});
    }
  }
  return out;
}

namespace {

OrderSigns classify_samples(int order, const std::vector<Witness>& samples,
                            double tol_scale) {
  OrderSigns o;
  o.order = order;
  if (samples.empty()) {
    o.sign = SignClass::Zero;
    o.epsilon = tol_scale;
    return o;
  }
  double max_abs = 0.0;
  for (const Witness& s : samples) max_abs = std::max(max_abs, std::abs(s.value));
  o.epsilon = tol_scale * (1.0 + max_abs);
  o.min_sample = samples.front();
  o.max_sample = samples.front();
  for (const Witness& s : samples) {
    if (s.value < o.min_sample.value) o.min_sample = s;
    if (s.value > o.max_sample.value) o.max_sample = s;
    if (s.value < -o.epsilon && !o.first_negative) o.first_negative = s;
    if (s.value > o.epsilon && !o.first_positive) o.first_positive = s;
  }
  if (o.first_negative && o.first_positive) o.sign = SignClass::Mixed;
  else if (o.first_positive) o.sign = SignClass::NonNegative;
  else if (o.first_negative) o.sign = SignClass::NonPositive;
  else o.sign = SignClass::Zero;
  return o;
}

DirectedVerdict directed_verdict(const OrderSigns& o, Direction d) {
  const std::optional<Witness>& violation =
      (d == Direction::NonNegative) ? o.first_negative : o.first_positive;
  if (violation) return {Verdict::Fails, violation};
  return {Verdict::Holds, std::nullopt};
}

Direction required_direction_cm(int k) {
  return (k % 2 == 0) ? Direction::NonNegative : Direction::NonPositive;
}

// Build a multi-order verdict: every order in [first_order, last_order] must
// satisfy its required direction; the first violation decides.
ClassVerdict multi_order_verdict(const std::vector<OrderSigns>& orders,
                                 int first_order, int last_order,
                                 Direction (*required)(int)) {
  for (int k = first_order; k <= last_order; ++k) {
    DirectedVerdict dv = directed_verdict(orders[static_cast<std::size_t>(k)], required(k));
    if (dv.verdict == Verdict::Fails) {
      return {Verdict::Fails, k, dv.witness};
    }
  }
  return {Verdict::Holds, std::nullopt, std::nullopt};
}

Direction required_direction_ca(int k) {
  // phi' completely monotone: odd orders >= 0, even orders (k >= 2) <= 0.
  return (k % 2 == 1) ? Direction::NonNegative : Direction::NonPositive;
}

Direction required_direction_am(int k) {
  (void)k;
  return Direction::NonNegative;
}

ClassVerdict inconclusive() { return {Verdict::Inconclusive, std::nullopt, std::nullopt}; }

std::optional<int> degree_from_orders(const std::vector<OrderSigns>& orders) {
  int top = static_cast<int>(orders.size()) - 1;
  if (orders[static_cast<std::size_t>(top)].sign != SignClass::Zero) return std::nullopt;
  for (int k = top; k >= 0; --k) {
    if (orders[static_cast<std::size_t>(k)].sign != SignClass::Zero) return k;
  }
  return 0;  // everything in the zero band: constant within tolerance
}

SignClass flip_for_odd(SignClass s, int n) {
  if (n % 2 == 0) return s;
  switch (s) {
    case SignClass::NonNegative: return SignClass::NonPositive;
    case SignClass::NonPositive: return SignClass::NonNegative;
    default: return s;
  }
}

bool signs_compatible(SignClass a, SignClass b) {
  if (a == b) return true;
  if (a == SignClass::Zero) return b != SignClass::Mixed;
  if (b == SignClass::Zero) return a != SignClass::Mixed;
  return false;
}

}  // namespace

SignProfile sign_profile(const Expr& phi, int max_order,
                         std::span<const double> points, double tol_scale) {
  if (max_order < 0 || max_order > kMaxJetOrder) {
    throw std::invalid_argument("max_order out of range");
  }
  std::vector<std::vector<Witness>> samples(static_cast<std::size_t>(max_order) + 1);
  for (auto& v : samples) v.reserve(points.size());
  for (double x : points) {
    Jet j = eval_jet(phi, x, max_order);
    for (int k = 0; k <= max_order; ++k) {
      samples[static_cast<std::size_t>(k)].push_back({x, j.derivative(k), std::nullopt});
    }
  }
  SignProfile profile;
  profile.orders.reserve(samples.size());
  for (int k = 0; k <= max_order; ++k) {
    profile.orders.push_back(
        classify_samples(k, samples[static_cast<std::size_t>(k)], tol_scale));
  }
  return profile;
}

double alternating_sum(const PointFn& f, int n, double x, double t) {
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 0; k <= n; ++k) {
    sum += sign * binomial(n, k) * f(x + k * t);
    sign = -sign;
  }
  return sum;
}

OrderSigns difference_signs(const PointFn& f, int n,
                            std::span<const XtPair> pairs, double tol_scale) {
  std::vector<Witness> samples;
  samples.reserve(pairs.size());
  for (const XtPair& p : pairs) {
    samples.push_back({p.x, alternating_sum(f, n, p.x, p.t), p.t});
  }
  return classify_samples(n, samples, tol_scale);
}

DirectedVerdict finite_difference_check(const PointFn& f, int n,
                                        std::span<const XtPair> pairs,
                                        Direction direction, double tol_scale) {
  return directed_verdict(difference_signs(f, n, pairs, tol_scale), direction);
}

SemigroupClasses derive_semigroup_classes(const FunctionClasses& fc,
                                          const ClassVerdict& positivity,
                                          const ClassVerdict& contraction,
                                          std::optional<int> polynomial_degree) {
  SemigroupClasses sc;
  if (positivity.verdict != Verdict::Holds) {
    sc.subnormal_contraction = inconclusive();
    sc.completely_hyperexpansive = inconclusive();
    sc.two_hyperexpansive = inconclusive();
    sc.alternatingly_hyperexpansive = inconclusive();
    sc.hyponormal = inconclusive();
    sc.m_isometry = inconclusive();
    return sc;
  }

  // Subnormal contraction <=> phi completely monotone and ||S_t|| <= 1.
  if (fc.completely_monotone.verdict == Verdict::Fails) {
    sc.subnormal_contraction = fc.completely_monotone;
  } else if (contraction.verdict == Verdict::Fails) {
    sc.subnormal_contraction = contraction;
  } else if (fc.completely_monotone.verdict == Verdict::Holds &&
             contraction.verdict == Verdict::Holds) {
    sc.subnormal_contraction = {Verdict::Holds, std::nullopt, std::nullopt};
  } else {
    sc.subnormal_contraction = inconclusive();
  }

  sc.completely_hyperexpansive = fc.completely_alternating;
  sc.two_hyperexpansive = fc.concave;
  sc.alternatingly_hyperexpansive = fc.absolutely_monotone;
  sc.hyponormal = fc.log_convex;

  if (polynomial_degree) {
    int m = *polynomial_degree + 1;
    sc.m_isometry = {Verdict::Holds, m, std::nullopt};
    sc.isometry_order = m;
  } else {
    sc.m_isometry = {Verdict::Fails, std::nullopt, std::nullopt};
  }
  return sc;
}

namespace {

ClassVerdict positivity_verdict(const OrderSigns& value_signs) {
  if (value_signs.first_negative) {
    return {Verdict::Fails, 0, value_signs.first_negative};
  }
  if (value_signs.min_sample.value > value_signs.epsilon) {
    return {Verdict::Holds, std::nullopt, std::nullopt};
  }
  return {Verdict::Inconclusive, 0, value_signs.min_sample};
}

struct ContractionResult {
  ClassVerdict verdict;
  double sup = 0.0;
};

ContractionResult contraction_check(const PointFn& f,
                                    std::span<const double> points,
                                    const ClassifyConfig& config) {
  std::vector<XtPair> pairs =
      difference_pairs(points, config.t_values, 1, config.x_max);
  ContractionResult r;
  r.sup = 0.0;
  std::optional<Witness> first_violation;
  double eps = 0.0;
  std::vector<Witness> ratios;
  ratios.reserve(pairs.size());
  for (const XtPair& p : pairs) {
    double ratio = f(p.x + p.t) / f(p.x);
    ratios.push_back({p.x, ratio, p.t});
    r.sup = std::max(r.sup, ratio);
  }
  eps = config.tol_scale * (1.0 + std::abs(r.sup));
  for (const Witness& w : ratios) {
    if (w.value > 1.0 + eps) {
      first_violation = w;
      break;
    }
  }
  if (first_violation) {
    r.verdict = {Verdict::Fails, std::nullopt, first_violation};
  } else {
    r.verdict = {Verdict::Holds, std::nullopt, std::nullopt};
  }
  return r;
}

void mark_all_inconclusive(ClassificationReport& report) {
  report.function_classes.completely_monotone = inconclusive();
  report.function_classes.completely_alternating = inconclusive();
  report.function_classes.absolutely_monotone = inconclusive();
  report.function_classes.concave = inconclusive();
  report.function_classes.log_convex = inconclusive();
  report.contraction = inconclusive();
  report.semigroup_classes = derive_semigroup_classes(
      report.function_classes, report.positivity, report.contraction, std::nullopt);
}

GridInfo grid_info(const ClassifyConfig& config) {
  return {config.x_max, config.uniform_points, config.geometric_points,
          config.geometric_min};
}

}  // namespace

ClassificationReport classify(const Expr& phi, const ClassifyConfig& config) {
  ClassificationReport report;
  report.symbol = to_string(phi);
  report.checked_order = config.order;
  report.derivative_route = true;
  report.grid = grid_info(config);

  std::vector<double> points = sample_points(config);
  SignProfile profile = sign_profile(phi, config.order, points, config.tol_scale);

  report.positivity = positivity_verdict(profile.orders[0]);
  if (report.positivity.verdict != Verdict::Holds) {
    mark_all_inconclusive(report);
    return report;
  }

  FunctionClasses& fc = report.function_classes;
  fc.completely_monotone =
      multi_order_verdict(profile.orders, 0, config.order, required_direction_cm);
  fc.completely_alternating =
      config.order >= 1
          ? multi_order_verdict(profile.orders, 1, config.order, required_direction_ca)
          : inconclusive();
  fc.absolutely_monotone =
      multi_order_verdict(profile.orders, 0, config.order, required_direction_am);
  if (config.order >= 2) {
    DirectedVerdict dv = directed_verdict(profile.orders[2], Direction::NonPositive);
    fc.concave = {dv.verdict, dv.verdict == Verdict::Fails ? std::optional<int>(2) : std::nullopt,
                  dv.witness};
  } else {
    fc.concave = inconclusive();
  }

  // (log phi)'' >= 0, from jets of log(phi); positivity already certified.
  if (config.order >= 2) {
    std::vector<Witness> samples;
    samples.reserve(points.size());
    for (double x : points) {
      Jet lj = log(eval_jet(phi, x, 2));
      samples.push_back({x, lj.derivative(2), std::nullopt});
    }
    OrderSigns signs = classify_samples(2, samples, config.tol_scale);
    DirectedVerdict dv = directed_verdict(signs, Direction::NonNegative);
    fc.log_convex = {dv.verdict,
                     dv.verdict == Verdict::Fails ? std::optional<int>(2) : std::nullopt,
                     dv.witness};
  } else {
    fc.log_convex = inconclusive();
  }

  fc.polynomial_degree = degree_from_orders(profile.orders);

  PointFn f = [&phi](double x) { return eval(phi, x); };
  ContractionResult contraction = contraction_check(f, points, config);
  report.contraction = contraction.verdict;
  report.contraction_sup = contraction.sup;

  report.semigroup_classes = derive_semigroup_classes(
      fc, report.positivity, report.contraction, fc.polynomial_degree);
  return report;
}

ClassificationReport classify_pointwise(const PointFn& phi,
                                        const ClassifyConfig& config) {
  ClassificationReport report;
  report.symbol = "<pointwise>";
  report.checked_order = config.order;
  report.derivative_route = false;
  report.grid = grid_info(config);

  std::vector<double> points = sample_points(config);
  std::vector<Witness> values;
  values.reserve(points.size());
  for (double x : points) values.push_back({x, phi(x), std::nullopt});
  OrderSigns value_signs = classify_samples(0, values, config.tol_scale);

  report.positivity = positivity_verdict(value_signs);
  if (report.positivity.verdict != Verdict::Holds) {
    mark_all_inconclusive(report);
    return report;
  }

  // Difference-route sign summaries: D_n over the admissible pair grid.
  std::vector<OrderSigns> orders(static_cast<std::size_t>(config.order) + 1);
  orders[0] = value_signs;
  for (int n = 1; n <= config.order; ++n) {
    std::vector<XtPair> pairs =
        difference_pairs(points, config.t_values, n, config.x_max);
    orders[static_cast<std::size_t>(n)] =
        difference_signs(phi, n, pairs, config.tol_scale);
  }

  // Translations of the derivative conditions to differences
  // (D_n = (-1)^n * forward difference):
  //   completely monotone      <=> D_n >= 0 for all n
  //   completely alternating   <=> D_n <= 0 for all n >= 1
  //   absolutely monotone      <=> (-1)^n D_n >= 0
  //   concave                  <=> D_2 <= 0
  FunctionClasses& fc = report.function_classes;
  auto run = [&](int first, int last, Direction (*required)(int)) {
    return multi_order_verdict(orders, first, last, required);
  };
  fc.completely_monotone = run(0, config.order, [](int) { return Direction::NonNegative; });
  fc.completely_alternating =
      config.order >= 1 ? run(1, config.order, [](int) { return Direction::NonPositive; })
                        : inconclusive();
  fc.absolutely_monotone = run(0, config.order, [](int k) {
    return (k % 2 == 0) ? Direction::NonNegative : Direction::NonPositive;
  });
  if (config.order >= 2) {
    DirectedVerdict dv = directed_verdict(orders[2], Direction::NonPositive);
    fc.concave = {dv.verdict,
                  dv.verdict == Verdict::Fails ? std::optional<int>(2) : std::nullopt,
                  dv.witness};
  } else {
    fc.concave = inconclusive();
  }

  if (config.order >= 2) {
    PointFn log_phi = [&phi](double x) { return std::log(phi(x)); };
    std::vector<XtPair> pairs =
        difference_pairs(points, config.t_values, 2, config.x_max);
    OrderSigns signs = difference_signs(log_phi, 2, pairs, config.tol_scale);
    DirectedVerdict dv = directed_verdict(signs, Direction::NonNegative);
    fc.log_convex = {dv.verdict,
                     dv.verdict == Verdict::Fails ? std::optional<int>(2) : std::nullopt,
                     dv.witness};
  } else {
    fc.log_convex = inconclusive();
  }

  fc.polynomial_degree = degree_from_orders(orders);

  ContractionResult contraction = contraction_check(phi, points, config);
  report.contraction = contraction.verdict;
  report.contraction_sup = contraction.sup;

  report.semigroup_classes = derive_semigroup_classes(
      fc, report.positivity, report.contraction, fc.polynomial_degree);
  return report;
}

CrossCheckReport cross_check(const Expr& phi, int max_order,
                             const ClassifyConfig& config) {
  if (max_order < 1 || max_order > kMaxJetOrder) {
    throw std::invalid_argument("max_order out of range");
  }
  std::vector<double> points = sample_points(config);
  SignProfile profile = sign_profile(phi, max_order, points, config.tol_scale);
  PointFn f = [&phi](double x) { return eval(phi, x); };

  CrossCheckReport report;
  for (int n = 1; n <= max_order; ++n) {
    std::vector<XtPair> pairs =
        difference_pairs(points, config.t_values, n, config.x_max);
    OrderSigns diff = difference_signs(f, n, pairs, config.tol_scale);
    CrossCheckEntry entry;
    entry.order = n;
    entry.derivative_sign =
        flip_for_odd(profile.orders[static_cast<std::size_t>(n)].sign, n);
    entry.difference_sign = diff.sign;
    entry.compatible = signs_compatible(entry.derivative_sign, entry.difference_sign);
    report.all_compatible = report.all_compatible && entry.compatible;
    report.entries.push_back(entry);
  }
  return report;
}

}  // namespace wts
