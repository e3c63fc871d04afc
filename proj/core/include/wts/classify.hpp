#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wts/expr.hpp"

namespace wts {

// Pointwise evaluator for symbols with no closed form (piecewise data,
// tabulated functions).  Only the finite-difference route applies to these.
using PointFn = std::function<double(double)>;

// Three-valued result of a sampled inequality check.  `Holds` means no
// sample violated the inequality beyond the tolerance band; `Fails` carries
// the first violating sample; `Inconclusive` means the check could not be
// decided from the data (positivity not established, non-smooth input, ...).
enum class Verdict { Holds, Fails, Inconclusive };

// Sign pattern of a family of samples relative to the tolerance band
// [-eps, +eps]: all inside (Zero), none certifiably below (NonNegative),
// none certifiably above (NonPositive), or certified values on both sides
// (Mixed).
enum class SignClass { NonNegative, NonPositive, Zero, Mixed };

enum class Direction { NonNegative, NonPositive };

const char* verdict_name(Verdict v);
const char* sign_class_name(SignClass s);

// A sample that decides a verdict.  `t` is set when the sample comes from a
// finite-difference pair rather than a single grid point.
struct Witness {
  double x = 0.0;
  double value = 0.0;
  std::optional<double> t;
};

struct ClassVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<int> order;  // offending (or certifying) order
  std::optional<Witness> witness;
};

// Sign summary of one derivative order (or difference order).
struct OrderSigns {
  int order = 0;
  SignClass sign = SignClass::Zero;
  double epsilon = 0.0;  // tol_scale * (1 + max |sample|)
  Witness min_sample;
  Witness max_sample;
  std::optional<Witness> first_negative;  // first sample below -epsilon
  std::optional<Witness> first_positive;  // first sample above +epsilon
};

struct SignProfile {
  std::vector<OrderSigns> orders;  // index k = order k
};

struct ClassifyConfig {
  int order = 8;               // highest derivative / difference order checked
  double x_max = 20.0;
  int uniform_points = 201;    // uniform grid on [0, x_max]
  int geometric_points = 50;   // geometric refinement of (0, 1]
  double geometric_min = 1e-4;
  double tol_scale = 1e-9;     // epsilon = tol_scale * (1 + max |sample|)
  std::vector<double> t_values = {0.1, 0.25, 0.5, 1.0, 2.0, 5.0};
};

// Union of the uniform grid on [0, x_max] and a geometric grid on
// (geometric_min, 1] that resolves behaviour near the origin; sorted,
// duplicates removed.
std::vector<double> sample_points(const ClassifyConfig& config);

struct XtPair {
  double x = 0.0;
  double t = 0.0;
};

// All (x, t) pairs from points x t_values whose difference stencil stays on
// the sampled domain: x + n*t <= x_max.  Ordered by t (as given), then x.
std::vector<XtPair> difference_pairs(std::span<const double> points,
                                     std::span<const double> t_values,
                                     int n, double x_max);

// Derivative samples phi^(k) for k = 0..max_order at each point, classified
// against the per-order tolerance band.
SignProfile sign_profile(const Expr& phi, int max_order,
                         std::span<const double> points,
                         double tol_scale = 1e-9);

// Alternating n-th difference
//   D_n(x, t) = sum_{k=0}^{n} (-1)^k C(n,k) f(x + k t)
// (equal to (-1)^n times the forward n-th difference with step t).
double alternating_sum(const PointFn& f, int n, double x, double t);

// Sign summary of D_n over a pair grid.
OrderSigns difference_signs(const PointFn& f, int n,
                            std::span<const XtPair> pairs,
                            double tol_scale = 1e-9);

struct DirectedVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Witness> witness;
};

// Check D_n >= 0 (or <= 0) over the pair grid.
DirectedVerdict finite_difference_check(const PointFn& f, int n,
                                        std::span<const XtPair> pairs,
                                        Direction direction,
                                        double tol_scale = 1e-9);

struct FunctionClasses {
  ClassVerdict completely_monotone;       // (-1)^k phi^(k) >= 0, all k
  ClassVerdict completely_alternating;    // phi' completely monotone
  ClassVerdict absolutely_monotone;       // phi^(k) >= 0, all k
  ClassVerdict concave;                   // phi'' <= 0
  ClassVerdict log_convex;                // (log phi)'' >= 0
  std::optional<int> polynomial_degree;   // certified degree, if any
};

struct SemigroupClasses {
  ClassVerdict subnormal_contraction;
  ClassVerdict completely_hyperexpansive;
  ClassVerdict two_hyperexpansive;
  ClassVerdict alternatingly_hyperexpansive;
  ClassVerdict hyponormal;
  ClassVerdict m_isometry;
  std::optional<int> isometry_order;  // m such that the semigroup is an m-isometry
};

struct GridInfo {
  double x_max = 0.0;
  int uniform_points = 0;
  int geometric_points = 0;
  double geometric_min = 0.0;
};

struct ClassificationReport {
  std::string symbol;
  ClassVerdict positivity;
  std::optional<double> contraction_sup;  // sup over pairs of phi(x+t)/phi(x)
  ClassVerdict contraction;
  FunctionClasses function_classes;
  SemigroupClasses semigroup_classes;
  int checked_order = 0;
  bool derivative_route = true;
  GridInfo grid;
};

// Classify a smooth symbol through its Taylor jets (derivative route).
ClassificationReport classify(const Expr& phi, const ClassifyConfig& config = {});

// Classify a pointwise-only symbol through alternating differences.  The
// derivative-based checks are skipped and `derivative_route` is false.
ClassificationReport classify_pointwise(const PointFn& phi,
                                        const ClassifyConfig& config = {});

// Map function classes to the semigroup classes they characterise.
SemigroupClasses derive_semigroup_classes(const FunctionClasses& fc,
                                          const ClassVerdict& positivity,
                                          const ClassVerdict& contraction,
                                          std::optional<int> polynomial_degree);

// Agreement between the derivative route and the difference route.
// `derivative_sign` is the sign class of (-1)^n phi^(n); `difference_sign`
// is the sign class of D_n.  The two characterisations coincide, so the
// classes must be compatible (equal, or one of them the Zero band).
struct CrossCheckEntry {
  int order = 0;
  SignClass derivative_sign = SignClass::Zero;
  SignClass difference_sign = SignClass::Zero;
  bool compatible = false;
};

struct CrossCheckReport {
  std::vector<CrossCheckEntry> entries;
  bool all_compatible = true;
};

CrossCheckReport cross_check(const Expr& phi, int max_order,
                             const ClassifyConfig& config = {});

// Exact binomial coefficient as a double (n <= kMaxJetOrder stays exact).
double binomial(int n, int k);

}  // namespace wts
