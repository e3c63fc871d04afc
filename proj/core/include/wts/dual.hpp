#pragma once

#include <span>
#include <string>
#include <vector>

#include "wts/classify.hpp"
#include "wts/expr.hpp"
#include "wts/opsim.hpp"

namespace wts {

// The Cauchy dual of the semigroup with symbol phi is the weighted
// translation semigroup with symbol 1/phi.  Each S_t has a bounded dual
// S_t (S_t^* S_t)^{-1} exactly when S_t is bounded below, i.e. when
// inf_x phi(x + t)/phi(x) > 0.

Expr dual_symbol(const Expr& phi);  // the expression 1/phi

struct MarginEntry {
  double t = 0.0;
  double margin = 0.0;          // min over grid nodes of phi(x + t)/phi(x)
  bool left_invertible = false; // margin above the 1e-12 reporting floor
};

// Left-invertibility margins of S_t for each t over the grid nodes (the
// numerator is evaluated symbolically, so x + t may exceed x_max).
std::vector<MarginEntry> left_inv_margins(const Expr& phi,
                                          std::span<const double> t_values,
                                          const Grid& grid);

// Dual semigroup applied on the grid: translation weighted by 1/phi.
SampledFunction apply_dual(const Expr& phi, double t, const SampledFunction& f);

// Multiplier realizing (S_t^* S_t)^{-1}: the function phi(x)/phi(x + t).
SampledFunction inverse_gram_multiplier(const Expr& phi, double t,
                                        const Grid& grid);

struct TheoremCheck {
  enum class Status { Pass, Fail, NotApplicable };
  std::string name;
  Status status = Status::NotApplicable;
  std::string detail;
};

const char* theorem_status_name(TheoremCheck::Status s);

// Implications between primal and dual classifications:
//   completely alternating symbol   =>  dual completely monotone
//   concave symbol                  =>  dual log-convex
//   polynomial degree 1 (2-isometry) => dual completely monotone
// A check passes when the conclusion holds, fails when the hypothesis holds
// but the conclusion certifiably does not, and is not applicable when the
// hypothesis does not hold (or either side is inconclusive).
std::vector<TheoremCheck> verify_dual_theorems(const ClassificationReport& primal,
                                               const ClassificationReport& dual);

struct DualReport {
  std::string symbol;       // primal symbol text
  std::string dual_symbol;  // dual symbol text
  std::vector<MarginEntry> margins;
  ClassificationReport primal;
  ClassificationReport dual;
  std::vector<TheoremCheck> theorem_checks;
};

// Margins over the uniform part of the classify grid, both classifications
// (same grid/order config for comparability), and the theorem checks.
DualReport analyze_dual(const Expr& phi, const ClassifyConfig& config = {});

}  // namespace wts
