#pragma once

// Shared symbol corpus and finite-difference oracles for the test suites.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "wts/classify.hpp"
#include "wts/expr.hpp"

namespace fixtures {

// One worked-example symbol with its expected class memberships (the
// verdicts classify() should report as Holds at order 8 on the default
// grid).  polynomial_degree is -1 for non-polynomial symbols.
struct Symbol {
  const char* text;
  bool completely_monotone;
  bool completely_alternating;
  bool absolutely_monotone;
  bool concave;
  bool log_convex;
  bool contraction;
  int polynomial_degree;
};

inline const std::vector<Symbol>& corpus() {
  static const std::vector<Symbol> all = {
      //  text                              cm     ca     am     conc   logcx  contr  deg
      {"sqrt(x + 1)",                       false, true,  false, true,  false, false, -1},
      {"log(x + 2)",                        false, true,  false, true,  false, false, -1},
      {"2 - exp(-x)",                       false, true,  false, true,  false, false, -1},
      {"x + 1",                             false, true,  true,  true,  false, false,  1},
      {"1/(x + 1)",                         true,  false, false, false, true,  true,  -1},
      {"exp(-x)",                           true,  false, false, false, true,  true,  -1},
      {"(x + 0.5)/(x + 1)",                 false, true,  false, true,  false, false, -1},
      {"(x + 2)/(x + 1)",                   true,  false, false, false, true,  true,  -1},
      {"exp(x)",                            false, false, true,  false, true,  false, -1},
      {"x^3 + x^2 + x + 1",                 false, false, true,  false, false, false,  3},
      {"x^2 + x + 1",                       false, false, true,  false, false, false,  2},
      {"2*x - log(cosh(x - 10)) + 100",     false, false, false, true,  false, false, -1},
      {"1/(x^2 + 3*x + 2)",                 true,  false, false, false, true,  true,  -1},
      {"1/(x^2 + 2*x + 2)",                 false, false, false, false, true,  true,  -1},
      {"1",                                 true,  true,  true,  true,  true,  true,   0},
  };
  return all;
}

// Concave but non-smooth symbol: x+1 up to x = 1, constant 2 beyond.  Only
// the difference route applies.
inline double piecewise_concave(double x) { return x <= 1.0 ? x + 1.0 : 2.0; }

inline wts::PointFn as_point_fn(const wts::Expr& e) {
  return [e](double x) { return wts::eval(e, x); };
}

// ---------------------------------------------------------------------------
// Finite-difference oracle for derivative orders 1..4.
//
// Fourth-order-accurate central stencils keep the truncation error below the
// relative tolerance for every corpus symbol on the oracle grid below; the
// classical iterated stencils (second-order accurate) do not.

inline double fd_derivative(const std::function<double(double)>& f, double x,
                            int k, double h) {
  auto F = [&](int j) { return f(x + j * h); };
  switch (k) {
    case 1:
      return (-F(2) + 8 * F(1) - 8 * F(-1) + F(-2)) / (12 * h);
    case 2:
      return (-F(2) + 16 * F(1) - 30 * F(0) + 16 * F(-1) - F(-2)) /
             (12 * h * h);
    case 3:
      return (F(-3) - 8 * F(-2) + 13 * F(-1) - 13 * F(1) + 8 * F(2) - F(3)) /
             (8 * h * h * h);
    case 4:
      return (-F(-3) + 12 * F(-2) - 39 * F(-1) + 56 * F(0) - 39 * F(1) +
              12 * F(2) - F(3)) /
             (6 * h * h * h * h);
    default:
      throw std::invalid_argument("fd_derivative supports k = 1..4");
  }
}

inline double fd_step(double x) { return std::max(1e-2, 1e-2 * std::abs(x)); }

// 1e-5 relative tolerance plus the cancellation noise floor of a k-th
// difference quotient: the stencil sums O(10) terms of size |f(x)|, so its
// rounding error is of order |f(x)| * eps / h^k and no finite-difference
// scheme can see derivative magnitudes below that.
inline double fd_tolerance(double ad_value, double f_at_x, double h, int k) {
  const double eps = 2.220446049250313e-16;
  return 1e-5 * std::abs(ad_value) +
         128.0 * (1.0 + std::abs(f_at_x)) * eps / std::pow(h, k);
}

// 50-point geometric grid on [1e-4, 4]: dense near the origin where the
// class definitions bite, capped where the proportional step h = 0.01*x
// would outgrow the unit-scale features of the corpus symbols.
inline std::vector<double> fd_grid() {
  std::vector<double> xs;
  const double lo = 1e-4, hi = 4.0;
  const int n = 50;
  xs.reserve(n);
  for (int i = 0; i < n; ++i) {
    xs.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  }
  return xs;
}

}  // namespace fixtures
