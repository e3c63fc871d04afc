#pragma once

#include <iosfwd>
#include <vector>

#include "wts/classify.hpp"
#include "wts/expr.hpp"

namespace wts {

// Uniform grid 0 = x_0 < x_1 < ... < x_{n-1} = x_max used to discretise
// L^2(R+).  Translation steps must be grid aligned (t = k * spacing), which
// keeps every operator application exact on the grid: the only discretisation
// error in the simulation lives in the trapezoid quadrature.
struct Grid {
  double x_max = 0.0;
  int n_points = 0;

  double spacing() const { return x_max / (n_points - 1); }
  double node(int i) const { return x_max * i / (n_points - 1); }
  bool operator==(const Grid&) const = default;
};

Grid make_grid(double x_max, int n_points);

struct SampledFunction {
  Grid grid;
  std::vector<double> values;
};

SampledFunction sample(const Expr& e, const Grid& grid);
SampledFunction sample(const PointFn& f, const Grid& grid);

// Number of grid steps in t; throws GridError when t is not aligned.
int aligned_steps(const Grid& grid, double t);

// Weight of the translation operator: w_t(x) = sqrt(phi(x) / phi(x - t))
// for x >= t, and 0 on [0, t) where the operator image vanishes.
SampledFunction weight_function(const Expr& phi, double t, const Grid& grid);

// (S_t f)(x) = w_t(x) f(x - t), truncated to 0 on [0, t).
SampledFunction apply_st(const Expr& phi, double t, const SampledFunction& f);

// (S_t^* f)(x) = sqrt(phi(x + t) / phi(x)) f(x + t); samples that would fall
// beyond x_max are truncated to 0.
SampledFunction apply_adjoint(const Expr& phi, double t, const SampledFunction& f);

// S_t applied k times (exact composition on an aligned grid).
SampledFunction apply_st_power(const Expr& phi, double t, int k,
                               const SampledFunction& f);

// Trapezoid inner product and norm on the grid.
double inner(const SampledFunction& f, const SampledFunction& g);
double norm(const SampledFunction& f);

// B_n(S_t) = sum_k (-1)^k C(n,k) S_t*^k S_t^k acts as multiplication by
//   m_n(x) = D_n(x, t) / phi(x).
SampledFunction multiplier_bn(const Expr& phi, int n, double t, const Grid& grid);

struct QuadFormPair {
  double via_operators = 0.0;   // sum_k (-1)^k C(n,k) ||S_t^k f||^2
  double via_multiplier = 0.0;  // integral of m_n(x) f(x)^2
};

QuadFormPair quad_form_bn(const Expr& phi, int n, double t,
                          const SampledFunction& f);

// Operator norm on the grid: max weight over nodes x >= t.
double norm_st(const Expr& phi, double t, const Grid& grid);

// max_i |(S_t S_s f - S_{t+s} f)(x_i)|; zero up to rounding on aligned grids.
double semigroup_residual(const Expr& phi, double t, double s,
                          const SampledFunction& f);

// CSV with header "x,value", one row per node, 17 significant digits.
void write_csv(const SampledFunction& f, std::ostream& out);
SampledFunction read_sampled_csv(std::istream& in);

}  // namespace wts
