#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "wts/expr.hpp"
#include "wts/nnls.hpp"
#include "wts/opsim.hpp"

namespace wts {

struct MeasureAtom {
  double location = 0.0;  // a >= 0
  double weight = 0.0;    // w >= 0
};

// Finite nonnegative measure, atoms sorted by ascending location.
struct DiscreteMeasure {
  std::vector<MeasureAtom> atoms;

  double total_mass() const;
  // Atom with the largest weight; throws when empty.
  const MeasureAtom& dominant() const;
};

// phi(0) + c*x + integral of (1 - e^{-ax}) against the measure.
struct LevyTriple {
  double phi0 = 0.0;
  double drift = 0.0;  // c >= 0
  DiscreteMeasure measure;
};

// Log-spaced fitting grid, default shape for Laplace-type fits.
std::vector<double> log_spaced_atoms(double lo = 1e-3, double hi = 1e2,
                                     int count = 60);

struct CmFit {
  DiscreteMeasure measure;
  double residual = 0.0;  // ||A w - phi|| / ||phi||
  int iterations = 0;
  bool converged = false;
};

// Laplace-transform fit: phi(x) ~ sum_j w_j e^{-a_j x}, w >= 0.
CmFit fit_cm(const SampledFunction& samples, std::span<const double> atom_grid);

struct CaFit {
  LevyTriple triple;
  double residual = 0.0;  // relative to || phi - phi(0) ||
  int iterations = 0;
  bool converged = false;
};

// Levy-form fit: phi(x) - phi(0) ~ c*x + sum_j w_j (1 - e^{-a_j x}),
// with c >= 0 and w >= 0; phi(0) is read from the sample at x = 0.
CaFit fit_ca(const SampledFunction& samples, std::span<const double> atom_grid);

struct MomentFit {
  DiscreteMeasure measure;    // probability measure on [0, a_max]
  double normalization = 0.0; // phi(0), divided out before fitting
  double residual = 0.0;      // relative, on the normalized samples
  int iterations = 0;
  bool converged = false;
};

// Moment-transform fit: phi(x)/phi(0) ~ sum_j rho_j s_j^x with rho >= 0 and
// sum rho_j ~ 1 (enforced by a high-weight appended row).
MomentFit fit_subnormal(const SampledFunction& samples, double a_max,
                        std::span<const double> s_grid);

// Forward evaluation of the representations.
SampledFunction synthesize(const DiscreteMeasure& measure, const Grid& grid);
SampledFunction synthesize(const LevyTriple& triple, const Grid& grid);
// Moment transform, scaled back by the normalization phi(0).
SampledFunction synthesize_moment(const DiscreteMeasure& measure,
                                  double normalization, const Grid& grid);

// |w_t(x_probe) - 1| where w_t(x) = sqrt(phi(x)/phi(x-t)); tends to 0 as
// x_probe grows for completely alternating symbols.
double weight_limit_check(const Expr& phi, double t, double x_probe);

// Guidance for choosing a_max: sup over the grid of phi(x+1)/phi(x).
double growth_estimate(const Expr& phi, double x_max = 20.0, int points = 201);

// CSV with header "a,weight", one row per atom.
void write_measure_csv(const DiscreteMeasure& measure, std::ostream& out);

}  // namespace wts
