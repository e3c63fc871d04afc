#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "wts/classify.hpp"
#include "wts/expr.hpp"

namespace wts {

// Restriction of the semigroup to integer times turns it into a unilateral
// weighted shift: moments beta_n = phi(n), shift weights
// alpha_n = sqrt(beta_{n+1} / beta_n), and dual shift weights 1/alpha_n.
struct ShiftWeights {
  std::vector<double> beta;             // beta[n] = phi(n)
  std::vector<double> beta_normalized;  // beta[n] / beta[0]
  std::vector<double> alpha;            // size beta.size() - 1
  std::vector<double> dual_alpha;       // 1 / alpha[n]
};

// n_terms >= 2 values of beta; throws DomainError unless phi(n) > 0.
ShiftWeights beta_alpha(const Expr& phi, int n_terms);

// Moments of the dual shift: beta[0] / beta[n].
std::vector<double> dual_moments(const ShiftWeights& w);

// k-fold forward difference of a sequence (step 1); size shrinks by k.
std::vector<double> forward_differences(std::span<const double> a, int k);

// (-1)^k (forward k-th difference) at index n:
//   sum_{j=0}^{k} (-1)^j C(k,j) a_{n+j}
double seq_alternating_sum(std::span<const double> a, int k, int n);

struct SeqVerdicts {
  ClassVerdict completely_monotone;     // (-1)^k diff^k >= 0 for all k
  ClassVerdict completely_alternating;  // (-1)^k diff^k <= 0 for k >= 1
  int checked_order = 0;
};

// Classify a positive sequence by its alternating differences.  The order
// actually checked is min(max_order, len - 1).
SeqVerdicts seq_classify(std::span<const double> a, int max_order,
                         double tol_scale = 1e-9);

// Discrete Leibniz rule for step-1 differences:
//   diff^n (f g)(i) = sum_k C(n,k) diff^k f(i) * diff^{n-k} g(i + k).
// Returns the largest absolute deviation over all admissible i.
double leibniz_residual(std::span<const double> f, std::span<const double> g,
                        int n);

// CSV with header "n,beta,alpha,dual_alpha"; the alpha columns are empty on
// the last row.
void write_weights_csv(const ShiftWeights& w, std::ostream& out);

}  // namespace wts
