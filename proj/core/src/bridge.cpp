#include "wts/bridge.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "wts/errors.hpp"

namespace wts {

ShiftWeights beta_alpha(const Expr& phi, int n_terms) {
  if (n_terms < 2) throw std::invalid_argument("need at least 2 moments");
  ShiftWeights w;
  w.beta.reserve(static_cast<std::size_t>(n_terms));
  for (int n = 0; n < n_terms; ++n) {
    double b = eval(phi, static_cast<double>(n));
    if (!(b > 0.0)) {
      throw DomainError("symbol must be positive at integer points");
    }
    w.beta.push_back(b);
  }
  w.beta_normalized.reserve(w.beta.size());
  for (double b : w.beta) w.beta_normalized.push_back(b / w.beta[0]);
  w.alpha.reserve(w.beta.size() - 1);
  w.dual_alpha.reserve(w.beta.size() - 1);
  for (std::size_t n = 0; n + 1 < w.beta.size(); ++n) {
    double a = std::sqrt(w.beta[n + 1] / w.beta[n]);
    w.alpha.push_back(a);
    w.dual_alpha.push_back(1.0 / a);
  }
  return w;
}

std::vector<double> dual_moments(const ShiftWeights& w) {
  std::vector<double> out;
  out.reserve(w.beta.size());
  for (double b : w.beta) out.push_back(w.beta[0] / b);
  return out;
}

std::vector<double> forward_differences(std::span<const double> a, int k) {
  if (k < 0) throw std::invalid_argument("difference order must be >= 0");
  if (static_cast<std::size_t>(k) >= a.size() + 1 && k != 0) {
    throw std::invalid_argument("difference order exceeds sequence length");
  }
  std::vector<double> d(a.begin(), a.end());
  for (int pass = 0; pass < k; ++pass) {
    if (d.size() < 2) throw std::invalid_argument("difference order exceeds sequence length");
    for (std::size_t i = 0; i + 1 < d.size(); ++i) d[i] = d[i + 1] - d[i];
    d.pop_back();
  }
  return d;
}

double seq_alternating_sum(std::span<const double> a, int k, int n) {
  if (k < 0 || n < 0 || static_cast<std::size_t>(n + k) >= a.size()) {
    throw std::invalid_argument("index out of range");
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 0; j <= k; ++j) {
    sum += sign * binomial(k, j) * a[static_cast<std::size_t>(n + j)];
    sign = -sign;
  }
  return sum;
}

namespace {

struct SeqOrderScan {
  double epsilon = 0.0;
  // Extremal certified samples on each side of the tolerance band.  The
  // witness is the most violating index, not the first: small-magnitude
  // violations can appear many indices before the decisive ones, and the
  // extremal sample is the robust counterexample.
  std::optional<Witness> worst_negative;
  std::optional<Witness> worst_positive;
};

SeqOrderScan scan_order(std::span<const double> a, int k, double tol_scale) {
  SeqOrderScan scan;
  const int count = static_cast<int>(a.size()) - k;
  double max_abs = 0.0;
  std::vector<double> values(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    values[static_cast<std::size_t>(n)] = seq_alternating_sum(a, k, n);
    max_abs = std::max(max_abs, std::abs(values[static_cast<std::size_t>(n)]));
  }
  scan.epsilon = tol_scale * (1.0 + max_abs);
  for (int n = 0; n < count; ++n) {
    double v = values[static_cast<std::size_t>(n)];
    if (v < -scan.epsilon &&
        (!scan.worst_negative || v < scan.worst_negative->value)) {
      scan.worst_negative = Witness{static_cast<double>(n), v, std::nullopt};
    }
    if (v > scan.epsilon &&
        (!scan.worst_positive || v > scan.worst_positive->value)) {
      scan.worst_positive = Witness{static_cast<double>(n), v, std::nullopt};
    }
  }
  return scan;
}

}  // namespace

SeqVerdicts seq_classify(std::span<const double> a, int max_order,
                         double tol_scale) {
  if (a.size() < 2) throw std::invalid_argument("need at least 2 sequence terms");
  SeqVerdicts v;
  v.checked_order = std::min<int>(max_order, static_cast<int>(a.size()) - 1);

  v.completely_monotone = {Verdict::Holds, std::nullopt, std::nullopt};
  for (int k = 0; k <= v.checked_order; ++k) {
    SeqOrderScan scan = scan_order(a, k, tol_scale);
    if (scan.worst_negative) {
      v.completely_monotone = {Verdict::Fails, k, scan.worst_negative};
      break;
    }
  }

  v.completely_alternating = {Verdict::Holds, std::nullopt, std::nullopt};
  for (int k = 1; k <= v.checked_order; ++k) {
    SeqOrderScan scan = scan_order(a, k, tol_scale);
    if (scan.worst_positive) {
      v.completely_alternating = {Verdict::Fails, k, scan.worst_positive};
      break;
    }
  }
  return v;
}

double leibniz_residual(std::span<const double> f, std::span<const double> g,
                        int n) {
  if (n < 0) throw std::invalid_argument("order must be >= 0");
  if (f.size() != g.size()) throw std::invalid_argument("sequences must match");
  if (static_cast<std::size_t>(n) >= f.size()) {
    throw std::invalid_argument("order exceeds sequence length");
  }

  std::vector<double> product(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) product[i] = f[i] * g[i];
  std::vector<double> lhs = forward_differences(product, n);

  // diff^k f tables for k = 0..n
  std::vector<std::vector<double>> df(static_cast<std::size_t>(n) + 1);
  std::vector<std::vector<double>> dg(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    df[static_cast<std::size_t>(k)] = forward_differences(f, k);
    dg[static_cast<std::size_t>(k)] = forward_differences(g, k);
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    double rhs = 0.0;
    for (int k = 0; k <= n; ++k) {
      rhs += binomial(n, k) * df[static_cast<std::size_t>(k)][i] *
             dg[static_cast<std::size_t>(n - k)][i + static_cast<std::size_t>(k)];
    }
    worst = std::max(worst, std::abs(lhs[i] - rhs));
  }
  return worst;
}

void write_weights_csv(const ShiftWeights& w, std::ostream& out) {
  out << "n,beta,alpha,dual_alpha\n";
  char buf[120];
  for (std::size_t n = 0; n < w.beta.size(); ++n) {
    if (n < w.alpha.size()) {
      std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g\n", n, w.beta[n],
                    w.alpha[n], w.dual_alpha[n]);
    } else {
      std::snprintf(buf, sizeof(buf), "%zu,%.17g,,\n", n, w.beta[n]);
    }
    out << buf;
  }
}

}  // namespace wts
