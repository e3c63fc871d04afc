#include "wts/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wts {

std::vector<double> least_squares(const Matrix& A, std::span<const double> b) {
  if (static_cast<int>(b.size()) != A.rows) {
    throw std::invalid_argument("rhs size does not match matrix rows");
  }
  if (A.cols > A.rows) {
    throw std::invalid_argument("least_squares expects rows >= cols");
  }
  const int m = A.rows, n = A.cols;
  Matrix R = A;
  std::vector<double> rhs(b.begin(), b.end());

  // Householder triangularisation, reflectors applied to the rhs on the fly.
  for (int k = 0; k < n; ++k) {
    double normx = 0.0;
    for (int i = k; i < m; ++i) normx = std::hypot(normx, R.at(i, k));
    if (normx == 0.0) continue;
    double alpha = R.at(k, k) >= 0.0 ? -normx : normx;
    std::vector<double> v(static_cast<std::size_t>(m - k));
    v[0] = R.at(k, k) - alpha;
    for (int i = k + 1; i < m; ++i) v[static_cast<std::size_t>(i - k)] = R.at(i, k);
    double vtv = 0.0;
    for (double vi : v) vtv += vi * vi;
    if (vtv == 0.0) continue;
    for (int j = k; j < n; ++j) {
      double dot = 0.0;
      for (int i = k; i < m; ++i) dot += v[static_cast<std::size_t>(i - k)] * R.at(i, j);
      double c = 2.0 * dot / vtv;
      for (int i = k; i < m; ++i) R.at(i, j) -= c * v[static_cast<std::size_t>(i - k)];
    }
    double dot = 0.0;
    for (int i = k; i < m; ++i) dot += v[static_cast<std::size_t>(i - k)] * rhs[static_cast<std::size_t>(i)];
    double c = 2.0 * dot / vtv;
    for (int i = k; i < m; ++i) rhs[static_cast<std::size_t>(i)] -= c * v[static_cast<std::size_t>(i - k)];
    R.at(k, k) = alpha;
  }

  // Back substitution; a vanishing pivot marks a (numerically) dependent
  // column whose coefficient is pinned to zero.
  double scale = 0.0;
  for (int k = 0; k < n; ++k) scale = std::max(scale, std::abs(R.at(k, k)));
  double pivot_tol = scale * 1e-13;
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int k = n - 1; k >= 0; --k) {
    double s = rhs[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < n; ++j) s -= R.at(k, j) * x[static_cast<std::size_t>(j)];
    if (std::abs(R.at(k, k)) <= pivot_tol) {
      x[static_cast<std::size_t>(k)] = 0.0;
    } else {
      x[static_cast<std::size_t>(k)] = s / R.at(k, k);
    }
  }
  return x;
}

namespace {

// Compensated product accumulator ("Dot2" of Ogita, Rump and Oishi): each
// product is split with fma into value + rounding error, and the running sum
// is Neumaier-compensated, so the total is as accurate as if computed in
// twice the working precision.  Residuals and gradients need this because
// the fitting problems embed constraint rows weighted 1e6 above the data:
// naively rounded products leave absolute noise around weight * eps, which
// masks data-scale descent directions and stalls the active-set iteration
// at spurious stationary points.
struct Dot2 {
  double s = 0.0;
  double c = 0.0;

  void add_product(double a, double b) {
    double p = a * b;
    double e = std::fma(a, b, -p);
    double t = s + p;
    if (std::abs(s) >= std::abs(p)) {
      c += (s - t) + p;
    } else {
      c += (p - t) + s;
    }
    s = t;
    c += e;
  }

  double value() const { return s + c; }
};

std::vector<double> residual_vector(const Matrix& A, std::span<const double> b,
                                    const std::vector<double>& x) {
  std::vector<double> r(static_cast<std::size_t>(A.rows), 0.0);
  for (int i = 0; i < A.rows; ++i) {
    Dot2 acc;
    acc.s = b[static_cast<std::size_t>(i)];
    for (int j = 0; j < A.cols; ++j) {
      acc.add_product(-A.at(i, j), x[static_cast<std::size_t>(j)]);
    }
    r[static_cast<std::size_t>(i)] = acc.value();
  }
  return r;
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double vi : v) s += vi * vi;
  return std::sqrt(s);
}

}  // namespace

NnlsResult nnls(const Matrix& A, std::span<const double> b, double grad_tol) {
  if (static_cast<int>(b.size()) != A.rows) {
    throw std::invalid_argument("rhs size does not match matrix rows");
  }
  if (A.cols == 0) throw std::invalid_argument("empty atom grid");

  const int n = A.cols;
  const int iteration_cap = 10 * n;

  NnlsResult result;
  result.x.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  // Columns rejected during the current candidate search because entering
  // them produced no progress (their least-squares coefficient came back
  // non-positive at the current point).  Cleared whenever x changes.
  std::vector<bool> banned(static_cast<std::size_t>(n), false);

  if (grad_tol < 0.0) {
    // Gradient tolerance relative to the problem scale.
    double scale = 0.0;
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int i = 0; i < A.rows; ++i) v += A.at(i, j) * b[static_cast<std::size_t>(i)];
      scale = std::max(scale, std::abs(v));
    }
    grad_tol = 1e-10 * (1.0 + scale);
  }

  auto solve_passive = [&](std::vector<int>& cols) -> std::vector<double> {
    cols.clear();
    for (int j = 0; j < n; ++j) {
      if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
    }
    Matrix sub(A.rows, static_cast<int>(cols.size()));
    for (int i = 0; i < A.rows; ++i) {
      for (std::size_t jj = 0; jj < cols.size(); ++jj) {
        sub.at(i, static_cast<int>(jj)) = A.at(i, cols[jj]);
      }
    }
    return least_squares(sub, b);
  };

  std::vector<int> cols;
  while (result.iterations < iteration_cap) {
    // Most positive component of A^T (b - A x) among rejected columns,
    // smallest index on ties.
    std::vector<double> r = residual_vector(A, b, result.x);
    int best = -1;
    double best_w = grad_tol;
    for (int j = 0; j < n; ++j) {
      if (passive[static_cast<std::size_t>(j)] || banned[static_cast<std::size_t>(j)]) continue;
      Dot2 acc;
      for (int i = 0; i < A.rows; ++i) acc.add_product(A.at(i, j), r[static_cast<std::size_t>(i)]);
      double w = acc.value();
      if (w > best_w) {
        best_w = w;
        best = j;
      }
    }
    if (best < 0) {
      result.converged = true;
      break;
    }
    passive[static_cast<std::size_t>(best)] = true;

    // Inner loop: retreat along x -> z until the passive solution is
    // strictly feasible, dropping columns whose coefficient hits zero.
    for (;;) {
      ++result.iterations;
      std::vector<double> z = solve_passive(cols);
      // If the just-entered column's coefficient is not positive at the
      // current point, entering it cannot make progress (the retreat step
      // below would be zero and the outer loop would re-select it forever).
      // Reject it for the remainder of this candidate search.
      if (result.x[static_cast<std::size_t>(best)] == 0.0) {
        std::size_t entered = 0;
        for (std::size_t jj = 0; jj < cols.size(); ++jj) {
          if (cols[jj] == best) entered = jj;
        }
        if (z[entered] <= 0.0) {
          passive[static_cast<std::size_t>(best)] = false;
          banned[static_cast<std::size_t>(best)] = true;
          break;
        }
      }
      bool all_positive = true;
      for (double zj : z) {
        if (zj <= 0.0) {
          all_positive = false;
          break;
        }
      }
      if (all_positive) {
        std::fill(result.x.begin(), result.x.end(), 0.0);
        for (std::size_t jj = 0; jj < cols.size(); ++jj) {
          result.x[static_cast<std::size_t>(cols[jj])] = z[jj];
        }
        std::fill(banned.begin(), banned.end(), false);
        break;
      }
      double step = std::numeric_limits<double>::infinity();
      for (std::size_t jj = 0; jj < cols.size(); ++jj) {
        if (z[jj] <= 0.0) {
          double xj = result.x[static_cast<std::size_t>(cols[jj])];
          step = std::min(step, xj / (xj - z[jj]));
        }
      }
      for (std::size_t jj = 0; jj < cols.size(); ++jj) {
        double& xj = result.x[static_cast<std::size_t>(cols[jj])];
        xj += step * (z[jj] - xj);
        if (z[jj] <= 0.0 && xj <= 1e-12 * (1.0 + std::abs(z[jj]))) xj = 0.0;
      }
      for (int j : cols) {
        if (result.x[static_cast<std::size_t>(j)] <= 0.0) {
          result.x[static_cast<std::size_t>(j)] = 0.0;
          passive[static_cast<std::size_t>(j)] = false;
        }
      }
      if (result.iterations >= iteration_cap) break;
    }
  }

  result.residual_norm = norm2(residual_vector(A, b, result.x));
  return result;
}

}  // namespace wts
