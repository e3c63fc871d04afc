#pragma once

#include <span>
#include <vector>

namespace wts {

// Dense row-major matrix, just large enough for the fitting problems here.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

// Unconstrained least squares min ||A x - b|| via Householder QR with column
// pivoting suppressed (A is expected to have full column rank on the passive
// sets used by nnls).
std::vector<double> least_squares(const Matrix& A, std::span<const double> b);

struct NnlsResult {
  std::vector<double> x;      // coefficients, all >= 0
  double residual_norm = 0.0; // ||A x - b||_2
  int iterations = 0;
  bool converged = false;     // false when the iteration cap was hit
};

// Non-negative least squares min ||A x - b|| s.t. x >= 0, by the active-set
// method of Lawson and Hanson.  Ties in the gradient are broken toward the
// smallest column index, and the iteration count is capped at 10 * cols.
//
// grad_tol is the stationarity threshold on the dual vector A^T (b - A x);
// pass a negative value (the default) to derive it from the problem scale as
// 1e-10 * (1 + max |A^T b|).  Callers embedding high-weight penalty rows
// should pass a tolerance computed from their data rows, since the penalty
// otherwise inflates the automatic scale.
NnlsResult nnls(const Matrix& A, std::span<const double> b,
                double grad_tol = -1.0);

}  // namespace wts
