#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "wts/nnls.hpp"
#include "wts/repfit.hpp"

namespace {

// Laplace-kernel design matrix: A(i, j) = exp(-x_i * a_j).
wts::Matrix laplace_matrix(int rows, const std::vector<double>& atoms) {
  wts::Matrix a(rows, static_cast<int>(atoms.size()));
  for (int i = 0; i < rows; ++i) {
    double x = 20.0 * i / (rows - 1);
    for (int j = 0; j < a.cols; ++j) a.at(i, j) = std::exp(-x * atoms[j]);
  }
  return a;
}

void BM_NnlsLaplace(benchmark::State& state) {
  const int rows = 201;
  std::vector<double> atoms = wts::log_spaced_atoms(1e-3, 1e2, static_cast<int>(state.range(0)));
  wts::Matrix a = laplace_matrix(rows, atoms);
  std::vector<double> b(rows);
  for (int i = 0; i < rows; ++i) {
    double x = 20.0 * i / (rows - 1);
    b[i] = 0.7 * std::exp(-0.5 * x) + 0.3 * std::exp(-2.0 * x);
  }
  for (auto _ : state) {
    wts::NnlsResult r = wts::nnls(a, b);
    benchmark::DoNotOptimize(r.residual_norm);
  }
}
BENCHMARK(BM_NnlsLaplace)->Arg(20)->Arg(60);

void BM_QrLeastSquares(benchmark::State& state) {
  const int rows = 201;
  std::vector<double> atoms =
      wts::log_spaced_atoms(1e-2, 1e1, static_cast<int>(state.range(0)));
  wts::Matrix a = laplace_matrix(rows, atoms);
  std::vector<double> b(rows, 1.0);
  for (auto _ : state) {
    std::vector<double> x = wts::least_squares(a, b);
    benchmark::DoNotOptimize(x.back());
  }
}
BENCHMARK(BM_QrLeastSquares)->Arg(10)->Arg(30);

}  // namespace
