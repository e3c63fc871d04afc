#include <benchmark/benchmark.h>

#include <cmath>

#include "wts/expr.hpp"
#include "wts/opsim.hpp"

namespace {

wts::SampledFunction gaussian_bump(const wts::Grid& grid) {
  wts::SampledFunction f{grid, std::vector<double>(grid.n_points)};
  for (int i = 0; i < grid.n_points; ++i) {
    double x = grid.node(i);
    f.values[i] = std::exp(-(x - 5.0) * (x - 5.0));
  }
  return f;
}

void BM_ApplySt(benchmark::State& state) {
  const wts::Expr phi = wts::parse("sqrt(x+1)");
  wts::Grid grid = wts::make_grid(20.0, static_cast<int>(state.range(0)));
  wts::SampledFunction f = gaussian_bump(grid);
  for (auto _ : state) {
    wts::SampledFunction g = wts::apply_st(phi, 0.5, f);
    benchmark::DoNotOptimize(g.values.back());
  }
}
BENCHMARK(BM_ApplySt)->Arg(2001)->Arg(20001);

void BM_QuadFormBn(benchmark::State& state) {
  const wts::Expr phi = wts::parse("log(x+2)");
  wts::Grid grid = wts::make_grid(20.0, 2001);
  wts::SampledFunction f = gaussian_bump(grid);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    wts::QuadFormPair p = wts::quad_form_bn(phi, n, 0.5, f);
    benchmark::DoNotOptimize(p.via_operators);
    benchmark::DoNotOptimize(p.via_multiplier);
  }
}
BENCHMARK(BM_QuadFormBn)->Arg(2)->Arg(4);

void BM_SemigroupResidual(benchmark::State& state) {
  const wts::Expr phi = wts::parse("exp(-x)");
  wts::Grid grid = wts::make_grid(20.0, 2001);
  wts::SampledFunction f = gaussian_bump(grid);
  for (auto _ : state) {
    double r = wts::semigroup_residual(phi, 0.25, 0.5, f);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SemigroupResidual);

}  // namespace
