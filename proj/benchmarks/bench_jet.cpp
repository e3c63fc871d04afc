#include <benchmark/benchmark.h>

#include "wts/expr.hpp"
#include "wts/jet.hpp"

namespace {

void BM_EvalJet(benchmark::State& state) {
  const wts::Expr e = wts::parse("2*x - log(cosh(x-10)) + 100");
  const int order = static_cast<int>(state.range(0));
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-9;  // defeat caching of a fixed base point
    wts::Jet j = wts::eval_jet(e, 3.0 + x, order);
    benchmark::DoNotOptimize(j.coeff(order));
  }
}
BENCHMARK(BM_EvalJet)->Arg(4)->Arg(8)->Arg(16);

void BM_JetArithmetic(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  wts::Jet a = wts::Jet::variable(1.25, order);
  for (auto _ : state) {
    wts::Jet b = wts::exp(a * a) / (a + 2.0);
    benchmark::DoNotOptimize(b.coeff(order));
  }
}
BENCHMARK(BM_JetArithmetic)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
