#include <benchmark/benchmark.h>

#include "wts/classify.hpp"
#include "wts/expr.hpp"

namespace {

void BM_ClassifyDerivativeRoute(benchmark::State& state) {
  const wts::Expr phi = wts::parse("log(x+2)");
  wts::ClassifyConfig cfg;
  cfg.order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    wts::ClassificationReport r = wts::classify(phi, cfg);
    benchmark::DoNotOptimize(r.checked_order);
  }
}
BENCHMARK(BM_ClassifyDerivativeRoute)->Arg(4)->Arg(8)->Arg(12);

void BM_ClassifyDifferenceRoute(benchmark::State& state) {
  const wts::Expr phi = wts::parse("log(x+2)");
  wts::PointFn f = [phi](double x) { return wts::eval(phi, x); };
  wts::ClassifyConfig cfg;
  cfg.order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    wts::ClassificationReport r = wts::classify_pointwise(f, cfg);
    benchmark::DoNotOptimize(r.checked_order);
  }
}
BENCHMARK(BM_ClassifyDifferenceRoute)->Arg(4)->Arg(8);

void BM_CrossCheck(benchmark::State& state) {
  const wts::Expr phi = wts::parse("sqrt(x+1)");
  for (auto _ : state) {
    wts::CrossCheckReport r = wts::cross_check(phi, 6);
    benchmark::DoNotOptimize(r.all_compatible);
  }
}
BENCHMARK(BM_CrossCheck);

}  // namespace
