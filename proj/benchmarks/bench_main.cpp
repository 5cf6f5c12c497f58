#include <benchmark/benchmark.h>

#include <cmath>

#include "jetlab/domains.hpp"
#include "jetlab/functions.hpp"
#include "jetlab/glue.hpp"
#include "jetlab/hestenes.hpp"
#include "jetlab/spaces.hpp"

namespace {

void BM_SolveCoefficients(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jetlab::solveCoefficients(order));
}
BENCHMARK(BM_SolveCoefficients)->Arg(2)->Arg(6)->Arg(12);

void BM_CantorPhi(benchmark::State& state) {
  double s = 0.0;
  for (auto _ : state) {
    s = std::fmod(s + 0.6180339887498949, 1.0);
    benchmark::DoNotOptimize(jetlab::cantorPhi(s));
  }
}
BENCHMARK(BM_CantorPhi);

void BM_NormF(benchmark::State& state) {
  const double h = std::ldexp(1.0, -static_cast<int>(state.range(0)));
  const jetlab::Domain d = jetlab::buildComb(6, h);
  const jetlab::SampledJet j = jetlab::sample(jetlab::example3Jet(6), d.q, 1);
  for (auto _ : state) benchmark::DoNotOptimize(jetlab::normF(j));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * d.q.count()));
}
BENCHMARK(BM_NormF)->Arg(9)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_GlobalExtendRectangle(benchmark::State& state) {
  const double h = std::ldexp(1.0, -static_cast<int>(state.range(0)));
  const jetlab::Domain d = jetlab::buildRegular(jetlab::DomainSpec::rectangle(0, 1, 0, 1), h, 0.5);
  const jetlab::AnalyticJet x = jetlab::linearJet();
  for (auto _ : state) benchmark::DoNotOptimize(jetlab::globalExtend(x, d, 1));
}
BENCHMARK(BM_GlobalExtendRectangle)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_GlobalExtendDisk(benchmark::State& state) {
  const double h = std::ldexp(1.0, -static_cast<int>(state.range(0)));
  const jetlab::Domain d = jetlab::buildRegular(jetlab::DomainSpec::disk({0, 0}, 1.0), h, 0.1);
  const jetlab::AnalyticJet x = jetlab::sinCosJet();
  for (auto _ : state) benchmark::DoNotOptimize(jetlab::globalExtend(x, d, 2));
}
BENCHMARK(BM_GlobalExtendDisk)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
