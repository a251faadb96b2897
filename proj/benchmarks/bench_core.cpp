#include <benchmark/benchmark.h>

#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "widom/arcs.hpp"
#include "widom/cheb_oracle.hpp"
#include "widom/construct.hpp"
#include "widom/domain.hpp"
#include "widom/newton_roots.hpp"
#include "widom/norms.hpp"

using namespace widom;

namespace {

const ExteriorMap& ellipse() {
  static const ExteriorMap map = to_map(Ellipse{2.0, 1.0});
  return map;
}

std::vector<cplx> zeros_for(int m) { return build_outside(ellipse(), 2, m, 4.0 * std::numbers::pi).zeros; }

void BM_log_abs_poly(benchmark::State& state) {
  const std::vector<cplx> zeros = zeros_for(static_cast<int>(state.range(0)));
  const cplx z = psi(ellipse(), std::polar(1.0, 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(log_abs_poly(zeros, z));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(zeros.size()));
}
BENCHMARK(BM_log_abs_poly)->Arg(64)->Arg(512)->Arg(3017);

void BM_sup_norm(benchmark::State& state) {
  const std::vector<cplx> zeros = zeros_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sup_norm_log(zeros, ellipse(), 8 * static_cast<int>(zeros.size()), 1e-10));
  }
}
BENCHMARK(BM_sup_norm)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_moments(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const ArcSystem arcs = build_arcs(ellipse(), m, 2, kStrictC);
  for (auto _ : state) benchmark::DoNotOptimize(moment_table(arcs));
  state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_moments)->Arg(3017)->Unit(benchmark::kMillisecond);

void BM_find_roots(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<cplx> coeffs(q);
  for (cplx& a : coeffs) a = {g(rng), g(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(find_roots(coeffs));
}
BENCHMARK(BM_find_roots)->Arg(2)->Arg(3)->Arg(8);

void BM_construction(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_construction(ellipse(), 2, m, kStrictC));
}
BENCHMARK(BM_construction)->Arg(3017)->Unit(benchmark::kMillisecond);

void BM_lawson(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lawson_chebyshev(ellipse(), n));
}
BENCHMARK(BM_lawson)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
