// Serial reference against the OpenMP path for the main kernels.
// Arg(0) = serial, Arg(1) = parallel.

#include <benchmark/benchmark.h>

#include "affinv/analysis.hpp"
#include "affinv/metric.hpp"
#include "affinv/worked_examples.hpp"

using namespace affinv;

namespace {

Execution exec_of(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

MappingInstance geodesic_instance() {
  ConnectionSpace s = generalized_christoffel(GeneralizedMetric(example1_metric()));
  TensorField psi(3, 0, 1);
  for (int j = 0; j < 3; ++j) psi.set({j}, Expr(1) / Expr::coordinate(j));
  return MappingInstance(s, EquitorsionGeodesic{psi});
}

TensorField dense_connection(int n) {
  TensorField l(n, 1, 2);
  for (std::size_t k = 0; k < l.size(); ++k) {
    Index idx = l.unflatten(k);
    Expr e = Expr::coordinate(idx[0]) * Expr::coordinate(idx[1]) + Expr(idx[2] + 1) * Expr::coordinate(idx[2]);
    l.set(idx, e / (Expr(1) + Expr::coordinate(idx[1]).pow(2)));
  }
  return l;
}

void BM_christoffel(benchmark::State& state) {
  ExecutionScope scope(exec_of(state));
  GeneralizedMetric g(example1_metric());
  for (auto _ : state) benchmark::DoNotOptimize(christoffel_symbols(g));
}

void BM_curvature(benchmark::State& state) {
  ExecutionScope scope(exec_of(state));
  TensorField l = sym_part(dense_connection(3), 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(curvature_tensor(l));
}

void BM_weyl_family(benchmark::State& state) {
  ExecutionScope scope(exec_of(state));
  MappingInstance inst = geodesic_instance();
  SideData d = source_data(inst);
  ClassSelector sel;
  sel.p1 = {2, 1, 2};
  for (auto _ : state) benchmark::DoNotOptimize(weyl_family(sel, {1, 2, 3, 5, 7}, inst.source(), d));
}

void BM_family_sweep(benchmark::State& state) {
  MappingInstance inst = geodesic_instance();
  auto pts = sample_points(3, kDefaultPoints);
  const Execution e = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(family_sweep(inst, 2, {1, 2, 3, 5, 7}, pts, e));
}

void BM_run_suite(benchmark::State& state) {
  MappingInstance inst = geodesic_instance();
  auto pts = sample_points(3, kDefaultPoints);
  const Execution e = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(inst, {1, 2, 3, 5, 7}, pts, e));
}

void BM_rank(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rank_exact(coefficient_matrix({1, 2, 3, 5, 7})));
}

}  // namespace

BENCHMARK(BM_christoffel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_curvature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_weyl_family)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_family_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_run_suite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
