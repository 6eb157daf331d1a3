#include <benchmark/benchmark.h>
#include <omp.h>

#include "whittaker/solver.hpp"

using namespace whittaker;

namespace {

ModulePresentationPtr sl3_module(int omega, int casimir) {
  static const auto pbw = std::make_shared<PbwAlgebra>(build_root_system("A", 2));
  ModuleDescriptor d;
  d.family = Family::McDowell;
  d.psi = {Rational(1), Rational(0)};
  d.omega = {Rational(omega)};
  d.casimir = {Rational(casimir)};
  return build_module(d, pbw);
}

// range(0): truncation size; range(1): 0 serial, 1 parallel.
void BM_AssembleOperator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bool parallel = state.range(1) != 0;
  auto p = sl3_module(2, 4);
  const auto basis = truncated_basis(*p, {n, n, 3});
  for (auto _ : state) benchmark::DoNotOptimize(assemble_operator(*p, basis, parallel));
  state.counters["basis"] = static_cast<double>(basis.size());
  state.counters["threads"] = parallel ? omp_get_max_threads() : 1;
}
BENCHMARK(BM_AssembleOperator)->ArgsProduct({{4, 6, 8}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_WhittakerVectors(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SolverOptions opt{state.range(1) != 0, false};
  auto p = sl3_module(0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(whittaker_vectors(p, {n, n, 3}, opt));
}
BENCHMARK(BM_WhittakerVectors)->ArgsProduct({{4, 6}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const SolverOptions opt{state.range(0) != 0, false};
  const auto pbw = std::make_shared<PbwAlgebra>(build_root_system("A", 2));
  std::vector<SweepPoint> points;
  for (int w = 0; w < 5; ++w) {
    for (int c = 0; c < 5; ++c) {
      ModuleDescriptor d;
      d.family = Family::McDowell;
      d.psi = {Rational(1), Rational(0)};
      d.omega = {Rational(w)};
      d.casimir = {Rational(c)};
      points.push_back({{{"omega", std::to_string(w)}, {"casimir", std::to_string(c)}}, d});
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(sweep(points, pbw, {5, 5, 3}, opt));
}
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
