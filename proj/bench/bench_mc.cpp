// Serial reference vs OpenMP path for the two Monte Carlo kernels.
#include <benchmark/benchmark.h>

#include "fewn/design_planner.hpp"
#include "fewn/hier_sim.hpp"

namespace {

fewn::Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? fewn::Execution::serial : fewn::Execution::parallel;
}

void BM_PowerTMc(benchmark::State& state) {
  fewn::PowerQuery q;
  q.population_d = 1.0;
  q.n = 10;
  const auto exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fewn::power_t_mc(q, 20000, 1, exec));
  }
  state.SetItemsProcessed(state.iterations() * 20000);
}

void BM_EstimateErrorRates(benchmark::State& state) {
  fewn::HierarchicalDesign d;
  d.sigma_animal = 1.0;
  d.sigma_uo = 0.1;
  d.uo_counts = {60, 40};
  const fewn::Method methods[] = {fewn::Method::pooled_fixed,
                                  fewn::Method::random_across_animals};
  const auto exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fewn::estimate_error_rates(
        d, methods, fewn::Probability(0.05), fewn::Sidedness::two_sided, 10000, 1, exec));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}

}  // namespace

// Arg 0 = serial, 1 = parallel.
BENCHMARK(BM_PowerTMc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateErrorRates)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
