// Microbenchmarks for the two numeric kernels: knapsack pricing and the
// dense simplex.

#include <benchmark/benchmark.h>

#include "cgdoi/cg.hpp"
#include "cgdoi/instance.hpp"
#include "cgdoi/lp.hpp"
#include "cgdoi/pricing.hpp"
#include "cgdoi/rng.hpp"

using namespace cgdoi;

static void BM_KnapsackDp(benchmark::State& state) {
  const int n = (int)state.range(0);
  CounterRng rng(17);
  std::vector<long> weights;
  std::vector<double> profits;
  for (int k = 0; k < n; ++k) {
    weights.push_back(1 + (long)rng.next_index(5));
    profits.push_back(rng.next_unit() * 4.0 - 1.0);
  }
  const long capacity = 150;
  for (auto _ : state) {
    benchmark::DoNotOptimize(knapsack_dp(weights, profits, capacity));
  }
}
BENCHMARK(BM_KnapsackDp)->Arg(50)->Arg(250);

static void BM_SimplexCoverLp(benchmark::State& state) {
  const int n_rows = (int)state.range(0);
  CounterRng rng(23);
  LpProblem p;
  for (int r = 0; r < n_rows; ++r) p.add_var(5.0 + rng.next_unit());
  for (int r = 0; r < n_rows; ++r) p.add_row(RowSense::ge, 1.0, {{r, 1.0}});
  for (int j = 0; j < 4 * n_rows; ++j) {
    const int var = p.add_var(0.5 + rng.next_unit() * 3.0);
    for (int r = 0; r < n_rows; ++r) {
      if (rng.next_unit() < 0.2) p.rows[r].coeffs.push_back({var, 1.0});
    }
  }
  LpSolver solver;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.solve(p));
  }
}
BENCHMARK(BM_SimplexCoverLp)->Arg(30)->Arg(100);

static void BM_ColumnGeneration(benchmark::State& state) {
  GeneratorParams params;
  params.n_customers = 30;
  params.n_facilities = 6;
  params.fixed_cost = 5.0;
  params.capacity = 30;
  params.demand_choices = {1, 2, 3, 4, 5};
  params.seed = 31;
  Instance inst = generate_structured(params);
  DoiConfig config;
  config.variant = (DoiVariant)state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(inst, config));
  }
}
BENCHMARK(BM_ColumnGeneration)->Arg(0)->Arg(1)->Arg(3);

BENCHMARK_MAIN();
