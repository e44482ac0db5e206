#include <benchmark/benchmark.h>

#include "mfdbsde/levy_sim.hpp"
#include "mfdbsde/measure.hpp"
#include "mfdbsde/quadrature.hpp"
#include "mfdbsde/rng.hpp"
#include "mfdbsde/solver.hpp"
#include "mfdbsde/tree_oracle.hpp"

using namespace mfdbsde;

static void BM_TripleNorm(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto quad = FourierQuadrature::gauss_hermite(8, 3);
  const LevyModel levy({{1.0, 1.0}});
  std::vector<double> pts(2 * n), marks(n);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng r(1, i, 0, 0);
    pts[2 * i] = r.normal();
    pts[2 * i + 1] = r.normal();
    marks[i] = r.normal();
  }
  const EmpiricalMeasure mu(2, pts, {}, 1, marks);
  for (auto _ : state) benchmark::DoNotOptimize(m_norm_triple_sq(mu, levy, quad));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * quad.size()));
}
BENCHMARK(BM_TripleNorm)->Arg(1000)->Arg(10000);

static void BM_Simulate(benchmark::State& state) {
  const LevyModel levy({{1.0, 1.0}, {-0.5, 2.0}});
  const auto grid = make_grid(1.0, 50);
  const SimConfig cfg{static_cast<std::size_t>(state.range(0)), 7, false};
  for (auto _ : state) benchmark::DoNotOptimize(simulate_ensemble(levy, grid, cfg));
}
BENCHMARK(BM_Simulate)->Arg(10000);

static void BM_ApplyPhi(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const LevyModel levy({{1.0, 1.0}});
  const ProblemSpec p{make_grid(1.0, 50), DelayMeasure::uniform(0.2, 0.5), levy,
                      TerminalCondition::call(0.0), LinearStateGen{0.5, 0.2, {0.1}}, 1.0, 1.0};
  const auto ens = simulate_ensemble(levy, p.grid, {n, 3, false});
  const BackwardSolver solver(p, ens, {});
  const auto x = solver.apply(solver.zero_triple()).triple;
  for (auto _ : state) benchmark::DoNotOptimize(solver.apply(x));
}
BENCHMARK(BM_ApplyPhi)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_TreeSolve(benchmark::State& state) {
  const LevyModel levy({{1.0, 1.0}});
  const ProblemSpec p{make_grid(1.0, 8), DelayMeasure::dirac(), levy,
                      TerminalCondition::call(0.0), LinearStateGen{0.5, 0.2, {0.1}}, 1.0, 1.0};
  const TreeModel tree(p.grid, levy);
  for (auto _ : state) benchmark::DoNotOptimize(tree_solve(p, tree));
}
BENCHMARK(BM_TreeSolve)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
