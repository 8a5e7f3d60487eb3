#include <benchmark/benchmark.h>

#include <numbers>

#include "sceot/costs.hpp"
#include "sceot/kantorovich.hpp"
#include "sceot/measure1d.hpp"
#include "sceot/mmot.hpp"
#include "sceot/seidl.hpp"
#include "sceot/semiclassical.hpp"
#include "sceot/swaplab.hpp"

namespace {

using namespace sceot;

void BM_SeidlPlan(benchmark::State& state) {
  const GridDensity rho = densities::random_positive(1);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(seidl_plan(rho, 3, m));
}
BENCHMARK(BM_SeidlPlan)->Arg(8)->Arg(64)->Arg(512);

void BM_SolveMmot(benchmark::State& state) {
  const CostModel w = make_ring_cost(profiles::inverse());
  const DiscreteMarginal q = quantize(densities::cosine(), static_cast<int>(state.range(1)));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_mmot(q, n, w).value);
}
BENCHMARK(BM_SolveMmot)->Args({2, 8})->Args({2, 16})->Args({3, 6})->Args({3, 8})->Unit(benchmark::kMillisecond);

void BM_CheckWellOrdering(benchmark::State& state) {
  const CostModel w = make_ring_cost(profiles::inverse());
  const auto g = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_well_ordering(w, g).margin);
}
BENCHMARK(BM_CheckWellOrdering)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SwapReduction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<int> first;
  for (int k = 1; k <= n; ++k) first.push_back(k);
  std::vector<double> x;
  for (int j = 1; j <= 2 * n; ++j) x.push_back(j * 2.0 * std::numbers::pi / (2 * n + 1));
  const CostModel w = make_ring_cost(profiles::inverse());
  for (auto _ : state) benchmark::DoNotOptimize(reduce_to_wellordered(Bipartition(n, first), x, w).swaps());
}
BENCHMARK(BM_SwapReduction)->Arg(8)->Arg(16);

void BM_CTransform(benchmark::State& state) {
  const CostModel w = truncate(make_ring_cost(profiles::inverse()), 25.0);
  const Potential v = Potential::constant(static_cast<std::size_t>(state.range(0)), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(c_transform(v, w, 2).values.data());
}
BENCHMARK(BM_CTransform)->Arg(128)->Arg(512);

void BM_CertifyPotential(benchmark::State& state) {
  const CostModel full = make_ring_cost(profiles::inverse());
  const GridDensity rho = densities::cosine();
  const CostModel w = truncate(full, auto_support_thresholds(rho, full, 2).h);
  for (auto _ : state) benchmark::DoNotOptimize(certify_potential(rho, w, 2, {}).gap);
}
BENCHMARK(BM_CertifyPotential)->Unit(benchmark::kMillisecond);

void BM_MarginalIdentity(benchmark::State& state) {
  const GridDensity rho = densities::cosine();
  const DiscretePlan p = seidl_plan_on_cells(rho, 2, 256);
  const GammaEta g(p, rho, support_separation(p) / 8);
  for (auto _ : state) benchmark::DoNotOptimize(marginal_identity_check(g, 256).sup_error);
}
BENCHMARK(BM_MarginalIdentity)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
