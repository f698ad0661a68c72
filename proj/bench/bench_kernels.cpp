// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include <random>

#include "blochvar/inverse.hpp"
#include "blochvar/sampling.hpp"
#include "blochvar/spectrum.hpp"
#include "blochvar/variety.hpp"

namespace {

using namespace bloch;

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void BM_Bands2D(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto v = random_real_potential(LatticeConfig({3, 3}), rng, 2.0);
  const std::vector<int> res{64, 64};
  for (auto _ : state) benchmark::DoNotOptimize(compute_bands(v, res, mode(state)));
  state.SetItemsProcessed(state.iterations() * 64 * 64);
}
BENCHMARK(BM_Bands2D)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EntireGraph(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto v = random_complex_potential(LatticeConfig({4, 3}), rng, 1.0);
  IdentityTestOptions opts;
  opts.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(entire_graph_test(v, opts));
}
BENCHMARK(BM_EntireGraph)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DiagonalInverse(benchmark::State& state) {
  const std::vector<double> k0{0.0};
  const auto m = assemble_direct(Potential::zero(LatticeConfig({4})), k0).entries;
  InverseOptions opts;
  opts.exec = mode(state);
  const InverseProblem p{m, exotic_targets(4, 1)};
  for (auto _ : state) benchmark::DoNotOptimize(solve_diagonal_inverse(p, opts));
}
BENCHMARK(BM_DiagonalInverse)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
