#include <benchmark/benchmark.h>

#include "sptk/geometry.hpp"
#include "sptk/metric.hpp"
#include "sptk/triple.hpp"

namespace {

void BM_TwoPointDistance(benchmark::State& state) {
  const auto t = sptk::two_point_geometry(0.5).triple;
  const auto a = sptk::State::pure(2, 0), b = sptk::State::pure(2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sptk::connes_distance(t, a, b).value);
}
BENCHMARK(BM_TwoPointDistance);

// Farthest pair on a lattice circle: the hardest single solve.
void BM_CircleAntipodal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t = sptk::lattice_circle(n).triple;
  const sptk::DistanceSolver solver(t);
  for (auto _ : state) benchmark::DoNotOptimize(solver.distance(0, n / 2).value);
  state.SetComplexityN(n);
}
BENCHMARK(BM_CircleAntipodal)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond)->Complexity();

void BM_CircleMatrix(benchmark::State& state) {
  const auto t = sptk::lattice_circle(static_cast<int>(state.range(0))).triple;
  for (auto _ : state) benchmark::DoNotOptimize(sptk::distance_matrix(t).entries.size());
}
BENCHMARK(BM_CircleMatrix)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

// Dense compressed Dirac: one group, dense Hessian path.
void BM_ScrambledIntervalDistance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t0 = sptk::lattice_interval(n, 1.0).triple;
  std::mt19937_64 rng(3);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  const auto t = sptk::transport(t0, sptk::random_unitary(t0.rep_dim(), rng), perm);
  const sptk::DistanceSolver solver(t);
  for (auto _ : state) benchmark::DoNotOptimize(solver.distance(0, n - 1).value);
}
BENCHMARK(BM_ScrambledIntervalDistance)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_BruteForceOracle(benchmark::State& state) {
  const auto t = sptk::lattice_interval(3, 2.0).triple;
  const auto a = sptk::State::pure(3, 0), b = sptk::State::pure(3, 2);
  sptk::BruteForceOptions o;
  o.grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sptk::brute_force_distance(t, a, b, o));
}
BENCHMARK(BM_BruteForceOracle)->Arg(51)->Arg(201)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  const auto c = sptk::lattice_circle(static_cast<int>(state.range(0))).geometry;
  const auto t = sptk::graph_triple(sptk::disjoint_union(c, c));
  for (auto _ : state) benchmark::DoNotOptimize(sptk::decompose(t).components.size());
}
BENCHMARK(BM_Decompose)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
