#include <benchmark/benchmark.h>

#include <vector>

#include "hcube/counterexamples.hpp"
#include "hcube/cube_function.hpp"
#include "hcube/inequality.hpp"
#include "hcube/noise.hpp"
#include "hcube/norms.hpp"
#include "hcube/quantum.hpp"
#include "hcube/rng.hpp"

namespace {

using namespace hcube;

std::vector<double> gaussian(std::size_t size, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  std::vector<double> v(size);
  for (double& x : v) x = rng.normal();
  return v;
}

void BM_Fwht(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> v = gaussian(std::size_t{1} << n, 1);
  for (auto _ : state) {
    walsh_hadamard_inplace(v);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(v.size()));
}
BENCHMARK(BM_Fwht)->DenseRange(10, 20, 2);

void BM_RadialSupMoment(benchmark::State& state) {
  const RadialProfile v = talagrand_profile(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(radial_sup_rademacher_moment(v, 2.0));
}
BENCHMARK(BM_RadialSupMoment)->RangeMultiplier(4)->Range(1 << 8, 1 << 20)->Unit(benchmark::kMillisecond);

void BM_RadialSupMomentQuadratic(benchmark::State& state) {
  const RadialProfile v = talagrand_profile(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(radial_sup_rademacher_moment_quadratic(v, 2.0));
}
BENCHMARK(BM_RadialSupMomentQuadratic)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Unit(benchmark::kMillisecond);

void BM_RieszLowerEvaluate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const InequalityInstance inst = InequalityInstance::make(InequalityId::RIESZ_LOWER, n, 3.0);
  const InequalityInput in = random_input(inst, 0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(inst, in).ratio);
}
BENCHMARK(BM_RieszLowerEvaluate)->DenseRange(4, 10, 2)->Unit(benchmark::kMicrosecond);

void BM_SchattenNorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CubeFunction f = CubeFunction::from_coeffs(n, gaussian(std::size_t{1} << n, 2));
  const quantum::Matrix T = quantum::embed(f);
  for (auto _ : state) benchmark::DoNotOptimize(quantum::schatten_norm(T, 3.0));
}
BENCHMARK(BM_SchattenNorm)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_ProjectQ(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::size_t dim = std::size_t{1} << n;
  const std::vector<double> g = gaussian(2 * dim * dim, 3);
  quantum::Matrix T(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim * dim; ++k) T.data()[k] = {g[2 * k], g[2 * k + 1]};
  const bool conjugated = state.range(1) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(conjugated ? quantum::project_Q_conjugated(T) : quantum::project_Q(T));
  }
}
BENCHMARK(BM_ProjectQ)->ArgsProduct({{4, 6, 8}, {0, 1}})->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
