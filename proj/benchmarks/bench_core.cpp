#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mpsfft/baselines.hpp"
#include "mpsfft/bounds.hpp"
#include "mpsfft/executor.hpp"
#include "mpsfft/instances.hpp"
#include "mpsfft/scheduler.hpp"
#include "mpsfft/stats.hpp"

using namespace mpsfft;

namespace {

BinAllocation cascade(int n) {
  std::vector<std::uint32_t> sizes;
  for (std::uint32_t s = std::uint32_t{1} << (n - 1); s > 1; s >>= 1) {
    sizes.push_back(s);
  }
  sizes.push_back(1);
  sizes.push_back(1);
  return BinAllocation(n, std::move(sizes));
}

}  // namespace

static void BM_BuildGraph(benchmark::State& state) {
  const int n = int(state.range(0));
  const BinAllocation alloc = cascade(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(PrecedenceGraph::build(alloc));
  }
}
BENCHMARK(BM_BuildGraph)->Arg(6)->Arg(8)->Arg(10);

static void BM_FullNetworkSchedule(benchmark::State& state) {
  const int n = int(state.range(0));
  const PrecedenceGraph g = full_network_graph(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mps_schedule(g, std::uint32_t(n)));
  }
}
BENCHMARK(BM_FullNetworkSchedule)->Arg(6)->Arg(8)->Arg(10);

static void BM_LowerBound(benchmark::State& state) {
  const int n = int(state.range(0));
  const PrecedenceGraph g = full_network_graph(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lower_bound(g, std::uint32_t(n)));
  }
}
BENCHMARK(BM_LowerBound)->Arg(6)->Arg(10);

static void BM_Enumerate(benchmark::State& state) {
  const int n = int(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_instances(n));
  }
}
BENCHMARK(BM_Enumerate)->Arg(4)->Arg(5);

static void BM_ReferenceFft(benchmark::State& state) {
  const std::size_t N = std::size_t{1} << state.range(0);
  std::mt19937_64 rng(1);
  std::vector<Complex> x(N);
  for (auto& v : x) {
    v = Complex(double(rng()) / double(~std::uint64_t{0}),
                double(rng()) / double(~std::uint64_t{0}));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference_full_fft(x));
  }
}
BENCHMARK(BM_ReferenceFft)->Arg(8)->Arg(10);

static void BM_EtaLowerBound(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(eta_lower_bound(100000, 99990, 0.95));
  }
}
BENCHMARK(BM_EtaLowerBound);

BENCHMARK_MAIN();
