#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "hjnet/aubry.hpp"
#include "hjnet/critical.hpp"
#include "hjnet/numerics.hpp"

using namespace hjnet;

namespace {

// Ring of n vertices with chords; drift and potential vary along every arc.
Network ring(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<VertexInfo> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back({"v" + std::to_string(i), std::nullopt, {}});
  std::vector<ArcInfo> arcs;
  std::vector<ArcHamiltonian> hs;
  auto add = [&](std::size_t t, std::size_t h) {
    arcs.push_back({"a" + std::to_string(arcs.size()), VertexId{t}, VertexId{h}});
    TiltedEikonal fam{ScalarFunction::fourier(u(rng), {0.3 * u(rng)}, {0.3 * u(rng)}),
                      ScalarFunction::constant(1.0 + 0.5 * u(rng)), arcs.size() % 2 ? 1.0 : 2.0};
    hs.emplace_back(fam);
  };
  for (std::size_t i = 0; i < n; ++i) add(i, (i + 1) % n);
  for (std::size_t i = 0; i + 3 < n; i += 3) add(i, i + 3);
  return Network(Graph::build(std::move(vs), std::move(arcs)), std::move(hs));
}

void BM_CriticalValue(benchmark::State& state) {
  const Network net = ring(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(critical_value(net).value);
}
BENCHMARK(BM_CriticalValue)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_DistanceTable(benchmark::State& state) {
  const Network net = ring(static_cast<std::size_t>(state.range(0)));
  const double a = critical_value(net).value + 0.5;
  const LevelWeights w = compute_weights(net, a);
  for (auto _ : state) benchmark::DoNotOptimize(distance_table(net.graph(), w, 1e-6).at(0, 1));
}
BENCHMARK(BM_DistanceTable)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_SigmaProfile(benchmark::State& state) {
  const ArcHamiltonian h(TiltedEikonal{ScalarFunction::fourier(0.2, {0.4, 0.1}, {0.3}),
                                       ScalarFunction::fourier(1.0, {0.2}, {}), static_cast<double>(state.range(0))});
  const Tolerances tol;
  for (auto _ : state) {
    SigmaProfile p(h, 1.5, tol);
    benchmark::DoNotOptimize(p.total(Branch::plus));
  }
}
BENCHMARK(BM_SigmaProfile)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

void BM_AnalyzeCritical(benchmark::State& state) {
  const Network net = ring(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analyze_critical(net).aubry.vertices.size());
}
BENCHMARK(BM_AnalyzeCritical)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
