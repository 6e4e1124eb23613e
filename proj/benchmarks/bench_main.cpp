#include <benchmark/benchmark.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "odyn/dynamics.hpp"
#include "odyn/experiment.hpp"
#include "odyn/graph.hpp"
#include "odyn/randgen.hpp"
#include "odyn/robustness.hpp"
#include "odyn/rng.hpp"

namespace {

void BM_SampleEr(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(odyn::sample_er(n, 0.01, seed++));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{n} * (n - 1) / 2));
}
BENCHMARK(BM_SampleEr)->Arg(200)->Arg(1000)->Arg(4000);

void BM_RobustExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto [g, t] = odyn::two_clique_counterexample(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(odyn::is_robust_exact(g, t));
  }
}
BENCHMARK(BM_RobustExact)->Arg(12)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_HalfsizeCertify(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<odyn::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  auto g = odyn::Graph::build(n, false, edges);
  auto t = odyn::ThresholdAssignment::uniform(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(odyn::certify_robust_halfsize(g, t));
  }
}
BENCHMARK(BM_HalfsizeCertify)->Arg(20)->Arg(24)->Arg(28)->Unit(benchmark::kMillisecond);

void BM_DynamicsStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto p = odyn::er_edge_probability(n, 2, 1.0).value;
  auto g = odyn::sample_er(n, p, 42);
  auto dist = odyn::default_threshold_distribution(n, 2, 4);
  auto t = odyn::sample_thresholds(dist, n, 43);
  odyn::StreamRng rng(44, odyn::StreamPurpose::Opinions);
  odyn::OpinionState x(n);
  for (auto& v : x) v = rng.next_double();
  odyn::DynamicsConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(odyn::step(g, t, x, cfg));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_DynamicsStep)->Arg(100)->Arg(500)->Arg(2000);

void BM_VertexConnectivity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = odyn::sample_er(n, 3.0 * odyn::er_edge_probability(n, 1, 0.0).value, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(odyn::vertex_connectivity(g));
  }
}
BENCHMARK(BM_VertexConnectivity)->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
