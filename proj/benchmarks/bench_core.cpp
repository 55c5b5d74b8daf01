// Microbenchmarks for the hot paths: tree sampling, the single-site update
// chain, loop-erasure, and the two determinant-based oracles.  Sizes are kept
// small enough that a full run stays under a minute.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "usflab/exact.hpp"
#include "usflab/generators.hpp"
#include "usflab/sampler.hpp"
#include "usflab/update.hpp"

namespace usflab {
namespace {

constexpr std::uint64_t kBenchSeed = 0xBE7C4;

void BM_WilsonGrid(benchmark::State& state) {
  Network net = grid_box(2, int(state.range(0)));
  RngHandle rng(kBenchSeed);
  for (auto _ : state) {
    SpanningTree tree = wilson_ust(net, rng);
    benchmark::DoNotOptimize(tree.edges().data());
  }
  state.SetItemsProcessed(state.iterations() * net.vertex_count());
}
BENCHMARK(BM_WilsonGrid)->Arg(8)->Arg(16)->Arg(32);

void BM_WilsonWiredGrid(benchmark::State& state) {
  WiredNetwork wnet = grid_box_wired(2, int(state.range(0)));
  RngHandle rng(kBenchSeed);
  for (auto _ : state) {
    BoundaryForest forest = sample_wusf_truncation(wnet, rng);
    benchmark::DoNotOptimize(forest.edges().data());
  }
  state.SetItemsProcessed(state.iterations() * wnet.interior.size());
}
BENCHMARK(BM_WilsonWiredGrid)->Arg(8)->Arg(16)->Arg(32);

void BM_UpdateChain(benchmark::State& state) {
  constexpr std::uint64_t kStepsPerIteration = 256;
  Network net = grid_box(2, 16);
  RngHandle rng(kBenchSeed);
  SpanningTree tree = wilson_ust(net, rng);
  ChainOptions options;  // uniform vertex schedule, no validation
  for (auto _ : state) {
    ChainReport report = update_chain(tree, kStepsPerIteration, options, rng);
    benchmark::DoNotOptimize(report.case_counts.data());
  }
  state.SetItemsProcessed(state.iterations() * kStepsPerIteration);
}
BENCHMARK(BM_UpdateChain);

void BM_LoopErase(benchmark::State& state) {
  Network net = torus_grid(2, 16);
  RngHandle rng(kBenchSeed);
  std::vector<VertexId> walk{0};
  for (std::int64_t t = 0; t < state.range(0); ++t) {
    walk.push_back(net.head(walk_step(net, walk.back(), rng)));
  }
  for (auto _ : state) {
    std::vector<VertexId> erased = loop_erase(walk);
    benchmark::DoNotOptimize(erased.data());
  }
  state.SetItemsProcessed(state.iterations() * walk.size());
}
BENCHMARK(BM_LoopErase)->Arg(1 << 10)->Arg(1 << 14);

void BM_TreeWeightTotal(benchmark::State& state) {
  Network net = grid_box(2, int(state.range(0)));
  for (auto _ : state) {
    Rational total = tree_weight_total(net);
    benchmark::DoNotOptimize(&total);
  }
}
BENCHMARK(BM_TreeWeightTotal)->Arg(3)->Arg(4)->Arg(5);

void BM_EffectiveResistanceNumeric(benchmark::State& state) {
  int side = int(state.range(0));
  Network net = grid_box(2, side);
  VertexId center = VertexId((side / 2) + side * (side / 2));
  for (auto _ : state) {
    double r = effective_resistance_numeric(net, center, center + 1);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_EffectiveResistanceNumeric)->Arg(15)->Arg(31);

}  // namespace
}  // namespace usflab

// The system benchmark_main archive ships stale LTO bytecode; expanding the
// main() here sidesteps it.
BENCHMARK_MAIN();
