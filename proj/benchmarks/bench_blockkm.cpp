#include <benchmark/benchmark.h>

#include "blockkm/block_partition.hpp"
#include "blockkm/kmeans.hpp"
#include "blockkm/runtime.hpp"

namespace {

const blockkm::Image& test_image() {
  static const blockkm::Image img = blockkm::generate_synthetic({512, 512}, 3, 8, 10, 42);
  return img;
}

void BM_LloydStep(benchmark::State& state) {
  const auto ps = blockkm::PointSet::from_image(test_image());
  const auto centroids = blockkm::init_kmeans_pp(ps, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(blockkm::lloyd_step(ps, centroids));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * ps.size()));
}
BENCHMARK(BM_LloydStep)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_WholeImage(benchmark::State& state) {
  const blockkm::KMeansConfig cfg{static_cast<std::size_t>(state.range(0)), 100, 1e-4, 42};
  for (auto _ : state) {
    benchmark::DoNotOptimize(blockkm::run_whole_image_serial(test_image(), cfg));
  }
}
BENCHMARK(BM_WholeImage)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

// range(0): strategy kind, range(1): workers.
void BM_BlockParallel(benchmark::State& state) {
  const auto kind = static_cast<blockkm::StrategyKind>(state.range(0));
  const blockkm::Strategy strategy{kind, kind == blockkm::StrategyKind::ColumnShaped ? 100u : 128u};
  const auto plan = blockkm::ExecutionPlan::block_parallel(
      strategy, static_cast<std::size_t>(state.range(1)), {2, 100, 1e-4, 42});
  for (auto _ : state) {
    benchmark::DoNotOptimize(blockkm::run_block_parallel(test_image(), plan));
  }
  state.SetLabel(std::string(blockkm::to_string(kind)));
}
BENCHMARK(BM_BlockParallel)
    ->ArgsProduct({{0, 1, 2}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_ExtractReassemble(benchmark::State& state) {
  const auto& img = test_image();
  const auto grid = blockkm::compute_grid(img.dims(), {static_cast<std::size_t>(state.range(0)),
                                                       static_cast<std::size_t>(state.range(0))});
  for (auto _ : state) {
    std::vector<std::pair<blockkm::BlockRegion, blockkm::Image>> pieces;
    for (const auto& r : grid.regions) pieces.emplace_back(r, blockkm::extract_block(img, r));
    benchmark::DoNotOptimize(blockkm::reassemble(img.dims(), pieces));
  }
}
BENCHMARK(BM_ExtractReassemble)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
