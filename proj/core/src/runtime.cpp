#include "blockkm/runtime.hpp"

#include <chrono>

#include "blockkm/errors.hpp"
#include "blockkm/splitmix.hpp"
#include "blockkm/worker_pool.hpp"

namespace blockkm {

std::string_view to_string(ExecutionMode mode) noexcept {
  switch (mode) {
    case ExecutionMode::WholeImageSerial: return "whole";
    case ExecutionMode::BlockSerial: return "block-serial";
    case ExecutionMode::BlockParallel: return "block-parallel";
  }
  return "?";
}

std::optional<ExecutionMode> parse_execution_mode(std::string_view name) noexcept {
  if (name == "whole") return ExecutionMode::WholeImageSerial;
  if (name == "block-serial") return ExecutionMode::BlockSerial;
  if (name == "block-parallel") return ExecutionMode::BlockParallel;
  return std::nullopt;
}

ExecutionPlan ExecutionPlan::whole_image(const KMeansConfig& cfg) {
  return {ExecutionMode::WholeImageSerial, std::nullopt, 1, cfg};
}

ExecutionPlan ExecutionPlan::block_serial(Strategy strategy, const KMeansConfig& cfg) {
  return {ExecutionMode::BlockSerial, strategy, 1, cfg};
}

ExecutionPlan ExecutionPlan::block_parallel(Strategy strategy, std::size_t workers,
                                            const KMeansConfig& cfg) {
  return {ExecutionMode::BlockParallel, strategy, workers, cfg};
}

std::uint64_t block_seed(std::uint64_t global_seed, std::size_t grid_row, std::size_t grid_col,
                         std::size_t grid_cols) noexcept {
  const std::uint64_t index = static_cast<std::uint64_t>(grid_row) * grid_cols + grid_col + 1;
  return SplitMix64::mix(global_seed ^ (index * SplitMix64::kGamma));
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct BlockOutcome {
  Image map;
  KMeansModel model;
};

BlockOutcome cluster_image(const Image& img, const KMeansConfig& cfg) {
  KMeansModel model = run_kmeans(PointSet::from_image(img), cfg);
  Image map = render(img.dims(), model.labels, model.centroids, img.maxval());
  return {std::move(map), std::move(model)};
}

BlockGrid plan_grid(const Image& img, const ExecutionPlan& plan, ExecutionMode expected) {
  if (plan.mode != expected) {
    throw InvalidArgument(std::string("plan mode is ") + std::string(to_string(plan.mode)) +
                          ", expected " + std::string(to_string(expected)));
  }
  if (!plan.strategy) throw InvalidArgument("block modes require a strategy");
  return compute_grid(img.dims(), derive_block_shape(*plan.strategy, img.dims()));
}

BlockOutcome cluster_block(const Image& img, const BlockGrid& grid, const BlockRegion& region,
                           const KMeansConfig& base) {
  KMeansConfig cfg = base;
  cfg.seed = block_seed(base.seed, region.grid_row, region.grid_col, grid.grid_cols);
  return cluster_image(extract_block(img, region), cfg);
}

ClusteredResult merge(const Image& img, const BlockGrid& grid,
                      std::vector<std::optional<BlockOutcome>>& outcomes) {
  std::vector<std::pair<BlockRegion, Image>> pieces;
  std::vector<std::pair<BlockRegion, KMeansModel>> models;
  pieces.reserve(outcomes.size());
  models.reserve(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    pieces.emplace_back(grid.regions[i], std::move(outcomes[i]->map));
    models.emplace_back(grid.regions[i], std::move(outcomes[i]->model));
  }
  return {reassemble(img.dims(), pieces), std::move(models), 0.0};
}

}  // namespace

ClusteredResult run_whole_image_serial(const Image& img, const KMeansConfig& cfg) {
  const auto start = Clock::now();
  BlockOutcome whole = cluster_image(img, cfg);
  const BlockRegion full{0, 0, 0, 0, img.width(), img.height()};
  ClusteredResult result{std::move(whole.map), {}, 0.0};
  result.block_models.emplace_back(full, std::move(whole.model));
  result.wall_ms = elapsed_ms(start);
  return result;
}

ClusteredResult run_block_serial(const Image& img, const ExecutionPlan& plan) {
  const auto start = Clock::now();
  const BlockGrid grid = plan_grid(img, plan, ExecutionMode::BlockSerial);
  std::vector<std::optional<BlockOutcome>> outcomes(grid.regions.size());
  for (std::size_t i = 0; i < grid.regions.size(); ++i) {
    outcomes[i] = cluster_block(img, grid, grid.regions[i], plan.kmeans);
  }
  ClusteredResult result = merge(img, grid, outcomes);
  result.wall_ms = elapsed_ms(start);
  return result;
}

ClusteredResult run_block_parallel(const Image& img, const ExecutionPlan& plan) {
  const auto start = Clock::now();
  const BlockGrid grid = plan_grid(img, plan, ExecutionMode::BlockParallel);
  if (plan.workers == 0) throw InvalidArgument("workers must be >= 1");
  // Each worker writes only its own slot; the pool's completion barrier
  // orders those writes before the merge.
  std::vector<std::optional<BlockOutcome>> outcomes(grid.regions.size());
  parallel_for_index(grid.regions.size(), plan.workers, [&](std::size_t i) {
    outcomes[i] = cluster_block(img, grid, grid.regions[i], plan.kmeans);
  });
  ClusteredResult result = merge(img, grid, outcomes);
  result.wall_ms = elapsed_ms(start);
  return result;
}

ClusteredResult run(const Image& img, const ExecutionPlan& plan) {
  switch (plan.mode) {
    case ExecutionMode::WholeImageSerial: return run_whole_image_serial(img, plan.kmeans);
    case ExecutionMode::BlockSerial: return run_block_serial(img, plan);
    case ExecutionMode::BlockParallel: return run_block_parallel(img, plan);
  }
  throw InvalidArgument("unknown execution mode");
}

}  // namespace blockkm
