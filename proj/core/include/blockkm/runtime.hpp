#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "blockkm/block_partition.hpp"
#include "blockkm/image.hpp"
#include "blockkm/kmeans.hpp"

namespace blockkm {

enum class ExecutionMode { WholeImageSerial, BlockSerial, BlockParallel };

/// "whole", "block-serial", "block-parallel".
std::string_view to_string(ExecutionMode mode) noexcept;
std::optional<ExecutionMode> parse_execution_mode(std::string_view name) noexcept;

struct ExecutionPlan {
  ExecutionMode mode = ExecutionMode::BlockParallel;
  std::optional<Strategy> strategy;  // required for block modes, absent otherwise
  std::size_t workers = 1;           // used by BlockParallel only
  KMeansConfig kmeans;

  static ExecutionPlan whole_image(const KMeansConfig& cfg);
  static ExecutionPlan block_serial(Strategy strategy, const KMeansConfig& cfg);
  static ExecutionPlan block_parallel(Strategy strategy, std::size_t workers, const KMeansConfig& cfg);
};

struct ClusteredResult {
  Image output;
  /// One entry per block in row-major grid order. WholeImageSerial reports a
  /// single entry whose region spans the whole image.
  std::vector<std::pair<BlockRegion, KMeansModel>> block_models;
  double wall_ms = 0.0;  // steady_clock; excludes file I/O
};

/// Per-block k-means seed: SplitMix64::mix(global ^ ((row*grid_cols + col + 1) * gamma)).
std::uint64_t block_seed(std::uint64_t global_seed, std::size_t grid_row, std::size_t grid_col,
                         std::size_t grid_cols) noexcept;

ClusteredResult run_whole_image_serial(const Image& img, const KMeansConfig& cfg);
ClusteredResult run_block_serial(const Image& img, const ExecutionPlan& plan);

/// Same output as run_block_serial for any worker count; blocks are spread
/// over at most plan.workers threads and merged by grid coordinates.
ClusteredResult run_block_parallel(const Image& img, const ExecutionPlan& plan);

/// Dispatches on plan.mode.
ClusteredResult run(const Image& img, const ExecutionPlan& plan);

}  // namespace blockkm
