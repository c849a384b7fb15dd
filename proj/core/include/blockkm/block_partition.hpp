#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blockkm/image.hpp"

namespace blockkm {

enum class StrategyKind { RowShaped, ColumnShaped, Square };

/// Block-shape strategy. `extent` is the one free dimension: block height for
/// RowShaped, block width for ColumnShaped, side length for Square.
struct Strategy {
  StrategyKind kind = StrategyKind::Square;
  std::size_t extent = 1200;

  /// The reference extents: rows of 1200, columns of 1000, squares of 1200.
  static Strategy with_default_extent(StrategyKind kind);

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

std::size_t default_extent(StrategyKind kind) noexcept;

/// "row", "column", "square".
std::string_view to_string(StrategyKind kind) noexcept;
std::optional<StrategyKind> parse_strategy_kind(std::string_view name) noexcept;

/// Block size in [rows cols] order; width()/height() are provided so call
/// sites never have to remember which is which.
struct BlockShape {
  std::size_t rows = 1;
  std::size_t cols = 1;

  std::size_t height() const noexcept { return rows; }
  std::size_t width() const noexcept { return cols; }
  friend bool operator==(const BlockShape&, const BlockShape&) = default;
};

/// One tile of a distinct-block decomposition. Right and bottom edge tiles may
/// be smaller than the grid's BlockShape.
struct BlockRegion {
  std::size_t grid_row = 0;
  std::size_t grid_col = 0;
  std::size_t x0 = 0;
  std::size_t y0 = 0;
  std::size_t width = 1;
  std::size_t height = 1;

  std::size_t area() const noexcept { return width * height; }
  Dims dims() const noexcept { return {width, height}; }
  friend bool operator==(const BlockRegion&, const BlockRegion&) = default;
};

struct BlockGrid {
  Dims image_dims;
  BlockShape shape;
  std::size_t grid_rows = 0;
  std::size_t grid_cols = 0;
  std::vector<BlockRegion> regions;  // row-major by (grid_row, grid_col)
};

BlockShape derive_block_shape(const Strategy& strategy, Dims dims);

BlockGrid compute_grid(Dims dims, BlockShape shape);

/// Copies `region` out of `img`. Throws BoundsError if it does not fit.
Image extract_block(const Image& img, const BlockRegion& region);

/// Stitches per-region images back into one `dims` image. The pieces must
/// tile `dims` exactly once, in any order; otherwise throws ReassemblyError
/// naming the first offending region.
Image reassemble(Dims dims, const std::vector<std::pair<BlockRegion, Image>>& pieces);

std::string describe(const BlockRegion& region);

}  // namespace blockkm
