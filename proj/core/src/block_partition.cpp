#include "blockkm/block_partition.hpp"

#include <algorithm>

#include "blockkm/errors.hpp"

namespace blockkm {

std::size_t default_extent(StrategyKind kind) noexcept {
  switch (kind) {
    case StrategyKind::RowShaped: return 1200;
    case StrategyKind::ColumnShaped: return 1000;
    case StrategyKind::Square: return 1200;
  }
  return 1200;
}

Strategy Strategy::with_default_extent(StrategyKind kind) { return {kind, default_extent(kind)}; }

std::string_view to_string(StrategyKind kind) noexcept {
  switch (kind) {
    case StrategyKind::RowShaped: return "row";
    case StrategyKind::ColumnShaped: return "column";
    case StrategyKind::Square: return "square";
  }
  return "?";
}

std::optional<StrategyKind> parse_strategy_kind(std::string_view name) noexcept {
  if (name == "row") return StrategyKind::RowShaped;
  if (name == "column") return StrategyKind::ColumnShaped;
  if (name == "square") return StrategyKind::Square;
  return std::nullopt;
}

BlockShape derive_block_shape(const Strategy& strategy, Dims dims) {
  if (strategy.extent < 1) throw InvalidArgument("strategy extent must be >= 1");
  validate_dims(dims, 1);
  switch (strategy.kind) {
    case StrategyKind::RowShaped:
      return {std::min(strategy.extent, dims.height), dims.width};
    case StrategyKind::ColumnShaped:
      return {dims.height, std::min(strategy.extent, dims.width)};
    case StrategyKind::Square:
      return {std::min(strategy.extent, dims.height), std::min(strategy.extent, dims.width)};
  }
  throw InvalidArgument("unknown strategy kind");
}

BlockGrid compute_grid(Dims dims, BlockShape shape) {
  validate_dims(dims, 1);
  if (shape.rows < 1 || shape.cols < 1) throw InvalidArgument("block shape must be >= 1x1");

  BlockGrid grid;
  grid.image_dims = dims;
  grid.shape = shape;
  grid.grid_rows = (dims.height + shape.rows - 1) / shape.rows;
  grid.grid_cols = (dims.width + shape.cols - 1) / shape.cols;
  grid.regions.reserve(grid.grid_rows * grid.grid_cols);
  for (std::size_t r = 0; r < grid.grid_rows; ++r) {
    const std::size_t y0 = r * shape.rows;
    const std::size_t h = std::min(shape.rows, dims.height - y0);
    for (std::size_t c = 0; c < grid.grid_cols; ++c) {
      const std::size_t x0 = c * shape.cols;
      const std::size_t w = std::min(shape.cols, dims.width - x0);
      grid.regions.push_back({r, c, x0, y0, w, h});
    }
  }
  return grid;
}

std::string describe(const BlockRegion& region) {
  return "block (" + std::to_string(region.grid_row) + "," + std::to_string(region.grid_col) +
         ") at x=" + std::to_string(region.x0) + " y=" + std::to_string(region.y0) + " size " +
         std::to_string(region.width) + "x" + std::to_string(region.height);
}

Image extract_block(const Image& img, const BlockRegion& region) {
  if (region.width < 1 || region.height < 1 || region.x0 >= img.width() ||
      region.y0 >= img.height() || region.width > img.width() - region.x0 ||
      region.height > img.height() - region.y0) {
    throw BoundsError(describe(region) + " lies outside " + std::to_string(img.width()) + "x" +
                      std::to_string(img.height()) + " image");
  }
  const std::size_t ch = img.channels();
  std::vector<Sample> out(region.area() * ch);
  const auto src = img.samples();
  for (std::size_t y = 0; y < region.height; ++y) {
    const auto row = src.subspan(((region.y0 + y) * img.width() + region.x0) * ch, region.width * ch);
    std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(y * region.width * ch));
  }
  return Image(region.dims(), ch, img.maxval(), std::move(out));
}

Image reassemble(Dims dims, const std::vector<std::pair<BlockRegion, Image>>& pieces) {
  validate_dims(dims, 1);
  if (pieces.empty()) throw ReassemblyError("no pieces supplied");

  const std::size_t ch = pieces.front().second.channels();
  const std::uint32_t maxval = pieces.front().second.maxval();
  std::vector<Sample> out(dims.area() * ch);
  std::vector<std::uint8_t> covered(dims.area(), 0);

  for (const auto& [region, piece] : pieces) {
    if (region.width < 1 || region.height < 1 || region.x0 >= dims.width ||
        region.y0 >= dims.height || region.width > dims.width - region.x0 ||
        region.height > dims.height - region.y0) {
      throw ReassemblyError(describe(region) + " lies outside the output image");
    }
    if (piece.dims() != region.dims()) {
      throw ReassemblyError(describe(region) + " received a " + std::to_string(piece.width()) +
                            "x" + std::to_string(piece.height()) + " piece");
    }
    if (piece.channels() != ch || piece.maxval() != maxval) {
      throw ReassemblyError(describe(region) + " has mismatched channels or maxval");
    }
    const auto src = piece.samples();
    for (std::size_t y = 0; y < region.height; ++y) {
      const std::size_t base = (region.y0 + y) * dims.width + region.x0;
      for (std::size_t x = 0; x < region.width; ++x) {
        if (covered[base + x]++ != 0) throw ReassemblyError(describe(region) + " overlaps another region");
      }
      std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(y * region.width * ch),
                  region.width * ch, out.begin() + static_cast<std::ptrdiff_t>(base * ch));
    }
  }

  const auto hole = std::find(covered.begin(), covered.end(), 0);
  if (hole != covered.end()) {
    const auto idx = static_cast<std::size_t>(hole - covered.begin());
    throw ReassemblyError("missing region covering pixel x=" + std::to_string(idx % dims.width) +
                          " y=" + std::to_string(idx / dims.width));
  }
  return Image(dims, ch, maxval, std::move(out));
}

}  // namespace blockkm
