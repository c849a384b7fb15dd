// Acceptance suite: one line per criterion, non-zero exit if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "blockkm/bench.hpp"
#include "blockkm/block_partition.hpp"
#include "blockkm/image.hpp"
#include "blockkm/kmeans.hpp"
#include "blockkm/runtime.hpp"
#include "cli.hpp"
#include "oracles.hpp"

using namespace blockkm;

namespace {

enum class Status { Pass, Fail, Skip };

struct Verdict {
  Status status;
  std::string detail;
};

Verdict pass(std::string d) { return {Status::Pass, std::move(d)}; }
Verdict fail(std::string d) { return {Status::Fail, std::move(d)}; }

template <typename... Args>
std::string fmt(const char* format, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Metric reproduction: Tables 1, 2 and the 8-core row, 1e-4 relative.

Verdict metric_reproduction() {
  struct Cell {
    double serial, parallel;
    std::size_t cores;
    double speedup, efficiency;
  };
  const std::vector<Cell> cells = {
      // Row-shaped, 2 clusters, 2 cores.
      {0.050589, 0.036366, 2, 1.391107078, 0.695553539},
      {0.056069, 0.048666, 2, 1.152118522, 0.576059261},
      {0.591048, 0.39576, 2, 1.493450576, 0.746725288},
      {0.091383, 0.064567, 2, 1.41532052, 0.70766026},
      {1.895121, 1.054863, 2, 1.79655652, 0.89827826},
      {0.437126, 0.24845, 2, 1.759412357, 0.879706178},
      {1.714137, 0.249265, 2, 6.876765691, 3.438382846},
      {1.971303, 0.264342, 2, 7.457396101, 3.72869805},
      {2.442462, 1.994543, 2, 1.224572245, 0.612286123},
      // Row-shaped, 2 clusters, 4 cores.
      {0.050589, 0.016993, 4, 2.977049373, 0.744262343},
      {0.056069, 0.02372, 4, 2.363785835, 0.590946459},
      {0.591048, 0.38743, 4, 1.525560746, 0.381390187},
      {0.091383, 0.036209, 4, 2.52376481, 0.630941202},
      {1.895121, 0.622445, 4, 3.044640089, 0.761160022},
      {0.437126, 0.153703, 4, 2.84396531, 0.710991327},
      {1.714137, 0.144857, 4, 11.83330457, 2.958326142},
      {1.971303, 0.152811, 4, 12.90026896, 3.22506724},
      {2.442462, 1.286078, 4, 1.899155417, 0.474788854},
      // 4656x5793, row-shaped, 8 cores.
      {1.714137, 0.146973, 8, 11.662, 1.457867261},
  };
  constexpr double kRelTol = 1e-4;
  double worst = 0.0;
  for (const auto& c : cells) {
    const double s = speedup(c.serial, c.parallel);
    const double e = efficiency(s, c.cores);
    worst = std::max({worst, std::abs(s - c.speedup) / c.speedup, std::abs(e - c.efficiency) / c.efficiency});
  }
  const std::string detail = fmt("%zu rows (speedup+efficiency), max rel err %.2e, tol %.0e",
                                 cells.size(), worst, kRelTol);
  return worst <= kRelTol ? pass(detail) : fail(detail);
}

// ---------------------------------------------------------------------------
// 2. Grid arithmetic and exhaustive tiling on images up to 64x64.

bool tiles_exactly(const BlockGrid& grid, std::vector<int>& diff, std::vector<int>& cover) {
  const std::size_t w = grid.image_dims.width;
  const std::size_t h = grid.image_dims.height;
  if (grid.grid_rows != (h + grid.shape.rows - 1) / grid.shape.rows) return false;
  if (grid.grid_cols != (w + grid.shape.cols - 1) / grid.shape.cols) return false;
  if (grid.regions.size() != grid.grid_rows * grid.grid_cols) return false;
  // 2-D difference array: O(1) per region, one prefix-sum pass for coverage.
  const std::size_t stride = w + 1;
  std::fill(diff.begin(), diff.begin() + static_cast<std::ptrdiff_t>((h + 1) * stride), 0);
  std::size_t area = 0;
  for (const auto& r : grid.regions) {
    if (r.x0 + r.width > w || r.y0 + r.height > h) return false;
    const bool last_row = r.grid_row + 1 == grid.grid_rows;
    const bool last_col = r.grid_col + 1 == grid.grid_cols;
    if (!last_row && r.height != grid.shape.rows) return false;
    if (!last_col && r.width != grid.shape.cols) return false;
    area += r.area();
    diff[r.y0 * stride + r.x0] += 1;
    diff[r.y0 * stride + r.x0 + r.width] -= 1;
    diff[(r.y0 + r.height) * stride + r.x0] -= 1;
    diff[(r.y0 + r.height) * stride + r.x0 + r.width] += 1;
  }
  if (area != w * h) return false;
  for (std::size_t y = 0; y < h; ++y) {
    int run = 0;
    for (std::size_t x = 0; x < w; ++x) {
      run += diff[y * stride + x];
      const int above = y > 0 ? cover[(y - 1) * w + x] : 0;
      cover[y * w + x] = above + run;
      if (cover[y * w + x] != 1) return false;
    }
  }
  return true;
}

Verdict grid_arithmetic() {
  const Dims big{4656, 5793};
  const auto square = compute_grid(big, derive_block_shape({StrategyKind::Square, 1200}, big));
  const auto column = compute_grid(big, derive_block_shape({StrategyKind::ColumnShaped, 1000}, big));
  const auto row = compute_grid(big, derive_block_shape({StrategyKind::RowShaped, 1200}, big));
  if (square.grid_cols != 4 || square.grid_rows != 5 || column.grid_cols != 5 || column.grid_rows != 1 ||
      row.shape != BlockShape{1200, 4656} || column.shape != BlockShape{5793, 1000}) {
    return fail(fmt("4656x5793: square cols=%zu, column cols=%zu", square.grid_cols, column.grid_cols));
  }

  std::vector<int> diff(65 * 65), cover(64 * 64);
  std::size_t checked = 0;
  for (std::size_t h = 1; h <= 64; ++h)
    for (std::size_t w = 1; w <= 64; ++w)
      for (std::size_t rows = 1; rows <= h; ++rows)
        for (std::size_t cols = 1; cols <= w; ++cols) {
          if (!tiles_exactly(compute_grid({w, h}, {rows, cols}), diff, cover)) {
            return fail(fmt("tiling broken for %zux%zu with block [%zu %zu]", w, h, rows, cols));
          }
          ++checked;
        }

  // extract -> reassemble identity for every block shape of a 64x64 image.
  const Image img = generate_synthetic({64, 64}, 3, 9, 20, 5);
  for (std::size_t rows = 1; rows <= 64; ++rows)
    for (std::size_t cols = 1; cols <= 64; ++cols) {
      const BlockGrid grid = compute_grid(img.dims(), {rows, cols});
      std::vector<std::pair<BlockRegion, Image>> pieces;
      pieces.reserve(grid.regions.size());
      for (const auto& r : grid.regions) pieces.emplace_back(r, extract_block(img, r));
      if (reassemble(img.dims(), pieces) != img) return fail(fmt("round trip broken for [%zu %zu]", rows, cols));
    }
  return pass(fmt("4656x5793 -> square 4 cols, column 5 cols; %zu (dims, shape) pairs tile exactly", checked));
}

// ---------------------------------------------------------------------------
// 3. Schedule independence over 100 random images.

Verdict determinism() {
  std::mt19937_64 rng(20240603);
  std::size_t comparisons = 0;
  for (int n = 0; n < 100; ++n) {
    const Dims dims{8 + rng() % 121, 8 + rng() % 121};
    const std::size_t channels = rng() % 2 ? 3 : 1;
    const Image img = generate_synthetic(dims, channels, 2 + rng() % 7, static_cast<unsigned>(rng() % 21), rng());
    for (std::size_t k : {2, 4}) {
      for (auto kind : {StrategyKind::RowShaped, StrategyKind::ColumnShaped, StrategyKind::Square}) {
        const Strategy strategy{kind, 8 + rng() % 57};
        const KMeansConfig cfg{k, 100, 1e-4, rng()};
        const Image serial = run_block_serial(img, ExecutionPlan::block_serial(strategy, cfg)).output;
        for (std::size_t workers : {1, 2, 4, 8}) {
          const Image par = run_block_parallel(img, ExecutionPlan::block_parallel(strategy, workers, cfg)).output;
          ++comparisons;
          if (par != serial) {
            return fail(fmt("image %d (%zux%zu) k=%zu %s workers=%zu differs from serial", n, dims.width,
                            dims.height, k, std::string(to_string(kind)).c_str(), workers));
          }
        }
      }
    }
  }
  return pass(fmt("100 images x k{2,4} x 3 strategies x workers{1,2,4,8}: %zu outputs bit-identical", comparisons));
}

// ---------------------------------------------------------------------------
// 4. Kernel vs exhaustive optimum on every 1-D set of size <= 8 over {0,1,10,11}.

Verdict kernel_correctness() {
  const double values[] = {0, 1, 10, 11};
  std::size_t sets = 0, separable = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<double> pts(n);
      std::size_t c = code;
      for (auto& p : pts) {
        p = values[c % 4];
        c /= 4;
      }
      const KMeansModel m = run_kmeans(PointSet(1, pts), {2, 100, 1e-4, code * 31 + n});
      const double best = oracle::optimal_two_partition(pts);
      ++sets;
      if (m.inertia < best - 1e-9) return fail(fmt("inertia %.6f below optimum %.6f", m.inertia, best));
      if (oracle::well_separated(pts)) {
        ++separable;
        if (std::abs(m.inertia - best) > 1e-9) {
          return fail(fmt("separable set n=%zu code=%zu: inertia %.6f, optimum %.6f", n, code, m.inertia, best));
        }
      }
      for (std::size_t i = 1; i < m.inertia_history.size(); ++i) {
        if (m.inertia_history[i] > m.inertia_history[i - 1] + 1e-12) {
          return fail(fmt("inertia increased at iteration %zu for n=%zu code=%zu", i, n, code));
        }
      }
    }
  }
  return pass(fmt("%zu sets (%zu separable reach the optimum); inertia never increased", sets, separable));
}

// ---------------------------------------------------------------------------
// 5. Blocks with <= 2 colors reconstruct exactly.

Image two_colors_per_block(std::mt19937_64& rng, Dims dims, std::size_t channels, const BlockGrid& grid) {
  std::vector<Sample> samples(dims.area() * channels);
  for (const auto& r : grid.regions) {
    std::vector<Sample> palette(2 * channels);
    for (auto& s : palette) s = static_cast<Sample>(rng() % 256);
    for (std::size_t y = r.y0; y < r.y0 + r.height; ++y)
      for (std::size_t x = r.x0; x < r.x0 + r.width; ++x) {
        const std::size_t pick = rng() % 2;
        for (std::size_t ch = 0; ch < channels; ++ch) {
          samples[(y * dims.width + x) * channels + ch] = palette[pick * channels + ch];
        }
      }
  }
  return Image(dims, channels, 255, std::move(samples));
}

Verdict reconstruction() {
  std::mt19937_64 rng(77);
  std::size_t runs = 0;
  for (int n = 0; n < 60; ++n) {
    const Dims dims{4 + rng() % 125, 4 + rng() % 125};
    const std::size_t channels = n % 2 ? 3 : 1;
    const Strategy strategy{static_cast<StrategyKind>(n % 3), 2 + rng() % 40};
    const BlockGrid grid = compute_grid(dims, derive_block_shape(strategy, dims));
    const Image img = two_colors_per_block(rng, dims, channels, grid);
    const KMeansConfig cfg{2, 100, 1e-4, rng()};
    const Image serial = run_block_serial(img, ExecutionPlan::block_serial(strategy, cfg)).output;
    const Image par = run_block_parallel(img, ExecutionPlan::block_parallel(strategy, 4, cfg)).output;
    ++runs;
    if (serial != img || par != img) {
      return fail(fmt("case %d (%zux%zu, %s extent %zu) not reproduced", n, dims.width, dims.height,
                      std::string(to_string(strategy.kind)).c_str(), strategy.extent));
    }
  }
  return pass(fmt("%zu images (serial and 4-worker parallel) reproduced bit-exactly", runs));
}

// ---------------------------------------------------------------------------
// 6. Performance smoke on a >= 4-core host.

Verdict performance_smoke() {
  const unsigned cores = std::thread::hardware_concurrency();
  if (cores < 4) {
    return {Status::Skip, fmt("host reports %u hardware thread(s); criterion requires >= 4", cores)};
  }
  const Image img = generate_synthetic({2048, 2048}, 3, 12, 10, 42);
  const KMeansConfig cfg{2, 100, 1e-4, 42};
  const Strategy strategy{StrategyKind::Square, 256};
  std::vector<double> serial, parallel;
  for (int rep = 0; rep < 3; ++rep) {
    serial.push_back(run_block_serial(img, ExecutionPlan::block_serial(strategy, cfg)).wall_ms);
    parallel.push_back(run_block_parallel(img, ExecutionPlan::block_parallel(strategy, 4, cfg)).wall_ms);
  }
  const double s = median(serial), p = median(parallel);
  const double ratio = s / p;
  std::string detail = fmt("block-serial %.1f ms, block-parallel(4) %.1f ms, speedup %.2f", s, p, ratio);
  if (ratio < 1.5) detail += " (warning: below 1.5, informational)";
  return p < s ? pass(detail) : fail(detail);
}

// ---------------------------------------------------------------------------
// 7. Reference timings are not reproduced; check our own measured ordering.

Verdict measured_ordering() {
  const auto dir = std::filesystem::temp_directory_path() / "blockkm_acceptance";
  std::filesystem::create_directories(dir);
  const std::string input = (dir / "compare.ppm").string();
  write_pnm_file(input, generate_synthetic({600, 400}, 3, 8, 10, 7));

  std::ostringstream out, err;
  const int code = cli::run_cli({"compare", "--input", input, "--k", "2", "--workers", "2"}, out, err);
  std::filesystem::remove_all(dir);
  if (code != 0) return fail("compare exited " + std::to_string(code) + ": " + err.str());

  std::istringstream lines(out.str());
  std::string line, best_line, fastest;
  double fastest_ms = 1e300;
  int strategy_rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream row(line);
    std::string name, a, b;
    double ms = 0;
    row >> name >> a >> b >> ms;
    if (name == "row" || name == "column" || name == "square") {
      ++strategy_rows;
      if (ms < fastest_ms) {
        fastest_ms = ms;
        fastest = name;
      }
    }
    if (line.rfind("best=", 0) == 0) best_line = line.substr(5);
  }
  if (strategy_rows != 3 || best_line.empty()) return fail("compare output malformed");
  return pass("absolute times and super-linear ratios not asserted; compare reports best=" + best_line +
              " (fastest measured: " + fastest + ")");
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "metric reproduction", metric_reproduction},
      {"AC2", "grid arithmetic", grid_arithmetic},
      {"AC3", "determinism / schedule independence", determinism},
      {"AC4", "kernel correctness vs exhaustive oracle", kernel_correctness},
      {"AC5", "per-block reconstruction", reconstruction},
      {"AC6", "performance smoke", performance_smoke},
      {"AC7", "explicit non-reproducibility", measured_ordering},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* tag = v.status == Status::Pass ? "PASS" : v.status == Status::Skip ? "SKIP" : "FAIL";
    if (v.status == Status::Fail) ++failures;
    std::printf("[%s] %s %s: %s (%.2fs)\n", tag, c.id, c.name, v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
