#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include "blockkm/bench.hpp"
#include "blockkm/block_partition.hpp"
#include "blockkm/errors.hpp"
#include "blockkm/image.hpp"
#include "blockkm/runtime.hpp"

namespace blockkm::cli {

std::size_t default_workers() {
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

namespace {

const std::vector<std::string> kStrategyNames{"row", "column", "square"};
const CLI::Range kAtLeastOne(std::size_t{1}, std::size_t{1} << 40);

StrategyKind strategy_kind(const std::string& name) {
  // CLI11 has already checked membership.
  return *parse_strategy_kind(name);
}

std::string format_ms(double ms) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << ms;
  return s.str();
}

std::string format_shape(BlockShape shape) {
  return "[" + std::to_string(shape.rows) + " " + std::to_string(shape.cols) + "]";
}

struct ClusterOptions {
  std::string input;
  std::string output;
  std::size_t k = 0;
  std::string mode = "block-parallel";
  std::string strategy = "square";
  std::optional<std::size_t> extent;
  std::size_t workers = default_workers();
  std::uint64_t seed = 42;
};

int cmd_cluster(const ClusterOptions& o, std::ostream& out) {
  const Image img = read_pnm_file(o.input);

  KMeansConfig cfg;
  cfg.k = o.k;
  cfg.seed = o.seed;
  const ExecutionMode mode = *parse_execution_mode(o.mode);
  const StrategyKind kind = strategy_kind(o.strategy);
  const Strategy strategy{kind, o.extent.value_or(default_extent(kind))};

  ExecutionPlan plan;
  switch (mode) {
    case ExecutionMode::WholeImageSerial: plan = ExecutionPlan::whole_image(cfg); break;
    case ExecutionMode::BlockSerial: plan = ExecutionPlan::block_serial(strategy, cfg); break;
    case ExecutionMode::BlockParallel: plan = ExecutionPlan::block_parallel(strategy, o.workers, cfg); break;
  }
  const ClusteredResult result = run(img, plan);
  write_pnm_file(o.output, result.output);

  const bool whole = mode == ExecutionMode::WholeImageSerial;
  out << "mode=" << to_string(mode) << " strategy=" << (whole ? "none" : o.strategy)
      << " k=" << o.k << " workers=" << (mode == ExecutionMode::BlockParallel ? o.workers : 1)
      << " wall_ms=" << format_ms(result.wall_ms) << "\n";
  return kOk;
}

struct BenchOptions {
  std::string input;
  std::string csv;
  std::vector<std::size_t> ks{2, 4};
  std::vector<std::size_t> workers{2, 4, 8};
  std::vector<std::string> strategies = kStrategyNames;
  std::size_t reps = 3;
  std::uint64_t seed = 42;
  std::size_t extent_row = default_extent(StrategyKind::RowShaped);
  std::size_t extent_col = default_extent(StrategyKind::ColumnShaped);
  std::size_t extent_square = default_extent(StrategyKind::Square);
};

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  const Image img = read_pnm_file(o.input);

  BenchMatrix matrix;
  matrix.ks = o.ks;
  matrix.workers = o.workers;
  for (const auto& name : o.strategies) {
    const StrategyKind kind = strategy_kind(name);
    const std::size_t extent = kind == StrategyKind::RowShaped      ? o.extent_row
                               : kind == StrategyKind::ColumnShaped ? o.extent_col
                                                                    : o.extent_square;
    matrix.strategies.push_back({kind, extent});
  }
  KMeansConfig cfg;
  cfg.seed = o.seed;

  const auto records = run_benchmark(img, matrix, cfg, o.reps);
  const std::string csv = write_csv(records);
  if (o.csv == "-") {
    out << csv;
    err << "records=" << records.size() << "\n";
  } else {
    std::ofstream file(o.csv, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot open " + o.csv + " for writing");
    file << csv;
    if (!file) throw Error("failed writing " + o.csv);
    out << "records=" << records.size() << "\n";
  }
  return kOk;
}

struct GenOptions {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 3;
  std::size_t regions = 4;
  unsigned noise = 8;
  std::uint64_t seed = 42;
  std::string output;
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
  const Image img = generate_synthetic({o.width, o.height}, o.channels, o.regions, o.noise, o.seed);
  write_pnm_file(o.output, img);
  out << "wrote " << o.output << " " << o.width << "x" << o.height << " channels=" << o.channels
      << "\n";
  return kOk;
}

struct CompareOptions {
  std::string input;
  std::size_t k = 0;
  std::size_t workers = default_workers();
  std::uint64_t seed = 42;
  bool verbose = false;
};

int cmd_compare(const CompareOptions& o, std::ostream& out) {
  const Image img = read_pnm_file(o.input);
  KMeansConfig cfg;
  cfg.k = o.k;
  cfg.seed = o.seed;

  struct Row {
    std::string name;
    BlockShape shape;
    std::size_t blocks;
    double wall_ms;
  };
  const ClusteredResult baseline = run_whole_image_serial(img, cfg);
  const double baseline_ms = std::max(baseline.wall_ms, 1e-6);

  std::vector<Row> rows;
  for (const auto& name : kStrategyNames) {
    const Strategy strategy = Strategy::with_default_extent(strategy_kind(name));
    const BlockShape shape = derive_block_shape(strategy, img.dims());
    const ClusteredResult r = run_block_parallel(img, ExecutionPlan::block_parallel(strategy, o.workers, cfg));
    rows.push_back({name, shape, r.block_models.size(), std::max(r.wall_ms, 1e-6)});
  }

  auto print_row = [&](const std::string& name, const std::string& shape, const std::string& ms,
                       const std::string& ratio) {
    out << std::left << std::setw(10) << name << std::setw(16) << shape << std::right
        << std::setw(12) << ms << std::setw(18) << ratio << "\n";
  };
  print_row("strategy", "block_shape", "wall_ms", "speedup_vs_whole");
  print_row("whole", format_shape({img.height(), img.width()}), format_ms(baseline_ms), "1.000");
  for (const auto& r : rows) {
    std::ostringstream ratio;
    ratio << std::fixed << std::setprecision(3) << speedup(baseline_ms, r.wall_ms);
    print_row(r.name, format_shape(r.shape), format_ms(r.wall_ms), ratio.str());
  }

  const auto best = std::min_element(rows.begin(), rows.end(),
                                     [](const Row& a, const Row& b) { return a.wall_ms < b.wall_ms; });
  if (o.verbose) {
    out << "image=" << img.width() << "x" << img.height() << " channels=" << img.channels()
        << " k=" << o.k << " workers=" << o.workers << "\n";
    for (const auto& r : rows) out << "blocks[" << r.name << "]=" << r.blocks << "\n";
    out << "note: column-shaped [5793 1000] blocks were the reported winner on a 4656x5793 image "
           "on a Xeon E3-1220 V2; orderings are hardware-specific\n";
  }
  out << "best=" << best->name << "\n";
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block-parallel k-means clustering of raster images", "blockkm"};
  app.require_subcommand(1);

  ClusterOptions cluster;
  auto* sub_cluster = app.add_subcommand("cluster", "Cluster an image and write its cluster map");
  sub_cluster->add_option("--input", cluster.input, "Input P5/P6 image")->required();
  sub_cluster->add_option("--output", cluster.output, "Output cluster map")->required();
  sub_cluster->add_option("--k", cluster.k, "Number of clusters")->required()->check(kAtLeastOne);
  sub_cluster->add_option("--mode", cluster.mode)
      ->check(CLI::IsMember({"whole", "block-serial", "block-parallel"}))
      ->capture_default_str();
  sub_cluster->add_option("--strategy", cluster.strategy)->check(CLI::IsMember(kStrategyNames))->capture_default_str();
  sub_cluster->add_option("--extent", cluster.extent, "Block extent (default 1200/1000/1200)")
      ->check(kAtLeastOne);
  sub_cluster->add_option("--workers", cluster.workers)->check(kAtLeastOne)->capture_default_str();
  sub_cluster->add_option("--seed", cluster.seed)->capture_default_str();

  BenchOptions bench;
  auto* sub_bench = app.add_subcommand("bench", "Run the strategy x k x workers timing matrix");
  sub_bench->add_option("--input", bench.input)->required();
  sub_bench->add_option("--csv", bench.csv, "CSV destination, '-' for stdout")->required();
  sub_bench->add_option("--ks", bench.ks)->delimiter(',')->check(kAtLeastOne)->capture_default_str();
  sub_bench->add_option("--workers", bench.workers)->delimiter(',')->check(kAtLeastOne)->capture_default_str();
  sub_bench->add_option("--strategies", bench.strategies)
      ->delimiter(',')
      ->check(CLI::IsMember(kStrategyNames))
      ->capture_default_str();
  sub_bench->add_option("--reps", bench.reps)->check(kAtLeastOne)->capture_default_str();
  sub_bench->add_option("--seed", bench.seed)->capture_default_str();
  sub_bench->add_option("--extent-row", bench.extent_row)->check(kAtLeastOne)->capture_default_str();
  sub_bench->add_option("--extent-col", bench.extent_col)->check(kAtLeastOne)->capture_default_str();
  sub_bench->add_option("--extent-square", bench.extent_square)->check(kAtLeastOne)->capture_default_str();

  GenOptions gen;
  auto* sub_gen = app.add_subcommand("gen", "Write a deterministic synthetic test image");
  sub_gen->add_option("--width", gen.width)->required()->check(kAtLeastOne);
  sub_gen->add_option("--height", gen.height)->required()->check(kAtLeastOne);
  sub_gen->add_option("--channels", gen.channels)->check(CLI::IsMember({1, 3}))->capture_default_str();
  sub_gen->add_option("--regions", gen.regions)->check(kAtLeastOne)->capture_default_str();
  sub_gen->add_option("--noise", gen.noise)->check(CLI::Range(0u, 64u))->capture_default_str();
  sub_gen->add_option("--seed", gen.seed)->capture_default_str();
  sub_gen->add_option("--output", gen.output)->required();

  CompareOptions compare;
  auto* sub_compare = app.add_subcommand("compare", "Time row, column and square blocks against the whole image");
  sub_compare->add_option("--input", compare.input)->required();
  sub_compare->add_option("--k", compare.k)->required()->check(kAtLeastOne);
  sub_compare->add_option("--workers", compare.workers)->check(kAtLeastOne)->capture_default_str();
  sub_compare->add_option("--seed", compare.seed)->capture_default_str();
  sub_compare->add_flag("--verbose", compare.verbose);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*sub_cluster) return cmd_cluster(cluster, out);
    if (*sub_bench) return cmd_bench(bench, out, err);
    if (*sub_gen) return cmd_gen(gen, out);
    if (*sub_compare) return cmd_compare(compare, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace blockkm::cli
