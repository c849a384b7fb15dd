#include "blockkm/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "blockkm/errors.hpp"
#include "blockkm/runtime.hpp"

namespace blockkm {

double speedup(double serial_ms, double parallel_ms) {
  if (!(serial_ms > 0.0) || !(parallel_ms > 0.0)) {
    throw InvalidArgument("speedup requires positive serial and parallel times");
  }
  return serial_ms / parallel_ms;
}

double efficiency(double speedup, std::size_t workers) {
  if (workers == 0) throw InvalidArgument("efficiency requires workers >= 1");
  if (!(speedup > 0.0)) throw InvalidArgument("efficiency requires a positive speedup");
  return speedup / static_cast<double>(workers);
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

namespace {

// steady_clock can report 0 for sub-tick runs; clamp so ratios stay defined.
constexpr double kMinMeasurableMs = 1e-6;

double measure(const Image& img, const ExecutionPlan& plan, std::size_t repetitions) {
  std::vector<double> times;
  times.reserve(repetitions);
  for (std::size_t r = 0; r < repetitions; ++r) times.push_back(run(img, plan).wall_ms);
  return std::max(median(std::move(times)), kMinMeasurableMs);
}

}  // namespace

std::vector<BenchRecord> run_benchmark(const Image& img, const BenchMatrix& matrix,
                                       const KMeansConfig& kmeans, std::size_t repetitions) {
  if (repetitions < 1) throw InvalidArgument("repetitions must be >= 1");
  for (auto w : matrix.workers) {
    if (w < 1) throw InvalidArgument("worker counts must be >= 1");
  }
  for (auto k : matrix.ks) {
    if (k < 1) throw InvalidArgument("k values must be >= 1");
  }

  std::map<std::size_t, double> serial_by_k;
  auto serial_for = [&](std::size_t k) {
    auto it = serial_by_k.find(k);
    if (it != serial_by_k.end()) return it->second;
    KMeansConfig cfg = kmeans;
    cfg.k = k;
    const double t = measure(img, ExecutionPlan::whole_image(cfg), repetitions);
    serial_by_k.emplace(k, t);
    return t;
  };

  std::vector<BenchRecord> records;
  records.reserve(matrix.strategies.size() * matrix.ks.size() * matrix.workers.size());
  for (const auto& strategy : matrix.strategies) {
    for (auto k : matrix.ks) {
      KMeansConfig cfg = kmeans;
      cfg.k = k;
      const double serial_ms = serial_for(k);
      const double block_serial_ms = measure(img, ExecutionPlan::block_serial(strategy, cfg), repetitions);
      for (auto w : matrix.workers) {
        BenchRecord rec;
        rec.data_size = img.dims();
        rec.strategy = strategy;
        rec.k = k;
        rec.workers = w;
        rec.serial_ms = serial_ms;
        rec.block_serial_ms = block_serial_ms;
        rec.parallel_ms = measure(img, ExecutionPlan::block_parallel(strategy, w, cfg), repetitions);
        rec.speedup = speedup(rec.serial_ms, rec.parallel_ms);
        rec.efficiency = efficiency(rec.speedup, w);
        rec.repetitions = repetitions;
        records.push_back(rec);
      }
    }
  }
  return records;
}

std::string write_csv(const std::vector<BenchRecord>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  char line[512];
  for (const auto& r : records) {
    std::snprintf(line, sizeof line, "%zux%zu,%s,%zu,%zu,%zu,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  r.data_size.width, r.data_size.height,
                  std::string(to_string(r.strategy.kind)).c_str(), r.strategy.extent, r.k,
                  r.workers, r.serial_ms, r.block_serial_ms, r.parallel_ms, r.speedup,
                  r.efficiency);
    out += line;
  }
  return out;
}

}  // namespace blockkm
