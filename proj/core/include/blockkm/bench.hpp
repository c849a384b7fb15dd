#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "blockkm/block_partition.hpp"
#include "blockkm/image.hpp"
#include "blockkm/kmeans.hpp"

namespace blockkm {

/// One row of a speedup/efficiency table. Times are milliseconds, each the
/// median over `repetitions` measurements.
struct BenchRecord {
  Dims data_size;
  Strategy strategy;
  std::size_t k = 0;
  std::size_t workers = 0;
  double serial_ms = 0.0;        // whole-image serial k-means
  double block_serial_ms = 0.0;  // blocks processed one after another
  double parallel_ms = 0.0;      // blocks spread over `workers` threads
  double speedup = 0.0;          // serial_ms / parallel_ms
  double efficiency = 0.0;       // speedup / workers
  std::size_t repetitions = 1;
};

/// serial_ms / parallel_ms. Throws InvalidArgument unless both are > 0.
double speedup(double serial_ms, double parallel_ms);

/// speedup / workers. Throws InvalidArgument for non-positive speedup or workers == 0.
double efficiency(double speedup, std::size_t workers);

/// Median of a non-empty sample (mean of the two middle values for even sizes).
double median(std::vector<double> values);

struct BenchMatrix {
  std::vector<Strategy> strategies;
  std::vector<std::size_t> ks;
  std::vector<std::size_t> workers;
};

/// Measures the strategy x k x workers matrix one run at a time. Records are
/// emitted strategies-outer, then ks, then workers, each in the given order.
std::vector<BenchRecord> run_benchmark(const Image& img, const BenchMatrix& matrix,
                                       const KMeansConfig& kmeans, std::size_t repetitions = 3);

inline constexpr const char* kCsvHeader =
    "data_size,strategy,extent,k,workers,serial_ms,block_serial_ms,parallel_ms,speedup,efficiency";

/// Header line plus one LF-terminated row per record, reals to 6 decimals.
std::string write_csv(const std::vector<BenchRecord>& records);

}  // namespace blockkm
