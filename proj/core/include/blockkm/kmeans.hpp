#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "blockkm/image.hpp"

namespace blockkm {

/// Flat, row-major set of `size()` points of dimension `dim`.
class PointSet {
 public:
  PointSet(std::size_t dim, std::vector<double> values);

  /// One point per pixel, one coordinate per channel.
  static PointSet from_image(const Image& img);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return values_.size() / dim_; }
  std::span<const double> point(std::size_t i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::size_t dim_;
  std::vector<double> values_;
};

/// k centroids stored flat: centroid j occupies [j*dim, (j+1)*dim).
class Centroids {
 public:
  Centroids() = default;
  Centroids(std::size_t dim, std::vector<double> values);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t k() const noexcept { return dim_ == 0 ? 0 : values_.size() / dim_; }
  std::span<const double> operator[](std::size_t j) const noexcept {
    return {values_.data() + j * dim_, dim_};
  }
  std::span<double> operator[](std::size_t j) noexcept { return {values_.data() + j * dim_, dim_}; }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const Centroids&, const Centroids&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

struct KMeansConfig {
  std::size_t k = 2;
  std::size_t max_iters = 100;
  double tol = 1e-4;  // max centroid L2 movement, in sample units
  std::uint64_t seed = 42;
};

struct KMeansModel {
  Centroids centroids;
  std::vector<std::uint32_t> labels;
  double inertia = 0.0;
  std::size_t iterations = 0;
  /// Inertia returned by each Lloyd step, followed by the final inertia.
  std::vector<double> inertia_history;
};

struct LloydResult {
  Centroids centroids;
  std::vector<std::uint32_t> labels;
  double inertia = 0.0;
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// Nearest centroid under squared Euclidean distance; ties go to the lowest index.
std::uint32_t nearest_centroid(std::span<const double> point, const Centroids& centroids) noexcept;

/// k-means++ seeding driven by SplitMix64(seed). Throws InvalidArgument on an
/// empty point set or k == 0.
Centroids init_kmeans_pp(const PointSet& ps, std::size_t k, std::uint64_t seed);

/// One assignment + mean-update pass with farthest-point repair of empty
/// clusters. Throws InvalidArgument on dimension mismatch.
LloydResult lloyd_step(const PointSet& ps, const Centroids& centroids);

/// Full seeded k-means; the returned model is canonicalized and each label
/// names its nearest centroid.
KMeansModel run_kmeans(const PointSet& ps, const KMeansConfig& cfg);

/// Sorts centroids by (component mean, then lexicographically), stably, and
/// relabels points to match.
KMeansModel canonicalize(KMeansModel model);

/// Cluster map: every pixel takes its centroid's components rounded half-up
/// and clamped to [0, maxval].
Image render(Dims dims, std::span<const std::uint32_t> labels, const Centroids& centroids,
             std::uint32_t maxval);

}  // namespace blockkm
