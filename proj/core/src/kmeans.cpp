#include "blockkm/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "blockkm/errors.hpp"
#include "blockkm/splitmix.hpp"

namespace blockkm {

PointSet::PointSet(std::size_t dim, std::vector<double> values)
    : dim_(dim), values_(std::move(values)) {
  if (dim_ == 0) throw InvalidArgument("point dimension must be >= 1");
  if (values_.empty()) throw InvalidArgument("point set is empty");
  if (values_.size() % dim_ != 0) {
    throw InvalidArgument("point values are not a multiple of the dimension");
  }
}

PointSet PointSet::from_image(const Image& img) {
  const auto s = img.samples();
  return PointSet(img.channels(), std::vector<double>(s.begin(), s.end()));
}

Centroids::Centroids(std::size_t dim, std::vector<double> values)
    : dim_(dim), values_(std::move(values)) {
  if (dim_ == 0 || values_.empty() || values_.size() % dim_ != 0) {
    throw InvalidArgument("centroids must hold k >= 1 vectors of dimension >= 1");
  }
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    d += t * t;
  }
  return d;
}

std::uint32_t nearest_centroid(std::span<const double> point, const Centroids& centroids) noexcept {
  std::uint32_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < centroids.k(); ++j) {
    const double d = squared_distance(point, centroids[j]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<std::uint32_t>(j);
    }
  }
  return best;
}

Centroids init_kmeans_pp(const PointSet& ps, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw InvalidArgument("k must be >= 1");
  const std::size_t n = ps.size();
  const std::size_t dim = ps.dim();
  SplitMix64 rng(seed);

  std::vector<double> values;
  values.reserve(k * dim);
  std::vector<bool> chosen(n, false);
  auto take = [&](std::size_t i) {
    chosen[i] = true;
    const auto p = ps.point(i);
    values.insert(values.end(), p.begin(), p.end());
  };

  take(static_cast<std::size_t>(rng.next() % n));

  // weight[i] = squared distance from point i to its nearest chosen centroid.
  std::vector<double> weight(n);
  const auto first = std::span<const double>(values.data(), dim);
  for (std::size_t i = 0; i < n; ++i) weight[i] = squared_distance(ps.point(i), first);

  while (values.size() < k * dim) {
    const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double cumulative = 0.0;
      std::size_t last_positive = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (weight[i] <= 0.0) continue;
        last_positive = i;
        cumulative += weight[i];
        if (cumulative > target) {
          pick = i;
          break;
        }
      }
      if (pick == n) pick = last_positive;  // rounding left target at the top edge
    } else {
      const auto it = std::find(chosen.begin(), chosen.end(), false);
      pick = it == chosen.end() ? 0 : static_cast<std::size_t>(it - chosen.begin());
    }
    take(pick);

    const auto c = std::span<const double>(values.data() + values.size() - dim, dim);
    for (std::size_t i = 0; i < n; ++i) {
      weight[i] = std::min(weight[i], squared_distance(ps.point(i), c));
    }
  }
  return Centroids(dim, std::move(values));
}

namespace {

void assign(const PointSet& ps, const Centroids& centroids, std::vector<std::uint32_t>& labels) {
  labels.resize(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) labels[i] = nearest_centroid(ps.point(i), centroids);
}

double inertia_of(const PointSet& ps, const Centroids& centroids,
                  std::span<const std::uint32_t> labels) {
  double total = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    total += squared_distance(ps.point(i), centroids[labels[i]]);
  }
  return total;
}

}  // namespace

LloydResult lloyd_step(const PointSet& ps, const Centroids& centroids) {
  if (centroids.k() == 0) throw InvalidArgument("no centroids");
  if (centroids.dim() != ps.dim()) {
    throw InvalidArgument("centroid dimension " + std::to_string(centroids.dim()) +
                          " does not match point dimension " + std::to_string(ps.dim()));
  }
  const std::size_t n = ps.size();
  const std::size_t k = centroids.k();
  const std::size_t dim = ps.dim();

  LloydResult out;
  assign(ps, centroids, out.labels);

  std::vector<double> sums(k * dim, 0.0);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = ps.point(i);
    const std::size_t j = out.labels[i];
    ++counts[j];
    for (std::size_t d = 0; d < dim; ++d) sums[j * dim + d] += p[d];
  }

  std::vector<double> next(centroids.values().begin(), centroids.values().end());
  bool any_empty = false;
  for (std::size_t j = 0; j < k; ++j) {
    if (counts[j] == 0) {
      any_empty = true;
      continue;
    }
    for (std::size_t d = 0; d < dim; ++d) {
      next[j * dim + d] = sums[j * dim + d] / static_cast<double>(counts[j]);
    }
  }
  out.centroids = Centroids(dim, std::move(next));

  if (any_empty) {
    // Each empty cluster, in index order, takes over the point farthest from
    // its assigned centroid; that point then sits at distance 0.
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = squared_distance(ps.point(i), out.centroids[out.labels[i]]);
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (counts[j] != 0) continue;
      const auto far = static_cast<std::size_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
      const auto p = ps.point(far);
      std::copy(p.begin(), p.end(), out.centroids[j].begin());
      out.labels[far] = static_cast<std::uint32_t>(j);
      dist[far] = 0.0;
    }
    assign(ps, out.centroids, out.labels);
  }

  out.inertia = inertia_of(ps, out.centroids, out.labels);
  return out;
}

KMeansModel run_kmeans(const PointSet& ps, const KMeansConfig& cfg) {
  if (cfg.k == 0) throw InvalidArgument("k must be >= 1");
  if (cfg.max_iters == 0) throw InvalidArgument("max_iters must be >= 1");
  if (!(cfg.tol >= 0.0)) throw InvalidArgument("tol must be >= 0");

  KMeansModel model;
  model.centroids = init_kmeans_pp(ps, cfg.k, cfg.seed);
  std::vector<std::uint32_t> previous;

  while (model.iterations < cfg.max_iters) {
    LloydResult step = lloyd_step(ps, model.centroids);
    ++model.iterations;
    model.inertia_history.push_back(step.inertia);

    double movement = 0.0;
    for (std::size_t j = 0; j < step.centroids.k(); ++j) {
      movement = std::max(movement, squared_distance(step.centroids[j], model.centroids[j]));
    }
    const bool stable = step.labels == previous;
    previous = std::move(step.labels);
    model.centroids = std::move(step.centroids);
    if (std::sqrt(movement) < cfg.tol || stable) break;
  }

  // Labels from the last step refer to the centroids before their update;
  // reassign so each label is the nearest final centroid.
  assign(ps, model.centroids, model.labels);
  model.inertia = inertia_of(ps, model.centroids, model.labels);
  model.inertia_history.push_back(model.inertia);
  return canonicalize(std::move(model));
}

KMeansModel canonicalize(KMeansModel model) {
  const std::size_t k = model.centroids.k();
  const std::size_t dim = model.centroids.dim();
  std::vector<double> means(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto c = model.centroids[j];
    means[j] = std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(dim);
  }

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (means[a] != means[b]) return means[a] < means[b];
    const auto ca = model.centroids[a];
    const auto cb = model.centroids[b];
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
  });

  std::vector<std::uint32_t> new_index(k);
  std::vector<double> sorted;
  sorted.reserve(k * dim);
  for (std::size_t pos = 0; pos < k; ++pos) {
    new_index[order[pos]] = static_cast<std::uint32_t>(pos);
    const auto c = model.centroids[order[pos]];
    sorted.insert(sorted.end(), c.begin(), c.end());
  }
  model.centroids = Centroids(dim, std::move(sorted));
  for (auto& label : model.labels) label = new_index[label];
  return model;
}

Image render(Dims dims, std::span<const std::uint32_t> labels, const Centroids& centroids,
             std::uint32_t maxval) {
  if (labels.size() != dims.area()) {
    throw InvalidArgument("label count " + std::to_string(labels.size()) +
                          " does not match image area " + std::to_string(dims.area()));
  }
  const std::size_t k = centroids.k();
  const std::size_t dim = centroids.dim();

  std::vector<Sample> palette(k * dim);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t d = 0; d < dim; ++d) {
      const double v = std::floor(centroids[j][d] + 0.5);
      palette[j * dim + d] = static_cast<Sample>(std::clamp(v, 0.0, static_cast<double>(maxval)));
    }
  }

  std::vector<Sample> samples(dims.area() * dim);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= k) throw InvalidArgument("label " + std::to_string(labels[i]) + " out of range");
    std::copy_n(palette.begin() + static_cast<std::ptrdiff_t>(labels[i] * dim), dim,
                samples.begin() + static_cast<std::ptrdiff_t>(i * dim));
  }
  return Image(dims, dim, maxval, std::move(samples));
}

}  // namespace blockkm
