#include "polydisk/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polydisk/rng.hpp"

namespace polydisk {

namespace {

bool same_coordinates(const ProductPoint& a, const ProductPoint& b) {
  return a.log_p0 == b.log_p0 && a.n_pulses == b.n_pulses && a.mu == b.mu;
}

std::size_t count_distinct(std::span<const ProductPoint> points) {
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i && !seen; ++j) seen = same_coordinates(points[i], points[j]);
    if (!seen) ++distinct;
  }
  return distinct;
}

std::vector<ProductPoint> init_random_points(std::span<const ProductPoint> points, int k,
                                             PhiloxRng& rng) {
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[rng.next_below(i + 1)]);
  }
  std::vector<ProductPoint> centroids;
  centroids.reserve(k);
  for (const std::size_t idx : order) {
    bool duplicate = false;
    for (const ProductPoint& c : centroids) {
      if (same_coordinates(points[idx], c)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) centroids.push_back(points[idx]);
    if (static_cast<int>(centroids.size()) == k) break;
  }
  return centroids;
}

std::vector<ProductPoint> init_plus_plus(std::span<const ProductPoint> points, int k,
                                         PhiloxRng& rng) {
  std::vector<ProductPoint> centroids;
  centroids.reserve(k);
  centroids.push_back(points[rng.next_below(points.size())]);
  std::vector<double> best_d2(points.size());
  while (static_cast<int>(centroids.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const ProductPoint& c : centroids) {
        best = std::min(best, product_distance(points[i], c));
      }
      best_d2[i] = best * best;
      total += best_d2[i];
    }
    std::size_t chosen = 0;
    if (total > 0.0) {
      const double target = rng.next_double() * total;
      double acc = 0.0;
      chosen = points.size() - 1;
      for (std::size_t i = 0; i < points.size(); ++i) {
        acc += best_d2[i];
        if (acc > target) {
          chosen = i;
          break;
        }
      }
    } else {
      // All mass on existing centroids; fall back to the first unseen value.
      for (std::size_t i = 0; i < points.size(); ++i) {
        bool duplicate = false;
        for (const ProductPoint& c : centroids) {
          if (same_coordinates(points[i], c)) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) {
          chosen = i;
          break;
        }
      }
    }
    centroids.push_back(points[chosen]);
  }
  return centroids;
}

ClusterModel kmeans_single(std::span<const ProductPoint> points, const KmeansOptions& options,
                           std::uint64_t seed) {
  const std::size_t n = points.size();
  const int k = options.k;
  PhiloxRng rng(seed);

  ClusterModel model;
  model.k = k;
  model.centroids = options.init == KmeansInit::random_points
                        ? init_random_points(points, k, rng)
                        : init_plus_plus(points, k, rng);
  model.labels.assign(n, -1);

  std::vector<int> previous_labels;
  double previous_inertia = std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    model.n_iter = iter;
    previous_labels = model.labels;

    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = product_distance(points[i], model.centroids[0]);
      for (int c = 1; c < k; ++c) {
        const double d = product_distance(points[i], model.centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      model.labels[i] = best;
    }

    // Reseed any emptied cluster at the point farthest from its centroid,
    // stealing from clusters that keep at least two members.
    std::vector<int> sizes(k, 0);
    for (const int label : model.labels) ++sizes[label];
    for (int c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      double far_d = -1.0;
      std::size_t far_i = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[model.labels[i]] < 2) continue;
        const double d = product_distance(points[i], model.centroids[c]);
        if (d > far_d) {
          far_d = d;
          far_i = i;
        }
      }
      --sizes[model.labels[far_i]];
      model.labels[far_i] = c;
      ++sizes[c];
      model.centroids[c] = points[far_i];
    }

    model.inertia = inertia(points, model.labels, model.centroids);
    model.inertia_trace.push_back(model.inertia);

    if (model.labels == previous_labels) {
      model.converged = true;
      break;
    }
    if (previous_inertia - model.inertia < options.tol * previous_inertia) {
      model.converged = true;
      break;
    }
    previous_inertia = model.inertia;

    for (int c = 0; c < k; ++c) {
      std::vector<ProductPoint> members;
      for (std::size_t i = 0; i < n; ++i) {
        if (model.labels[i] == c) members.push_back(points[i]);
      }
      const std::vector<double> weights(members.size(), 1.0 / members.size());
      const BarycenterResult mean = karcher_mean(members, weights);
      if (!mean.converged) ++model.karcher_failures;
      model.centroids[c] = mean.point;
    }
  }

  return model;
}

}  // namespace

double inertia(std::span<const ProductPoint> points, std::span<const int> labels,
               std::span<const ProductPoint> centroids) {
  require(points.size() == labels.size(), ErrorKind::DimensionMismatch,
          "labels and points differ in length");
  double acc = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(labels[i] >= 0 && labels[i] < static_cast<int>(centroids.size()),
            ErrorKind::InvalidLabel, "label out of range at point " + std::to_string(i));
    const double d = product_distance(points[i], centroids[labels[i]]);
    acc += d * d;
  }
  return acc;
}

ClusterModel kmeans(std::span<const ProductPoint> points, const KmeansOptions& options) {
  require(options.k >= 1, ErrorKind::TooFewPoints, "k must be at least 1");
  require(options.max_iter >= 1, ErrorKind::ConfigError, "max_iter must be at least 1");
  require(options.restarts >= 1, ErrorKind::ConfigError, "restarts must be at least 1");
  require(!points.empty(), ErrorKind::TooFewPoints, "no points to cluster");
  for (const ProductPoint& p : points) validate_product_point(p);
  require(count_distinct(points) >= static_cast<std::size_t>(options.k), ErrorKind::TooFewPoints,
          "k exceeds the number of distinct points");

  ClusterModel best;
  bool have_best = false;
  for (int r = 0; r < options.restarts; ++r) {
    const std::uint64_t seed =
        options.restarts == 1 ? options.seed : derive_seed(options.seed, static_cast<std::uint64_t>(r));
    ClusterModel model = kmeans_single(points, options, seed);
    if (!have_best || model.inertia < best.inertia) {
      best = std::move(model);
      have_best = true;
    }
  }
  return best;
}

}  // namespace polydisk
