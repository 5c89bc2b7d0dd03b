#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polydisk/poincare.hpp"

namespace polydisk {

enum class KmeansInit {
  random_points,     // k distinct data points chosen at random
  plus_plus,         // distance-squared weighted seeding
};

struct KmeansOptions {
  int k = 1;
  std::uint64_t seed = 0;
  int max_iter = 100;
  double tol = 1e-6;  // relative inertia improvement
  KmeansInit init = KmeansInit::random_points;
  int restarts = 1;
};

struct ClusterModel {
  int k = 0;
  std::vector<ProductPoint> centroids;
  std::vector<int> labels;
  double inertia = 0.0;
  int n_iter = 0;
  bool converged = false;
  std::vector<double> inertia_trace;  // one entry per assignment step
  int karcher_failures = 0;           // centroid updates that hit max_iter
};

/// Metric k-means under product_distance with Karcher-mean centroid updates.
///
/// Assignment breaks ties toward the lowest centroid index; an emptied
/// cluster is reseeded at the point farthest from its current centroid. With
/// restarts > 1 each run derives its own seed and the lowest-inertia model
/// wins. Same seed and inputs give a bit-identical model.
ClusterModel kmeans(std::span<const ProductPoint> points, const KmeansOptions& options);

/// Sum of squared distances from each point to its assigned centroid.
double inertia(std::span<const ProductPoint> points, std::span<const int> labels,
               std::span<const ProductPoint> centroids);

}  // namespace polydisk
