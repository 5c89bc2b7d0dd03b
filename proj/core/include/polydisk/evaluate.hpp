#pragma once

#include <span>
#include <vector>

#include "polydisk/errors.hpp"

namespace polydisk {

/// Exhaustive permutation search is bounded at 10 clusters.
inline constexpr int kMaxClustersForScoring = 10;

/// Cluster index that a surplus cluster maps to when there are more clusters
/// than true classes; such points count only against their true class.
inline constexpr int kRejectClass = -1;

struct PerClassScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  std::vector<std::vector<long>> confusion;  // rows: true classes, cols: mapped classes
  std::vector<int> permutation;              // cluster index -> class index (or kRejectClass)
  double precision = 0.0;                    // macro averages
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<PerClassScore> per_class;
};

/// Confusion matrix under a fixed cluster-to-class mapping:
/// entry (i, j) counts points with true class i mapped to class j. When the
/// mapping sends some cluster to kRejectClass, a trailing reject column is
/// appended so entries still sum to the number of points.
std::vector<std::vector<long>> confusion_matrix(std::span<const int> true_labels,
                                                std::span<const int> pred_labels,
                                                std::span<const int> permutation);

/// Scores unsupervised labels against ground truth by trying every
/// cluster-to-class assignment and keeping the best macro-F1 (ties resolve to
/// the lexicographically smallest permutation). Per-class precision, recall
/// and F1 are always reported; 0/0 ratios count as 0.
EvalReport best_permutation_score(std::span<const int> true_labels,
                                  std::span<const int> pred_labels);

}  // namespace polydisk
