#include "polydisk/evaluate.hpp"

#include <algorithm>
#include <numeric>

namespace polydisk {

namespace {

int label_count(std::span<const int> labels, const char* what) {
  int max_label = -1;
  for (const int label : labels) {
    require(label >= 0, ErrorKind::InvalidLabel,
            std::string(what) + " labels must be non-negative");
    max_label = std::max(max_label, label);
  }
  return max_label + 1;
}

struct Contingency {
  int n_classes = 0;
  int n_clusters = 0;
  std::vector<std::vector<long>> counts;  // [class][cluster]
  std::vector<long> class_totals;
  std::vector<long> cluster_totals;
};

Contingency tabulate(std::span<const int> true_labels, std::span<const int> pred_labels) {
  require(true_labels.size() == pred_labels.size(), ErrorKind::LengthMismatch,
          "label sequences differ in length");
  require(!true_labels.empty(), ErrorKind::LengthMismatch, "empty label sequences");
  Contingency c;
  c.n_classes = label_count(true_labels, "true");
  c.n_clusters = label_count(pred_labels, "predicted");
  c.counts.assign(c.n_classes, std::vector<long>(c.n_clusters, 0));
  c.class_totals.assign(c.n_classes, 0);
  c.cluster_totals.assign(c.n_clusters, 0);
  for (std::size_t i = 0; i < true_labels.size(); ++i) {
    ++c.counts[true_labels[i]][pred_labels[i]];
    ++c.class_totals[true_labels[i]];
    ++c.cluster_totals[pred_labels[i]];
  }
  return c;
}

double safe_ratio(long num, long den) { return den == 0 ? 0.0 : static_cast<double>(num) / den; }

// Macro scores for the mapping cluster j -> mapping[j] (values >= n_classes
// act as reject).
void score_mapping(const Contingency& c, std::span<const int> mapping,
                   std::vector<PerClassScore>& per_class, double& precision, double& recall,
                   double& f1) {
  per_class.assign(c.n_classes, PerClassScore{});
  std::vector<long> tp(c.n_classes, 0);
  std::vector<long> predicted(c.n_classes, 0);
  for (int j = 0; j < c.n_clusters; ++j) {
    const int cls = mapping[j];
    if (cls < 0 || cls >= c.n_classes) continue;
    tp[cls] += c.counts[cls][j];
    predicted[cls] += c.cluster_totals[j];
  }
  precision = 0.0;
  recall = 0.0;
  f1 = 0.0;
  for (int i = 0; i < c.n_classes; ++i) {
    PerClassScore& s = per_class[i];
    s.precision = safe_ratio(tp[i], predicted[i]);
    s.recall = safe_ratio(tp[i], c.class_totals[i]);
    s.f1 = s.precision + s.recall == 0.0
               ? 0.0
               : 2.0 * s.precision * s.recall / (s.precision + s.recall);
    precision += s.precision;
    recall += s.recall;
    f1 += s.f1;
  }
  precision /= c.n_classes;
  recall /= c.n_classes;
  f1 /= c.n_classes;
}

}  // namespace

std::vector<std::vector<long>> confusion_matrix(std::span<const int> true_labels,
                                                std::span<const int> pred_labels,
                                                std::span<const int> permutation) {
  const Contingency c = tabulate(true_labels, pred_labels);
  require(static_cast<int>(permutation.size()) == c.n_clusters, ErrorKind::InvalidPermutation,
          "permutation must map every cluster index");

  int n_mapped = 0;
  std::vector<bool> taken;
  for (const int target : permutation) {
    if (target == kRejectClass) continue;
    require(target >= 0, ErrorKind::InvalidPermutation, "mapped class must be non-negative");
    n_mapped = std::max(n_mapped, target + 1);
  }
  taken.assign(n_mapped, false);
  for (const int target : permutation) {
    if (target == kRejectClass) continue;
    require(!taken[target], ErrorKind::InvalidPermutation, "permutation maps two clusters alike");
    taken[target] = true;
  }

  const bool has_reject =
      std::any_of(permutation.begin(), permutation.end(), [](int t) { return t == kRejectClass; });
  const int n_cols = std::max(c.n_classes, n_mapped) + (has_reject ? 1 : 0);
  std::vector<std::vector<long>> confusion(c.n_classes, std::vector<long>(n_cols, 0));
  for (int i = 0; i < c.n_classes; ++i) {
    for (int j = 0; j < c.n_clusters; ++j) {
      const int col = permutation[j] == kRejectClass ? n_cols - 1 : permutation[j];
      confusion[i][col] += c.counts[i][j];
    }
  }
  return confusion;
}

EvalReport best_permutation_score(std::span<const int> true_labels,
                                  std::span<const int> pred_labels) {
  const Contingency c = tabulate(true_labels, pred_labels);
  require(c.n_clusters <= kMaxClustersForScoring && c.n_classes <= kMaxClustersForScoring,
          ErrorKind::TooManyClusters, "permutation search is bounded at 10 indices");

  // Enumerate assignments as permutations of the padded index set; padded
  // class indices (>= n_classes) act as reject targets for surplus clusters.
  const int m = std::max(c.n_classes, c.n_clusters);
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);

  EvalReport best;
  std::vector<PerClassScore> per_class;
  bool have_best = false;
  std::vector<int> mapping(c.n_clusters);
  do {
    for (int j = 0; j < c.n_clusters; ++j) {
      mapping[j] = perm[j] < c.n_classes ? perm[j] : kRejectClass;
    }
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    score_mapping(c, mapping, per_class, precision, recall, f1);
    if (!have_best || f1 > best.f1) {
      best.permutation = mapping;
      best.precision = precision;
      best.recall = recall;
      best.f1 = f1;
      best.per_class = per_class;
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  best.confusion = confusion_matrix(true_labels, pred_labels, best.permutation);
  return best;
}

}  // namespace polydisk
