#pragma once

#include <vector>

namespace lcuts {

using Grouping = std::vector<std::vector<int>>;

/// 2TP / (2TP + FP + FN). Undefined (InputError) when all three are zero.
double dice(long tp, long fp, long fn);

struct Match {
  int pred = 0;
  int truth = 0;
  long overlap = 0;
};

/// One-to-one assignment of predicted to truth groups maximizing total overlap.
/// Pairs with zero overlap are left out. Sorted by predicted index.
std::vector<Match> match_clusters(const Grouping& pred, const Grouping& truth);

/// Maximum total overlap for a rectangular overlap matrix (rows x cols), with the
/// assignment as a row -> column map (-1 for unassigned rows).
std::vector<int> max_overlap_assignment(const std::vector<std::vector<long>>& overlap);

struct Counts {
  long tp = 0;
  long fp = 0;
  long fn = 0;
};

struct EvalReport {
  double gacc = 0.0;
  double cacc = 0.0;
  Counts nodeLevel;
  Counts clusterLevel;
  std::vector<Match> matches;
};

struct Accuracy {
  double value = 0.0;
  Counts counts;
};

/// Node-level Dice over the optimal matching.
Accuracy grouping_accuracy(const Grouping& pred, const Grouping& truth);

/// Cluster-level Dice: a matched pair is a hit when its overlap reaches
/// overlapFrac * max(|pred|, |truth|). Among matchings with maximum total
/// overlap, the one with the most hits is used.
Accuracy counting_accuracy(const Grouping& pred, const Grouping& truth, double overlapFrac = 0.5);

EvalReport evaluate(const Grouping& pred, const Grouping& truth, double overlapFrac = 0.5);

}  // namespace lcuts
