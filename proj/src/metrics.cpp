#include "lcuts/metrics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>

#include "lcuts/error.hpp"

namespace lcuts {

double dice(long tp, long fp, long fn) {
  if (tp < 0 || fp < 0 || fn < 0) throw InputError("dice: counts must be non-negative");
  if (tp == 0 && fp == 0 && fn == 0) throw InputError("dice: undefined for tp = fp = fn = 0");
  return static_cast<double>(2 * tp) / static_cast<double>(2 * tp + fp + fn);
}

// Hungarian algorithm (shortest augmenting paths with potentials) on the
// negated overlap, padded to a square matrix. Integer arithmetic keeps it exact.
std::vector<int> max_overlap_assignment(const std::vector<std::vector<long>>& overlap) {
  const int rows = static_cast<int>(overlap.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(overlap.front().size());
  const int n = std::max(rows, cols);
  if (n == 0) return std::vector<int>(static_cast<std::size_t>(rows), -1);
  const auto cost = [&](int i, int j) -> long {
    if (i >= rows || j >= cols) return 0;
    return -overlap[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };
  constexpr long kInf = std::numeric_limits<long>::max() / 4;
  // 1-based arrays; p[j] is the row assigned to column j.
  std::vector<long> u(static_cast<std::size_t>(n + 1), 0), v(static_cast<std::size_t>(n + 1), 0);
  std::vector<int> p(static_cast<std::size_t>(n + 1), 0), way(static_cast<std::size_t>(n + 1), 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<long> minv(static_cast<std::size_t>(n + 1), kInf);
    std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = p[static_cast<std::size_t>(j0)];
      long delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const long cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assign(static_cast<std::size_t>(rows), -1);
  for (int j = 1; j <= n; ++j) {
    const int i = p[static_cast<std::size_t>(j)] - 1;
    if (i < rows && j - 1 < cols) assign[static_cast<std::size_t>(i)] = j - 1;
  }
  return assign;
}

namespace {

void check_universe(const Grouping& pred, const Grouping& truth) {
  std::multiset<int> a, b;
  for (const auto& g : pred) a.insert(g.begin(), g.end());
  for (const auto& g : truth) b.insert(g.begin(), g.end());
  if (a != b) throw InputError("predicted and truth groupings cover different node sets");
  if (std::adjacent_find(a.begin(), a.end()) != a.end()) throw InputError("a node appears in more than one group");
}

std::vector<std::vector<long>> overlap_matrix(const Grouping& pred, const Grouping& truth) {
  std::map<int, int> truth_of;
  for (std::size_t t = 0; t < truth.size(); ++t) {
    for (int id : truth[t]) truth_of[id] = static_cast<int>(t);
  }
  std::vector<std::vector<long>> ov(pred.size(), std::vector<long>(truth.size(), 0));
  for (std::size_t p = 0; p < pred.size(); ++p) {
    for (int id : pred[p]) ++ov[p][static_cast<std::size_t>(truth_of.at(id))];
  }
  return ov;
}

std::size_t total_size(const Grouping& g) {
  std::size_t s = 0;
  for (const auto& x : g) s += x.size();
  return s;
}

}  // namespace

namespace {

bool is_hit(long overlap, std::size_t predSize, std::size_t truthSize, double overlapFrac) {
  return static_cast<double>(overlap) >= overlapFrac * static_cast<double>(std::max(predSize, truthSize));
}

// Maximum total overlap; with overlapFrac set, ties between optimal matchings
// go to the one with the most counting hits, which makes the hit count
// independent of group order.
std::vector<Match> optimal_matches(const Grouping& pred, const Grouping& truth, std::optional<double> overlapFrac) {
  check_universe(pred, truth);
  const auto ov = overlap_matrix(pred, truth);
  auto weights = ov;
  if (overlapFrac) {
    const long scale = static_cast<long>(std::min(pred.size(), truth.size())) + 1;
    for (std::size_t p = 0; p < pred.size(); ++p) {
      for (std::size_t t = 0; t < truth.size(); ++t) {
        const bool hit = ov[p][t] > 0 && is_hit(ov[p][t], pred[p].size(), truth[t].size(), *overlapFrac);
        weights[p][t] = ov[p][t] * scale + (hit ? 1 : 0);
      }
    }
  }
  const auto assign = max_overlap_assignment(weights);
  std::vector<Match> out;
  for (std::size_t p = 0; p < assign.size(); ++p) {
    const int t = assign[p];
    if (t < 0 || ov[p][static_cast<std::size_t>(t)] == 0) continue;
    out.push_back({static_cast<int>(p), t, ov[p][static_cast<std::size_t>(t)]});
  }
  return out;
}

}  // namespace

std::vector<Match> match_clusters(const Grouping& pred, const Grouping& truth) {
  return optimal_matches(pred, truth, std::nullopt);
}

Accuracy grouping_accuracy(const Grouping& pred, const Grouping& truth) {
  const auto matches = match_clusters(pred, truth);
  Accuracy acc;
  for (const auto& m : matches) acc.counts.tp += m.overlap;
  const auto nodes = static_cast<long>(total_size(truth));
  acc.counts.fn = nodes - acc.counts.tp;
  acc.counts.fp = nodes - acc.counts.tp;
  acc.value = dice(acc.counts.tp, acc.counts.fp, acc.counts.fn);
  return acc;
}

Accuracy counting_accuracy(const Grouping& pred, const Grouping& truth, double overlapFrac) {
  if (!(overlapFrac > 0.0 && overlapFrac <= 1.0)) throw InputError("overlap fraction must be in (0, 1]");
  const auto matches = optimal_matches(pred, truth, overlapFrac);
  Accuracy acc;
  for (const auto& m : matches) {
    if (is_hit(m.overlap, pred[static_cast<std::size_t>(m.pred)].size(), truth[static_cast<std::size_t>(m.truth)].size(),
               overlapFrac)) {
      ++acc.counts.tp;
    }
  }
  acc.counts.fp = static_cast<long>(pred.size()) - acc.counts.tp;
  acc.counts.fn = static_cast<long>(truth.size()) - acc.counts.tp;
  acc.value = dice(acc.counts.tp, acc.counts.fp, acc.counts.fn);
  return acc;
}

EvalReport evaluate(const Grouping& pred, const Grouping& truth, double overlapFrac) {
  EvalReport r;
  const auto g = grouping_accuracy(pred, truth);
  const auto c = counting_accuracy(pred, truth, overlapFrac);
  r.gacc = g.value;
  r.cacc = c.value;
  r.nodeLevel = g.counts;
  r.clusterLevel = c.counts;
  r.matches = optimal_matches(pred, truth, overlapFrac);
  return r;
}

}  // namespace lcuts
