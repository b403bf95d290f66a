#include "lcuts/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "lcuts/error.hpp"

namespace lcuts {

namespace {

// Relative slack under which two candidate Ncut values count as tied.
constexpr double kTieTolerance = 1e-12;

Bipartition make_bipartition(int n, const std::vector<char>& in_first) {
  Bipartition bp;
  const char side_of_zero = in_first[0];
  for (int i = 0; i < n; ++i) {
    (in_first[static_cast<std::size_t>(i)] == side_of_zero ? bp.groupA : bp.groupB).push_back(i);
  }
  return bp;
}

// Strict weak preference among candidates with (nearly) equal Ncut:
// more balanced first, then the lexicographically smaller groupA.
bool better_tiebreak(const Bipartition& a, const Bipartition& b) {
  const auto bal = [](const Bipartition& p) { return std::min(p.groupA.size(), p.groupB.size()); };
  if (bal(a) != bal(b)) return bal(a) > bal(b);
  return a.groupA < b.groupA;
}

}  // namespace

double ncut_value(const WeightedGraph& g, std::span<const int> groupA, std::span<const int> groupB) {
  const int n = g.size();
  if (groupA.empty() || groupB.empty()) throw InputError("ncut_value: both groups must be non-empty");
  if (groupA.size() + groupB.size() != static_cast<std::size_t>(n)) {
    throw InputError("ncut_value: groups must cover every node");
  }
  std::vector<char> side(static_cast<std::size_t>(n), -1);
  for (int i : groupA) {
    if (i < 0 || i >= n || side[static_cast<std::size_t>(i)] != -1) throw InputError("ncut_value: invalid group A");
    side[static_cast<std::size_t>(i)] = 0;
  }
  for (int i : groupB) {
    if (i < 0 || i >= n || side[static_cast<std::size_t>(i)] != -1) throw InputError("ncut_value: invalid group B");
    side[static_cast<std::size_t>(i)] = 1;
  }
  double cut = 0.0, assoc_a = 0.0, assoc_b = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0, across = 0.0;
    for (int j = 0; j < n; ++j) {
      row += g.weights(i, j);
      if (side[static_cast<std::size_t>(j)] != side[static_cast<std::size_t>(i)]) across += g.weights(i, j);
    }
    if (side[static_cast<std::size_t>(i)] == 0) {
      assoc_a += row;
      cut += across;
    } else {
      assoc_b += row;
    }
  }
  if (!(assoc_a > 0.0) || !(assoc_b > 0.0)) throw ComputationError("ncut_value: a group has zero association");
  return cut / assoc_a + cut / assoc_b;
}

std::vector<EigenPair> smallest_eigenpairs(const Eigen::MatrixXd& m, int k) {
  if (m.rows() != m.cols()) throw InputError("smallest_eigenpairs: matrix must be square");
  const auto n = static_cast<int>(m.rows());
  if (k < 1 || k > n) throw InputError("smallest_eigenpairs: k must be in [1, n]");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw InputError("smallest_eigenpairs: matrix is not symmetric");
  }
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) throw ComputationError("smallest_eigenpairs: eigensolver did not converge");

  std::vector<EigenPair> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd v = es.eigenvectors().col(i);
    Eigen::Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    if (v[peak] < 0) v = -v;
    out.push_back({es.eigenvalues()[i], std::move(v)});
  }
  return out;
}

Eigen::MatrixXd normalized_laplacian(const WeightedGraph& g) {
  const Eigen::VectorXd d = g.degrees();
  if (d.size() > 0 && !(d.minCoeff() > 0.0)) throw InputError("normalized_laplacian: zero-degree node");
  const Eigen::VectorXd inv_sqrt = d.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd lap = -(inv_sqrt.asDiagonal() * g.weights * inv_sqrt.asDiagonal());
  lap.diagonal().array() += 1.0;
  return 0.5 * (lap + lap.transpose());
}

std::vector<std::vector<int>> connected_components(const WeightedGraph& g) {
  const int n = g.size();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> comps;
  for (int s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] != -1) continue;
    const int c = static_cast<int>(comps.size());
    comps.emplace_back();
    std::vector<int> stack{s};
    label[static_cast<std::size_t>(s)] = c;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      comps.back().push_back(u);
      for (int v = 0; v < n; ++v) {
        if (label[static_cast<std::size_t>(v)] == -1 && g.weights(u, v) > 0.0) {
          label[static_cast<std::size_t>(v)] = c;
          stack.push_back(v);
        }
      }
    }
    std::sort(comps.back().begin(), comps.back().end());
  }
  return comps;
}

Bipartition ncut_bipartition(const WeightedGraph& g) {
  const int n = g.size();
  if (n < 2) throw InputError("ncut_bipartition needs at least 2 nodes");
  const Eigen::VectorXd degree = g.degrees();
  if (!(degree.minCoeff() > 0.0)) throw InputError("ncut_bipartition: graph has a zero-degree node");

  const auto comps = connected_components(g);
  if (comps.size() >= 2) {
    const auto smallest = std::min_element(comps.begin(), comps.end(),
                                           [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<char> in_first(static_cast<std::size_t>(n), 0);
    for (int i : *smallest) in_first[static_cast<std::size_t>(i)] = 1;
    Bipartition bp = make_bipartition(n, in_first);
    bp.ncut = 0.0;
    return bp;
  }

  const auto pairs = smallest_eigenpairs(normalized_laplacian(g), 2);
  const Eigen::VectorXd x = pairs[1].vector.cwiseQuotient(degree.cwiseSqrt());

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x[a] < x[b]; });

  // Sweep the threshold upward, moving one node at a time from B to A. Cut and
  // associations are summed directly (no differences) so tiny cuts stay accurate.
  std::vector<char> in_a(static_cast<std::size_t>(n), 0);
  bool have_best = false;
  double best_value = 0.0;
  Bipartition best_bp;
  for (int step = 0; step + 1 < n; ++step) {
    const int u = order[static_cast<std::size_t>(step)];
    in_a[static_cast<std::size_t>(u)] = 1;
    // Ties in x: only thresholds that fall strictly between distinct values are valid splits.
    if (x[order[static_cast<std::size_t>(step + 1)]] == x[u]) continue;
    double cut = 0.0, assoc_a = 0.0, assoc_b = 0.0;
    for (int i = 0; i < n; ++i) {
      if (in_a[static_cast<std::size_t>(i)]) {
        assoc_a += degree[i];
        for (int j = 0; j < n; ++j)
          if (!in_a[static_cast<std::size_t>(j)]) cut += g.weights(i, j);
      } else {
        assoc_b += degree[i];
      }
    }
    if (!(assoc_a > 0.0) || !(assoc_b > 0.0)) continue;
    const double value = cut / assoc_a + cut / assoc_b;
    const double tol = kTieTolerance * std::max(1.0, std::abs(best_value));
    if (!have_best || value < best_value - tol) {
      have_best = true;
      best_value = value;
      best_bp = make_bipartition(n, in_a);
    } else if (std::abs(value - best_value) <= tol) {
      Bipartition cand = make_bipartition(n, in_a);
      if (better_tiebreak(cand, best_bp)) {
        best_value = std::min(best_value, value);
        best_bp = std::move(cand);
      }
    }
  }
  if (!have_best) throw ComputationError("ncut_bipartition: eigenvector gives no valid split");
  best_bp.ncut = ncut_value(g, best_bp.groupA, best_bp.groupB);
  return best_bp;
}

}  // namespace lcuts
