#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "lcuts/graph.hpp"

namespace lcuts {

/// Two-way split of the node indices 0..n-1 of a graph. `groupA` always holds
/// index 0; both lists are ascending.
struct Bipartition {
  std::vector<int> groupA;
  std::vector<int> groupB;
  double ncut = 0.0;
};

/// cut(A,B)/assoc(A,V) + cut(A,B)/assoc(B,V).
double ncut_value(const WeightedGraph& g, std::span<const int> groupA, std::span<const int> groupB);

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
};

/// The k algebraically smallest eigenpairs of a symmetric matrix, ascending.
std::vector<EigenPair> smallest_eigenpairs(const Eigen::MatrixXd& m, int k);

/// D^{-1/2} (D - W) D^{-1/2}. Requires every degree to be positive.
Eigen::MatrixXd normalized_laplacian(const WeightedGraph& g);

/// Connected components over edges with positive weight, each ascending,
/// ordered by their smallest member.
std::vector<std::vector<int>> connected_components(const WeightedGraph& g);

/// Normalized-cut bipartition. Disconnected graphs split off their smallest
/// component. Connected graphs threshold the second generalized eigenvector
/// at every gap between sorted entries and keep the split with the lowest Ncut.
Bipartition ncut_bipartition(const WeightedGraph& g);

}  // namespace lcuts
