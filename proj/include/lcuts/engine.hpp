#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lcuts/direction.hpp"
#include "lcuts/geometry.hpp"
#include "lcuts/graph.hpp"

namespace lcuts {

struct StoppingLimits {
  double sizeLimit = 60.0;   // max extent along the fitted axis
  double eccLimit = 0.9;
  double stdLimit = 3.75;
  int minGroupSize = 2;
  bool checkIntensity = false;
  bool checkEccentricity = true;

  void validate() const;
};

enum class Decision { Accept, Recurse, Outlier };

const char* to_string(Decision d);

struct StopCheck {
  Decision decision = Decision::Accept;
  bool forced = false;  // accepted only because it cannot be split further
  std::optional<LineFit> fit;
};

/// Size and linearity test for one component. `thresh` enables the intensity
/// check when the cloud is bound to an image and limits.checkIntensity is set.
StopCheck check_stopping(const PointCloud& cloud, std::span<const int> group, const StoppingLimits& limits,
                         std::optional<double> thresh, double samplingStep = 0.5);

/// One component visited by the recursion. Children index into ClusterResult::tree.
struct TreeNode {
  std::vector<int> members;
  Decision decision = Decision::Accept;
  bool forced = false;
  std::vector<int> stripped;  // zero-degree members moved to outliers before splitting
  double ncut = 0.0;
  int left = -1;
  int right = -1;
};

struct ClusterResult {
  std::vector<std::vector<int>> groups;   // ascending ids, sorted by smallest member
  std::vector<int> outliers;              // ascending
  std::vector<std::optional<LineFit>> perGroup;  // empty for single-node groups
  std::vector<TreeNode> tree;             // tree[0] is the root
  std::vector<int> forcedGroups;          // indices into groups accepted with a warning
  std::vector<std::optional<Vec>> directions;  // per node, as used for the adjacency
};

/// Recursive normalized-cut clustering into near-linear groups. Directions and
/// the adjacency are computed once on the whole cloud; each component is tested
/// with check_stopping and bipartitioned on its restricted sub-matrix until
/// every part is accepted or declared an outlier.
ClusterResult lcuts(const PointCloud& cloud, const GraphParams& gparams, const VotingParams& vparams,
                    const StoppingLimits& limits);

/// Same, reusing an already built adjacency over a cloud whose directions are set.
ClusterResult lcuts_with_graph(const PointCloud& directed, const WeightedGraph& graph, const GraphParams& gparams,
                               const StoppingLimits& limits);

}  // namespace lcuts
