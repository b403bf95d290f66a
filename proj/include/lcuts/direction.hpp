#pragma once

#include <optional>
#include <vector>

#include "lcuts/geometry.hpp"

namespace lcuts {

/// Majority-voting parameters. The relative-angle accumulator splits [0, 90] degrees
/// into `nRelBins` equal bins; only the first (most aligned) bin is counted.
struct VotingParams {
  int hops = 4;
  double hopRadius = 5.0;
  int nRelBins = 4;

  void validate() const;
};

struct Neighborhood {
  int center = 0;
  std::vector<int> members;  // ascending ids, center excluded
};

/// Adjacency lists of the "within hopRadius" relation, computed once per cloud.
using RadiusGraph = std::vector<std::vector<int>>;

RadiusGraph radius_graph(const PointCloud& cloud, double radius);

/// Breadth-first expansion over the radius relation, `params.hops` levels deep.
Neighborhood hop_neighborhood(const PointCloud& cloud, int center, const VotingParams& params);
Neighborhood hop_neighborhood(const RadiusGraph& adjacency, int center, int hops);

/// Principal axis at `center` voted from center-to-member orientations.
/// Empty neighborhood gives nullopt.
std::optional<Vec> estimate_direction(const PointCloud& cloud, int center, const Neighborhood& nbhd,
                                      const VotingParams& params);

struct DirectionAssignment {
  PointCloud cloud;
  std::vector<int> undirected;  // nodes left without a direction (empty neighborhood)
};

/// Recomputes every node's direction; any existing dirs are discarded.
DirectionAssignment assign_all_directions(const PointCloud& cloud, const VotingParams& params);

}  // namespace lcuts
