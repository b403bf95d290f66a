#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace lcuts {

using Vec = Eigen::VectorXd;

class RasterImage;

/// A detected ridgeline point. `dir` is an axis: v and -v describe the same direction.
struct Node {
  int id = 0;
  Vec loc;
  std::optional<double> intensity;
  std::optional<Vec> dir;
};

/// Dimension-tagged node collection. Ids are 0..size()-1 in order.
/// A 2D cloud may be bound to the raster it was extracted from.
struct PointCloud {
  int dim = 2;
  std::vector<Node> nodes;
  std::shared_ptr<const RasterImage> image;

  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }

  /// Appends a node with the next id.
  Node& add(Vec loc, std::optional<double> intensity = std::nullopt);

  /// True when every node carries an intensity value.
  bool has_intensities() const;

  /// Throws InputError when the cloud violates its invariants (dimension,
  /// id order, unit directions, intensity range, duplicate locations).
  void validate() const;
};

struct LineFit {
  Vec centroid;
  Vec axis;               // unit, sign fixed so the largest-magnitude component is positive
  double std = 0.0;       // RMS orthogonal distance to the line
  double eccentricity = 0.0;
  double extent = 0.0;    // max - min projection onto axis
};

/// Total least squares line through the points (principal axis of the scatter matrix).
/// Throws InputError for fewer than two points or when all points coincide.
LineFit fit_line(std::span<const Vec> points);

/// sqrt(1 - l2/l1) for the two largest scatter-matrix eigenvalues l1 >= l2.
double eccentricity(std::span<const Vec> points);

double pairwise_distance(const Vec& a, const Vec& b);

/// Gathers node locations for the given ids.
std::vector<Vec> locations(const PointCloud& cloud, std::span<const int> ids);

}  // namespace lcuts
