#pragma once

#include <span>

#include <Eigen/Core>

#include "lcuts/geometry.hpp"

namespace lcuts {

struct GraphParams {
  double r = 60.0;        // distance cutoff
  double sigmaD = 10.0;
  double sigmaT = 0.134;  // 1 - cos(30 deg): weight e^-1 at 30 degrees of misalignment
  double intensitySamplingStep = 0.5;

  void validate() const;
};

/// Symmetric edge weights in [0,1] with a zero diagonal.
struct WeightedGraph {
  Eigen::MatrixXd weights;

  int size() const { return static_cast<int>(weights.rows()); }
  double operator()(int i, int j) const { return weights(i, j); }
  Eigen::VectorXd degrees() const { return weights.rowwise().sum(); }
};

double weight_distance(double distance, const GraphParams& params);

/// exp(-(|cos| - 1)^2 / sigmaT^2) for two unit axes.
double weight_direction(const Vec& dirI, const Vec& dirJ, const GraphParams& params);

/// Midrange minus population variance of the node intensities.
double intensity_threshold(const PointCloud& cloud);

/// Minimum intensity along i->j if it is at or below `thresh`, otherwise 1.
/// Returns 1 when the cloud is not bound to an image. The segment is always
/// sampled from the smaller id to the larger one.
double weight_intensity(const PointCloud& cloud, int i, int j, double thresh, const GraphParams& params);

/// Product of the distance, direction and intensity terms. Missing directions
/// contribute 1; the intensity term is active only when an image is bound and
/// every node has an intensity.
WeightedGraph build_adjacency(const PointCloud& cloud, const GraphParams& params);

/// Sub-matrix over `ids`, in the given order.
WeightedGraph restrict_graph(const WeightedGraph& g, std::span<const int> ids);

}  // namespace lcuts
