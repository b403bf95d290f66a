#include "lcuts/graph.hpp"

#include <algorithm>
#include <cmath>

#include "lcuts/error.hpp"
#include "lcuts/image.hpp"

namespace lcuts {

void GraphParams::validate() const {
  if (!(r > 0.0)) throw InputError("distance cutoff r must be > 0");
  if (!(sigmaD > 0.0)) throw InputError("sigma_d must be > 0");
  if (!(sigmaT > 0.0)) throw InputError("sigma_t must be > 0");
  if (!(intensitySamplingStep > 0.0)) throw InputError("intensity sampling step must be > 0");
}

double weight_distance(double distance, const GraphParams& params) {
  if (distance > params.r) return 0.0;
  return std::exp(-(distance * distance) / (params.sigmaD * params.sigmaD));
}

double weight_direction(const Vec& dirI, const Vec& dirJ, const GraphParams& params) {
  if (dirI.size() != dirJ.size()) throw InputError("weight_direction: dimension mismatch");
  if (std::abs(dirI.norm() - 1.0) > 1e-9 || std::abs(dirJ.norm() - 1.0) > 1e-9) {
    throw InputError("weight_direction: directions must be unit vectors");
  }
  const double c = std::min(1.0, std::abs(dirI.dot(dirJ)));
  return std::exp(-((c - 1.0) * (c - 1.0)) / (params.sigmaT * params.sigmaT));
}

double intensity_threshold(const PointCloud& cloud) {
  if (cloud.empty()) throw InputError("intensity_threshold: empty cloud");
  double lo = 0.0, hi = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto& v = cloud.nodes[i].intensity;
    if (!v) throw InputError("intensity_threshold: node " + std::to_string(i) + " has no intensity");
    lo = i == 0 ? *v : std::min(lo, *v);
    hi = i == 0 ? *v : std::max(hi, *v);
    mean += *v;
  }
  mean /= static_cast<double>(cloud.size());
  double var = 0.0;
  for (const auto& n : cloud.nodes) var += (*n.intensity - mean) * (*n.intensity - mean);
  var /= static_cast<double>(cloud.size());
  return 0.5 * (hi + lo) - var;
}

double weight_intensity(const PointCloud& cloud, int i, int j, double thresh, const GraphParams& params) {
  if (!cloud.image) return 1.0;
  if (cloud.dim != 2) throw InputError("intensity weighting needs a 2D cloud");
  const int a = std::min(i, j);
  const int b = std::max(i, j);
  const double m = cloud.image->min_along(cloud.nodes.at(static_cast<std::size_t>(a)).loc,
                                          cloud.nodes.at(static_cast<std::size_t>(b)).loc,
                                          params.intensitySamplingStep);
  return m <= thresh ? m : 1.0;
}

WeightedGraph build_adjacency(const PointCloud& cloud, const GraphParams& params) {
  params.validate();
  const int n = static_cast<int>(cloud.size());
  const bool use_intensity = cloud.image && cloud.has_intensities() && n > 0;
  const double thresh = use_intensity ? intensity_threshold(cloud) : 0.0;

  WeightedGraph g;
  g.weights = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Node& a = cloud.nodes[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) {
      const Node& b = cloud.nodes[static_cast<std::size_t>(j)];
      double w = weight_distance((a.loc - b.loc).norm(), params);
      if (w == 0.0) continue;
      if (a.dir && b.dir) w *= weight_direction(*a.dir, *b.dir, params);
      if (use_intensity) w *= weight_intensity(cloud, i, j, thresh, params);
      g.weights(i, j) = w;
      g.weights(j, i) = w;
    }
  }
  return g;
}

WeightedGraph restrict_graph(const WeightedGraph& g, std::span<const int> ids) {
  const auto m = static_cast<Eigen::Index>(ids.size());
  WeightedGraph sub;
  sub.weights.resize(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) sub.weights(a, b) = g.weights(ids[static_cast<std::size_t>(a)], ids[static_cast<std::size_t>(b)]);
  }
  return sub;
}

}  // namespace lcuts
