#include "lcuts/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <Eigen/Eigenvalues>

#include "lcuts/error.hpp"

namespace lcuts {

namespace {

bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

// Scatter statistics are accumulated over a lexicographically sorted copy so the
// result does not depend on input order, bit for bit.
struct Scatter {
  Vec centroid;
  Eigen::MatrixXd moments;
  std::vector<Vec> sorted;
};

Scatter scatter_of(std::span<const Vec> points) {
  if (points.size() < 2) throw InputError("line fit needs at least 2 points");
  const Eigen::Index d = points.front().size();
  for (const auto& p : points) {
    if (p.size() != d) throw InputError("line fit: mixed point dimensions");
  }
  Scatter s;
  s.sorted.assign(points.begin(), points.end());
  std::sort(s.sorted.begin(), s.sorted.end(), lex_less);
  if (s.sorted.front() == s.sorted.back()) throw InputError("line fit: all points coincide, axis undefined");

  s.centroid = Vec::Zero(d);
  for (const auto& p : s.sorted) s.centroid += p;
  s.centroid /= static_cast<double>(s.sorted.size());
  s.moments = Eigen::MatrixXd::Zero(d, d);
  for (const auto& p : s.sorted) {
    const Vec r = p - s.centroid;
    s.moments.noalias() += r * r.transpose();
  }
  s.moments /= static_cast<double>(s.sorted.size());
  return s;
}

Vec canonical_sign(Vec v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (v[k] < 0) v = -v;
  return v;
}

double eccentricity_from(const Eigen::VectorXd& ascending) {
  const Eigen::Index d = ascending.size();
  const double l1 = ascending[d - 1];
  const double l2 = std::max(0.0, ascending[d - 2]);
  if (!(l1 > 0.0)) throw InputError("eccentricity: degenerate point set");
  return std::sqrt(std::clamp(1.0 - l2 / l1, 0.0, 1.0));
}

}  // namespace

Node& PointCloud::add(Vec loc, std::optional<double> intensity) {
  Node n;
  n.id = static_cast<int>(nodes.size());
  n.loc = std::move(loc);
  n.intensity = intensity;
  nodes.push_back(std::move(n));
  return nodes.back();
}

bool PointCloud::has_intensities() const {
  return std::all_of(nodes.begin(), nodes.end(), [](const Node& n) { return n.intensity.has_value(); });
}

void PointCloud::validate() const {
  if (dim != 2 && dim != 3) throw InputError("point cloud dimension must be 2 or 3, got " + std::to_string(dim));
  if (image && dim != 2) throw InputError("only 2D clouds can be bound to an image");
  std::vector<Vec> locs;
  locs.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.id != static_cast<int>(i)) throw InputError("node ids must be 0..N-1 in order");
    if (n.loc.size() != dim) throw InputError("node " + std::to_string(i) + " has wrong dimension");
    if (!n.loc.allFinite()) throw InputError("node " + std::to_string(i) + " has a non-finite location");
    if (n.intensity && !(*n.intensity >= 0.0 && *n.intensity <= 1.0)) {
      throw InputError("node " + std::to_string(i) + " intensity outside [0,1]");
    }
    if (n.dir && (n.dir->size() != dim || std::abs(n.dir->norm() - 1.0) > 1e-9)) {
      throw InputError("node " + std::to_string(i) + " direction is not a unit vector");
    }
    locs.push_back(n.loc);
  }
  std::sort(locs.begin(), locs.end(), lex_less);
  if (std::adjacent_find(locs.begin(), locs.end()) != locs.end()) {
    throw InputError("point cloud contains duplicate node locations");
  }
}

LineFit fit_line(std::span<const Vec> points) {
  const Scatter s = scatter_of(points);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.moments);
  const Eigen::Index d = s.moments.rows();

  LineFit fit;
  fit.centroid = s.centroid;
  fit.axis = canonical_sign(es.eigenvectors().col(d - 1).normalized());
  fit.eccentricity = eccentricity_from(es.eigenvalues());

  double lo = 0.0, hi = 0.0, sq = 0.0;
  bool first = true;
  for (const auto& p : s.sorted) {
    const Vec r = p - s.centroid;
    const double t = r.dot(fit.axis);
    sq += (r - t * fit.axis).squaredNorm();
    if (first || t < lo) lo = t;
    if (first || t > hi) hi = t;
    first = false;
  }
  fit.std = std::sqrt(sq / static_cast<double>(s.sorted.size()));
  fit.extent = hi - lo;
  return fit;
}

double eccentricity(std::span<const Vec> points) {
  const Scatter s = scatter_of(points);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.moments, Eigen::EigenvaluesOnly);
  return eccentricity_from(es.eigenvalues());
}

double pairwise_distance(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw InputError("pairwise_distance: dimension mismatch");
  return (a - b).norm();
}

std::vector<Vec> locations(const PointCloud& cloud, std::span<const int> ids) {
  std::vector<Vec> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(cloud.nodes.at(static_cast<std::size_t>(id)).loc);
  return out;
}

}  // namespace lcuts
