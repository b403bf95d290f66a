#include "lcuts/direction.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lcuts/error.hpp"

namespace lcuts {

void VotingParams::validate() const {
  if (hops < 1) throw InputError("hops must be >= 1");
  if (!(hopRadius > 0.0)) throw InputError("hop radius must be > 0");
  if (nRelBins < 1) throw InputError("relative-angle bin count must be >= 1");
}

RadiusGraph radius_graph(const PointCloud& cloud, double radius) {
  const std::size_t n = cloud.size();
  RadiusGraph adj(n);
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if ((cloud.nodes[i].loc - cloud.nodes[j].loc).squaredNorm() <= r2) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }
    }
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

Neighborhood hop_neighborhood(const RadiusGraph& adjacency, int center, int hops) {
  if (center < 0 || static_cast<std::size_t>(center) >= adjacency.size()) {
    throw InputError("hop_neighborhood: center id out of range");
  }
  std::vector<char> seen(adjacency.size(), 0);
  seen[static_cast<std::size_t>(center)] = 1;
  std::vector<int> frontier{center};
  Neighborhood nb;
  nb.center = center;
  for (int level = 0; level < hops && !frontier.empty(); ++level) {
    std::vector<int> next;
    for (int u : frontier) {
      for (int v : adjacency[static_cast<std::size_t>(u)]) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          next.push_back(v);
        }
      }
    }
    nb.members.insert(nb.members.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(nb.members.begin(), nb.members.end());
  return nb;
}

Neighborhood hop_neighborhood(const PointCloud& cloud, int center, const VotingParams& params) {
  params.validate();
  return hop_neighborhood(radius_graph(cloud, params.hopRadius), center, params.hops);
}

std::optional<Vec> estimate_direction(const PointCloud& cloud, int center, const Neighborhood& nbhd,
                                      const VotingParams& params) {
  if (nbhd.center != center) throw InputError("estimate_direction: neighborhood belongs to another node");
  if (nbhd.members.empty()) return std::nullopt;

  const Vec& origin = cloud.nodes.at(static_cast<std::size_t>(center)).loc;
  std::vector<Vec> candidates;
  candidates.reserve(nbhd.members.size());
  for (int m : nbhd.members) {
    candidates.push_back((cloud.nodes.at(static_cast<std::size_t>(m)).loc - origin).normalized());
  }

  // First-bin row of the accumulator: per candidate, how many other candidates
  // lie within one relative-angle bin of it (axis semantics via |cos|).
  const double bin_width = (std::numbers::pi / 2.0) / params.nRelBins;
  const std::size_t k = candidates.size();
  std::vector<int> first_bin(k, 0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const double c = std::min(1.0, std::abs(candidates[a].dot(candidates[b])));
      if (std::acos(c) < bin_width) {
        ++first_bin[a];
        ++first_bin[b];
      }
    }
  }
  const int best = *std::max_element(first_bin.begin(), first_bin.end());

  std::vector<Vec> kept;
  for (std::size_t a = 0; a < k; ++a) {
    if (first_bin[a] == best) kept.push_back(candidates[a]);
  }

  // Sign reference: principal axis of the kept candidates, so the result does
  // not depend on node ids or on which candidate happens to come first.
  const auto dim = origin.size();
  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& p : kept) scatter += p * p.transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scatter);
  const Vec ref = es.eigenvectors().col(dim - 1);

  for (auto& p : kept) {
    if (p.dot(ref) < 0.0) p = -p;
  }
  // Fixed summation order keeps the result bit-identical under relabeling.
  std::sort(kept.begin(), kept.end(), [](const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  Vec sum = Vec::Zero(dim);
  for (const auto& p : kept) sum += p;
  return Vec(sum.normalized());
}

DirectionAssignment assign_all_directions(const PointCloud& cloud, const VotingParams& params) {
  params.validate();
  DirectionAssignment out;
  out.cloud = cloud;
  const RadiusGraph adj = radius_graph(cloud, params.hopRadius);
  for (auto& node : out.cloud.nodes) {
    const Neighborhood nb = hop_neighborhood(adj, node.id, params.hops);
    node.dir = estimate_direction(cloud, node.id, nb, params);
    if (!node.dir) out.undirected.push_back(node.id);
  }
  return out;
}

}  // namespace lcuts
