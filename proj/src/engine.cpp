#include "lcuts/engine.hpp"

#include <algorithm>

#include "lcuts/error.hpp"
#include "lcuts/image.hpp"
#include "lcuts/spectral.hpp"

namespace lcuts {

void StoppingLimits::validate() const {
  if (!(sizeLimit > 0.0)) throw InputError("size limit must be > 0");
  if (!(eccLimit >= 0.0 && eccLimit <= 1.0)) throw InputError("eccentricity limit must be in [0,1]");
  if (!(stdLimit > 0.0)) throw InputError("std limit must be > 0");
  if (minGroupSize < 1) throw InputError("minimum group size must be >= 1");
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::Accept: return "accept";
    case Decision::Recurse: return "recurse";
    case Decision::Outlier: return "outlier";
  }
  return "?";
}

namespace {

bool intensity_continuous(const PointCloud& cloud, std::span<const int> group, const LineFit& fit, double thresh,
                          double step) {
  std::vector<std::pair<double, int>> along;
  along.reserve(group.size());
  for (int id : group) {
    along.emplace_back((cloud.nodes[static_cast<std::size_t>(id)].loc - fit.centroid).dot(fit.axis), id);
  }
  std::sort(along.begin(), along.end());
  for (std::size_t k = 0; k + 1 < along.size(); ++k) {
    const int a = std::min(along[k].second, along[k + 1].second);
    const int b = std::max(along[k].second, along[k + 1].second);
    const double m = cloud.image->min_along(cloud.nodes[static_cast<std::size_t>(a)].loc,
                                            cloud.nodes[static_cast<std::size_t>(b)].loc, step);
    if (!(m > thresh)) return false;
  }
  return true;
}

TreeNode tree_node(std::vector<int> members) {
  TreeNode t;
  t.members = std::move(members);
  return t;
}

}  // namespace

StopCheck check_stopping(const PointCloud& cloud, std::span<const int> group, const StoppingLimits& limits,
                         std::optional<double> thresh, double samplingStep) {
  if (group.empty()) throw InputError("check_stopping: empty group");
  StopCheck out;
  if (static_cast<int>(group.size()) < limits.minGroupSize) {
    out.decision = Decision::Outlier;
    return out;
  }
  if (group.size() == 1) {
    out.decision = Decision::Accept;
    return out;
  }
  const auto pts = locations(cloud, group);
  out.fit = fit_line(pts);
  const LineFit& fit = *out.fit;
  if (fit.extent > limits.sizeLimit) {
    out.decision = Decision::Recurse;
    return out;
  }
  bool linear = fit.std <= limits.stdLimit;
  if (linear && limits.checkEccentricity && group.size() > 3) linear = fit.eccentricity >= limits.eccLimit;
  if (linear && limits.checkIntensity && thresh && cloud.image) {
    linear = intensity_continuous(cloud, group, fit, *thresh, samplingStep);
  }
  if (linear) {
    out.decision = Decision::Accept;
  } else if (group.size() <= 2) {
    out.decision = Decision::Accept;
    out.forced = true;
  } else {
    out.decision = Decision::Recurse;
  }
  return out;
}

ClusterResult lcuts(const PointCloud& cloud, const GraphParams& gparams, const VotingParams& vparams,
                    const StoppingLimits& limits) {
  cloud.validate();
  gparams.validate();
  vparams.validate();
  limits.validate();
  const DirectionAssignment directed = assign_all_directions(cloud, vparams);
  const WeightedGraph graph = build_adjacency(directed.cloud, gparams);
  return lcuts_with_graph(directed.cloud, graph, gparams, limits);
}

ClusterResult lcuts_with_graph(const PointCloud& directed, const WeightedGraph& graph, const GraphParams& gparams,
                               const StoppingLimits& limits) {
  limits.validate();
  if (graph.size() != static_cast<int>(directed.size())) throw InputError("adjacency size does not match cloud");
  ClusterResult result;
  for (const auto& n : directed.nodes) result.directions.push_back(n.dir);
  if (directed.empty()) return result;

  std::optional<double> thresh;
  if (directed.image && directed.has_intensities() && limits.checkIntensity) thresh = intensity_threshold(directed);

  std::vector<std::pair<std::vector<int>, std::optional<LineFit>>> accepted;
  std::vector<int> forced_members;  // smallest member of each forced group

  std::vector<int> all(directed.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  result.tree.push_back(tree_node(std::move(all)));

  // Depth-first over tree nodes; each component is visited exactly once.
  std::vector<int> pending{0};
  while (!pending.empty()) {
    const int idx = pending.back();
    pending.pop_back();
    std::vector<int> members = result.tree[static_cast<std::size_t>(idx)].members;

    StopCheck check = check_stopping(directed, members, limits, thresh, gparams.intensitySamplingStep);
    result.tree[static_cast<std::size_t>(idx)].decision = check.decision;
    result.tree[static_cast<std::size_t>(idx)].forced = check.forced;
    if (check.decision == Decision::Outlier) {
      result.outliers.insert(result.outliers.end(), members.begin(), members.end());
      continue;
    }
    if (check.decision == Decision::Accept) {
      if (check.forced) forced_members.push_back(members.front());
      accepted.emplace_back(members, check.fit);
      continue;
    }

    WeightedGraph sub = restrict_graph(graph, members);
    const Eigen::VectorXd deg = sub.degrees();
    std::vector<int> kept, stripped;
    for (std::size_t k = 0; k < members.size(); ++k) {
      (deg[static_cast<Eigen::Index>(k)] > 0.0 ? kept : stripped).push_back(members[k]);
    }
    if (!stripped.empty()) {
      result.tree[static_cast<std::size_t>(idx)].stripped = stripped;
      result.outliers.insert(result.outliers.end(), stripped.begin(), stripped.end());
      if (kept.empty()) continue;
      sub = restrict_graph(graph, kept);
      members = kept;
      if (members.size() < 2) {
        // Only one connected node left; re-examine it as its own component.
        const int child = static_cast<int>(result.tree.size());
        result.tree.push_back(tree_node(members));
        result.tree[static_cast<std::size_t>(idx)].left = child;
        pending.push_back(child);
        continue;
      }
    }

    const Bipartition bp = ncut_bipartition(sub);
    std::vector<int> a, b;
    for (int k : bp.groupA) a.push_back(members[static_cast<std::size_t>(k)]);
    for (int k : bp.groupB) b.push_back(members[static_cast<std::size_t>(k)]);
    const int left = static_cast<int>(result.tree.size());
    result.tree.push_back(tree_node(std::move(a)));
    result.tree.push_back(tree_node(std::move(b)));
    result.tree[static_cast<std::size_t>(idx)].ncut = bp.ncut;
    result.tree[static_cast<std::size_t>(idx)].left = left;
    result.tree[static_cast<std::size_t>(idx)].right = left + 1;
    pending.push_back(left + 1);
    pending.push_back(left);
  }

  std::sort(accepted.begin(), accepted.end(),
            [](const auto& x, const auto& y) { return x.first.front() < y.first.front(); });
  for (auto& [members, fit] : accepted) {
    if (std::find(forced_members.begin(), forced_members.end(), members.front()) != forced_members.end()) {
      result.forcedGroups.push_back(static_cast<int>(result.groups.size()));
    }
    result.groups.push_back(std::move(members));
    result.perGroup.push_back(std::move(fit));
  }
  std::sort(result.outliers.begin(), result.outliers.end());
  return result;
}

}  // namespace lcuts
