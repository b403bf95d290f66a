#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcuts/geometry.hpp"

namespace lcuts {

struct RenderInput {
  int dim = 2;
  std::vector<Vec> locs;
  std::vector<int> group;                  // per node; -1 draws as an outlier
  std::vector<std::optional<LineFit>> fits;  // per group, drawn as axis segments
};

/// Static SVG: one panel for 2D, three (oblique 3D view, xy-plane, yz-plane) for 3D.
/// Each group gets its own CSS class g<k> with a distinct fill.
std::string render_svg(const RenderInput& input);

/// Deterministic, well-spread color for group k ("#rrggbb").
std::string group_color(int k);

}  // namespace lcuts
