#include "lcuts/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

namespace lcuts {

std::string group_color(int k) {
  // Golden-angle hue walk, alternating lightness so neighbors stay apart.
  const double h = std::fmod(k * 137.50776405, 360.0) / 60.0;
  const double l = (k % 2 == 0) ? 0.45 : 0.6;
  const double s = 0.7;
  const double c = (1.0 - std::abs(2.0 * l - 1.0)) * s;
  const double x = c * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
  std::array<double, 3> rgb{};
  switch (static_cast<int>(h)) {
    case 0: rgb = {c, x, 0}; break;
    case 1: rgb = {x, c, 0}; break;
    case 2: rgb = {0, c, x}; break;
    case 3: rgb = {0, x, c}; break;
    case 4: rgb = {x, 0, c}; break;
    default: rgb = {c, 0, x}; break;
  }
  const double m = l - c / 2.0;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround((rgb[0] + m) * 255)),
                static_cast<int>(std::lround((rgb[1] + m) * 255)), static_cast<int>(std::lround((rgb[2] + m) * 255)));
  return buf;
}

namespace {

constexpr double kPanel = 400.0;
constexpr double kPad = 20.0;

using Projection = std::function<std::array<double, 2>(const Vec&)>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void draw_panel(std::ostringstream& svg, const RenderInput& in, const Projection& proj, double x_offset,
                const std::string& title) {
  double minx = 0, maxx = 1, miny = 0, maxy = 1;
  bool first = true;
  for (const auto& p : in.locs) {
    const auto q = proj(p);
    if (first) { minx = maxx = q[0]; miny = maxy = q[1]; first = false; }
    minx = std::min(minx, q[0]); maxx = std::max(maxx, q[0]);
    miny = std::min(miny, q[1]); maxy = std::max(maxy, q[1]);
  }
  const double span = std::max({maxx - minx, maxy - miny, 1e-9});
  const double scale = (kPanel - 2 * kPad) / span;
  auto to_screen = [&](const std::array<double, 2>& q) {
    return std::array<double, 2>{x_offset + kPad + (q[0] - minx) * scale, kPad + (q[1] - miny) * scale};
  };

  svg << "<g class=\"panel\">\n";
  svg << "<rect x=\"" << fmt(x_offset) << "\" y=\"0\" width=\"" << fmt(kPanel) << "\" height=\"" << fmt(kPanel)
      << "\" fill=\"none\" stroke=\"#999\"/>\n";
  svg << "<text x=\"" << fmt(x_offset + 6) << "\" y=\"14\" font-size=\"12\">" << title << "</text>\n";
  for (std::size_t g = 0; g < in.fits.size(); ++g) {
    if (!in.fits[g]) continue;
    const LineFit& f = *in.fits[g];
    const auto a = to_screen(proj(f.centroid - 0.5 * f.extent * f.axis));
    const auto b = to_screen(proj(f.centroid + 0.5 * f.extent * f.axis));
    svg << "<line class=\"g" << g << "\" x1=\"" << fmt(a[0]) << "\" y1=\"" << fmt(a[1]) << "\" x2=\"" << fmt(b[0])
        << "\" y2=\"" << fmt(b[1]) << "\"/>\n";
  }
  for (std::size_t i = 0; i < in.locs.size(); ++i) {
    const auto s = to_screen(proj(in.locs[i]));
    const int g = i < in.group.size() ? in.group[i] : -1;
    svg << "<circle class=\"" << (g >= 0 ? "g" + std::to_string(g) : std::string("outlier")) << "\" cx=\""
        << fmt(s[0]) << "\" cy=\"" << fmt(s[1]) << "\" r=\"2.5\"/>\n";
  }
  svg << "</g>\n";
}

}  // namespace

std::string render_svg(const RenderInput& in) {
  int groups = 0;
  for (int g : in.group) groups = std::max(groups, g + 1);
  groups = std::max(groups, static_cast<int>(in.fits.size()));

  std::vector<std::pair<Projection, std::string>> panels;
  if (in.dim == 3) {
    // Oblique view: azimuth 35 deg, elevation 25 deg.
    const double az = 35.0 * std::numbers::pi / 180.0, el = 25.0 * std::numbers::pi / 180.0;
    panels.emplace_back(
        [=](const Vec& p) {
          const double x = std::cos(az) * p[0] - std::sin(az) * p[1];
          const double y = std::sin(az) * p[0] + std::cos(az) * p[1];
          return std::array<double, 2>{x, -(std::cos(el) * p[2] - std::sin(el) * y)};
        },
        "3D view");
    panels.emplace_back([](const Vec& p) { return std::array<double, 2>{p[0], p[1]}; }, "xy-plane");
    panels.emplace_back([](const Vec& p) { return std::array<double, 2>{p[1], p[2]}; }, "yz-plane");
  } else {
    panels.emplace_back([](const Vec& p) { return std::array<double, 2>{p[0], p[1]}; }, "xy-plane");
  }

  std::ostringstream svg;
  const double width = kPanel * static_cast<double>(panels.size());
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(kPanel)
      << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(kPanel) << "\">\n";
  svg << "<style>\n";
  for (int g = 0; g < groups; ++g) {
    const std::string c = group_color(g);
    svg << ".g" << g << "{fill:" << c << ";stroke:" << c << ";stroke-width:1}\n";
  }
  svg << ".outlier{fill:#808080;stroke:none}\n</style>\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    draw_panel(svg, in, panels[k].first, kPanel * static_cast<double>(k), panels[k].second);
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace lcuts
