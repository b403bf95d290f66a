#include "lcuts/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "lcuts/error.hpp"

namespace lcuts {

void PipelineParams::validate() const {
  if (!(gaussianSigma > 0.0)) throw InputError("gaussian sigma must be > 0");
  if (!(backgroundRadius >= 1.0)) throw InputError("background radius must be >= 1");
  if (maximaWindow < 3 || maximaWindow % 2 == 0) throw InputError("maxima window must be odd and >= 3");
  if (!(minSeparation >= 0.0)) throw InputError("minimum separation must be >= 0");
  if (!(minNeighborDist >= 0.0)) throw InputError("minimum neighbor distance must be >= 0");
}

namespace {

// Half-sample symmetric reflection, repeated for offsets larger than the image.
int mirror(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  for (int i = -radius; i <= radius; ++i) k[static_cast<std::size_t>(i + radius)] = std::exp(-0.5 * i * i / (sigma * sigma));
  const double sum = std::accumulate(k.begin(), k.end(), 0.0);
  for (auto& v : k) v /= sum;
  return k;
}

std::vector<std::pair<int, int>> disk_offsets(double radius) {
  std::vector<std::pair<int, int>> off;
  const int r = static_cast<int>(std::floor(radius));
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (dx * dx + dy * dy <= radius * radius) off.emplace_back(dx, dy);
    }
  }
  return off;
}

// Rank filter over a disk, window clipped to the image.
template <typename Pick>
RasterImage disk_filter(const RasterImage& img, const std::vector<std::pair<int, int>>& rows_half_width, Pick pick) {
  RasterImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      double acc = img.at(x, y);
      for (const auto& [dy, hw] : rows_half_width) {
        const int yy = y + dy;
        if (yy < 0 || yy >= img.height()) continue;
        const int x0 = std::max(0, x - hw);
        const int x1 = std::min(img.width() - 1, x + hw);
        for (int xx = x0; xx <= x1; ++xx) acc = pick(acc, img.at(xx, yy));
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

}  // namespace

RasterImage gaussian_filter(const RasterImage& img, double sigma) {
  if (!(sigma > 0.0)) throw InputError("gaussian_filter: sigma must be > 0");
  if (img.empty()) return img;
  const auto k = gaussian_kernel(sigma);
  const int radius = static_cast<int>(k.size() / 2);
  const int w = img.width(), h = img.height();

  RasterImage tmp(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int i = -radius; i <= radius; ++i) s += k[static_cast<std::size_t>(i + radius)] * img.at(mirror(x + i, w), y);
      tmp.at(x, y) = s;
    }
  }
  RasterImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int i = -radius; i <= radius; ++i) s += k[static_cast<std::size_t>(i + radius)] * tmp.at(x, mirror(y + i, h));
      out.at(x, y) = std::clamp(s, 0.0, 1.0);
    }
  }
  return out;
}

RasterImage subtract_background(const RasterImage& img, double radius) {
  if (!(radius >= 1.0)) throw InputError("subtract_background: radius must be >= 1");
  if (img.empty()) return img;
  // The disk as (row offset, half width) pairs.
  std::vector<std::pair<int, int>> rows;
  for (const auto& [dx, dy] : disk_offsets(radius)) {
    auto it = std::find_if(rows.begin(), rows.end(), [dy = dy](const auto& r) { return r.first == dy; });
    if (it == rows.end()) rows.emplace_back(dy, std::abs(dx));
    else it->second = std::max(it->second, std::abs(dx));
  }
  const RasterImage eroded = disk_filter(img, rows, [](double a, double b) { return std::min(a, b); });
  const RasterImage opened = disk_filter(eroded, rows, [](double a, double b) { return std::max(a, b); });
  RasterImage out(img.width(), img.height());
  for (std::size_t i = 0; i < out.pixels().size(); ++i) {
    out.pixels()[i] = std::clamp(img.pixels()[i] - opened.pixels()[i], 0.0, 1.0);
  }
  return out;
}

std::vector<Vec> find_local_maxima(const RasterImage& img, int window, double floor) {
  if (window < 1 || window % 2 == 0) throw InputError("find_local_maxima: window must be odd");
  const int half = window / 2;
  std::vector<Vec> out;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double v = img.at(x, y);
      if (!(v > floor)) continue;
      bool is_max = true;
      bool flat = true;  // a window without any darker pixel is background, not a peak
      for (int dy = -half; dy <= half && is_max; ++dy) {
        const int yy = y + dy;
        if (yy < 0 || yy >= img.height()) continue;
        for (int dx = -half; dx <= half; ++dx) {
          const int xx = x + dx;
          if (xx < 0 || xx >= img.width() || (dx == 0 && dy == 0)) continue;
          const double u = img.at(xx, yy);
          if (u < v) flat = false;
          // A neighbor earlier in row-major order with the same value owns the plateau.
          const bool earlier = dy < 0 || (dy == 0 && dx < 0);
          if (u > v || (u == v && earlier)) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max && !flat) out.push_back(Vec{{static_cast<double>(x), static_cast<double>(y)}});
    }
  }
  return out;
}

PointCloud prune_nodes(const std::vector<Vec>& points, const RasterImage& img, const PipelineParams& params) {
  std::vector<double> bright;
  bright.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != 2) throw InputError("prune_nodes: points must be 2D");
    bright.push_back(img.sample(p[0], p[1]));
  }

  // Brightest first; ties by input order.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bright[a] > bright[b]; });
  std::vector<char> keep(points.size(), 0);
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    const bool crowded = std::any_of(kept.begin(), kept.end(), [&](std::size_t j) {
      return (points[i] - points[j]).norm() < params.minSeparation;
    });
    if (!crowded) {
      keep[i] = 1;
      kept.push_back(i);
    }
  }

  PointCloud cloud;
  cloud.dim = 2;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!keep[i]) continue;
    const bool has_neighbor = std::any_of(kept.begin(), kept.end(), [&](std::size_t j) {
      return j != i && (points[i] - points[j]).norm() <= params.minNeighborDist;
    });
    if (has_neighbor) cloud.add(points[i], std::clamp(bright[i], 0.0, 1.0));
  }
  cloud.image = std::make_shared<const RasterImage>(img);
  return cloud;
}

PointCloud extract_nodes(const RasterImage& img, const PipelineParams& params) {
  params.validate();
  const RasterImage smooth = gaussian_filter(img, params.gaussianSigma);
  const RasterImage enhanced = subtract_background(smooth, params.backgroundRadius);
  const auto maxima = find_local_maxima(enhanced, params.maximaWindow, params.detectionFloor);
  return prune_nodes(maxima, enhanced, params);
}

void bind_image(PointCloud& cloud, std::shared_ptr<const RasterImage> img) {
  if (cloud.dim != 2) throw InputError("only 2D clouds can be bound to an image");
  for (auto& n : cloud.nodes) {
    if (!img->contains(n.loc[0], n.loc[1])) {
      throw InputError("node " + std::to_string(n.id) + " lies outside the image");
    }
    if (!n.intensity) n.intensity = std::clamp(img->sample(n.loc[0], n.loc[1]), 0.0, 1.0);
  }
  cloud.image = std::move(img);
}

}  // namespace lcuts
