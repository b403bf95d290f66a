#include "lcuts/image.hpp"

#include <algorithm>
#include <cmath>

#include "lcuts/error.hpp"

namespace lcuts {

RasterImage::RasterImage(int width, int height, double fill)
    : RasterImage(width, height, std::vector<double>(static_cast<std::size_t>(std::max(0, width) * std::max(0, height)), fill)) {}

RasterImage::RasterImage(int width, int height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 0 || height < 0) throw InputError("image dimensions must be non-negative");
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw InputError("image pixel count does not match width*height");
  }
}

bool RasterImage::contains(double x, double y) const {
  return x >= -0.5 && y >= -0.5 && x < width_ - 0.5 && y < height_ - 0.5;
}

double RasterImage::sample(double x, double y) const {
  if (!contains(x, y)) throw InputError("intensity sample outside image bounds");
  const double cx = std::clamp(x, 0.0, static_cast<double>(width_ - 1));
  const double cy = std::clamp(y, 0.0, static_cast<double>(height_ - 1));
  const int x0 = std::min(static_cast<int>(cx), width_ - 1);
  const int y0 = std::min(static_cast<int>(cy), height_ - 1);
  const int x1 = std::min(x0 + 1, width_ - 1);
  const int y1 = std::min(y0 + 1, height_ - 1);
  const double fx = cx - x0;
  const double fy = cy - y0;
  const double top = at(x0, y0) * (1.0 - fx) + at(x1, y0) * fx;
  const double bottom = at(x0, y1) * (1.0 - fx) + at(x1, y1) * fx;
  return top * (1.0 - fy) + bottom * fy;
}

double RasterImage::min_along(const Vec& a, const Vec& b, double step) const {
  if (a.size() != 2 || b.size() != 2) throw InputError("image sampling needs 2D points");
  if (!(step > 0.0)) throw InputError("sampling step must be > 0");
  const double len = (b - a).norm();
  const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
  double m = sample(a[0], a[1]);
  for (int k = 1; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    m = std::min(m, sample(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])));
  }
  return m;
}

}  // namespace lcuts
