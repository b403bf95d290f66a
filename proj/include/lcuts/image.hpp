#pragma once

#include <vector>

#include "lcuts/geometry.hpp"

namespace lcuts {

/// Row-major grayscale raster with values in [0,1]. Pixel (x, y) has its
/// center at real coordinates (x, y); the image covers [-0.5, w-0.5) x [-0.5, h-0.5).
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(int width, int height, double fill = 0.0);
  RasterImage(int width, int height, std::vector<double> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }

  double at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
  double& at(int x, int y) { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }

  const std::vector<double>& pixels() const { return pixels_; }
  std::vector<double>& pixels() { return pixels_; }

  bool contains(double x, double y) const;

  /// Bilinear interpolation between pixel centers, clamped at the outer half pixel.
  /// Throws InputError outside the image.
  double sample(double x, double y) const;

  /// Minimum of bilinear samples along the segment a->b taken every `step` pixels
  /// (both endpoints included).
  double min_along(const Vec& a, const Vec& b, double step) const;

  bool operator==(const RasterImage&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> pixels_;
};

}  // namespace lcuts
