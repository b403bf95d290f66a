#pragma once

#include <memory>
#include <vector>

#include "lcuts/geometry.hpp"
#include "lcuts/image.hpp"

namespace lcuts {

struct PipelineParams {
  double gaussianSigma = 1.5;
  double backgroundRadius = 15.0;  // disk radius of the morphological opening
  int maximaWindow = 3;
  double minSeparation = 2.0;
  double minNeighborDist = 5.0;
  double detectionFloor = 0.05;    // maxima must be strictly brighter than this

  void validate() const;
};

/// Separable Gaussian blur, kernel truncated at +-ceil(3 sigma) and renormalized,
/// edges mirrored (half-sample symmetric: ... b a | a b ...).
RasterImage gaussian_filter(const RasterImage& img, double sigma);

/// img - opening(img) with a disk structuring element, clamped to [0,1].
RasterImage subtract_background(const RasterImage& img, double radius);

/// Pixels that are >= every pixel in their window, > floor, brighter than at least
/// one window pixel (flat windows are background), and first in
/// row-major order among window pixels sharing their value. Returns (x, y)
/// pixel-center coordinates in row-major order.
std::vector<Vec> find_local_maxima(const RasterImage& img, int window, double floor);

/// Removes near-duplicates (keeping the brighter point) and isolated points,
/// then attaches intensities from `img`. The result is bound to a copy of `img`.
PointCloud prune_nodes(const std::vector<Vec>& points, const RasterImage& img, const PipelineParams& params);

/// gaussian_filter -> subtract_background -> find_local_maxima -> prune_nodes.
/// The cloud is bound to the enhanced (background-subtracted) image.
PointCloud extract_nodes(const RasterImage& img, const PipelineParams& params);

/// Binds `img` to a 2D cloud and fills missing node intensities by sampling it.
/// Throws InputError when a node lies outside the image.
void bind_image(PointCloud& cloud, std::shared_ptr<const RasterImage> img);

}  // namespace lcuts
