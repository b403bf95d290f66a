#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "lcuts/geometry.hpp"
#include "lcuts/image.hpp"
#include "lcuts/metrics.hpp"

namespace lcuts {

/// Deterministic stream: std::mt19937_64 (sequence fixed by the C++ standard)
/// with hand-written uniform and Box-Muller normal transforms, so output is
/// identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  double uniform();                        // [0, 1), 53 random bits
  double uniform(double lo, double hi);
  double normal();                         // standard normal

 private:
  std::mt19937_64 engine_;
};

struct SynthSpec {
  int dim = 2;
  int nRods = 10;
  double lengthMin = 30.0;
  double lengthMax = 60.0;
  double spacingAlongRod = 4.0;
  double orthoNoiseStd = 0.5;
  double minRodGap = 15.0;
  int crossings = 0;                       // rod pairs forced to cross (X shape)
  std::optional<double> intensityValley;   // darkening depth around each crossing
  std::uint64_t seed = 1;
  double fieldSize = 0.0;                  // side of the square/cube field; 0 = sized from nRods
  double rodWidth = 15.0;                  // full rendered width in pixels
  double imageNoiseStd = 0.0;

  void validate() const;
  double resolved_field_size() const;
};

struct Rod {
  Vec a;
  Vec b;
  int crossesWith = -1;  // index of the rod it crosses, if any
  Vec junction;          // valid when crossesWith >= 0

  double length() const { return (b - a).norm(); }
};

/// Rods placed by rejection sampling (gap honored except between crossing partners).
/// Throws ComputationError when a rod needs more than 10^4 attempts.
std::vector<Rod> place_rods(const SynthSpec& spec);

/// Closest distance between segments [p0,p1] and [q0,q1] in any dimension.
double segment_distance(const Vec& p0, const Vec& p1, const Vec& q0, const Vec& q1);

/// Arc-length positions of the nodes along a rod of the given length.
std::vector<double> node_positions(double length, double spacing);

struct SynthCloud {
  PointCloud cloud;
  std::vector<int> labels;  // rod index per node
  Grouping truth;
  std::vector<Rod> rods;
};

SynthCloud generate_cloud(const SynthSpec& spec);

struct SynthImage {
  RasterImage image;
  PointCloud ridgeline;     // noiseless node positions, intensities sampled from the image
  std::vector<int> labels;
  Grouping truth;
  std::vector<Rod> rods;
};

/// Renders the same rods as generate_cloud (same seed) as bright ridges with
/// intensity peaks at the node positions. 2D only.
SynthImage generate_image(const SynthSpec& spec);

/// Rendering step of generate_image for a given rod layout (crossesWith and
/// junction drive the valleys). Field size and image parameters come from `spec`.
SynthImage render_rods(std::vector<Rod> rods, const SynthSpec& spec);

Grouping groups_from_labels(const std::vector<int>& labels);

}  // namespace lcuts
