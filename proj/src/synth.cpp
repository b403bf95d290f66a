#include "lcuts/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include "lcuts/error.hpp"

namespace lcuts {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void SynthSpec::validate() const {
  if (dim != 2 && dim != 3) throw InputError("synth: dim must be 2 or 3");
  if (nRods < 0) throw InputError("synth: n_rods must be >= 0");
  if (!(lengthMin > 0.0) || lengthMax < lengthMin) throw InputError("synth: need 0 < length_min <= length_max");
  if (!(spacingAlongRod > 0.0)) throw InputError("synth: spacing must be > 0");
  if (!(orthoNoiseStd >= 0.0)) throw InputError("synth: ortho_noise must be >= 0");
  if (!(minRodGap >= 0.0)) throw InputError("synth: min_gap must be >= 0");
  if (crossings < 0 || 2 * crossings > nRods) throw InputError("synth: each crossing needs two rods");
  if (intensityValley && !(*intensityValley >= 0.0 && *intensityValley <= 1.0)) {
    throw InputError("synth: valley depth must be in [0,1]");
  }
  if (!(rodWidth > 0.0)) throw InputError("synth: rod_width must be > 0");
  if (!(imageNoiseStd >= 0.0)) throw InputError("synth: image_noise must be >= 0");
  if (fieldSize < 0.0) throw InputError("synth: field_size must be >= 0");
}

double SynthSpec::resolved_field_size() const {
  if (fieldSize > 0.0) return fieldSize;
  const double n = std::max(1, nRods);
  const double reach = lengthMax + minRodGap;
  return dim == 2 ? 40.0 + reach * std::sqrt(n) : 40.0 + 0.8 * reach * std::cbrt(n);
}

double segment_distance(const Vec& p0, const Vec& p1, const Vec& q0, const Vec& q1) {
  const Vec d1 = p1 - p0, d2 = q1 - q0, r = p0 - q0;
  const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
  double s = 0.0, t = 0.0;
  if (a <= 1e-300 && e <= 1e-300) return r.norm();
  if (a <= 1e-300) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= 1e-300) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((p0 + s * d1) - (q0 + t * d2)).norm();
}

std::vector<double> node_positions(double length, double spacing) {
  const int count = static_cast<int>(std::floor(length / spacing + 1e-9)) + 1;
  const double offset = 0.5 * (length - (count - 1) * spacing);
  std::vector<double> s(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) s[static_cast<std::size_t>(k)] = offset + k * spacing;
  return s;
}

namespace {

constexpr int kMaxAttempts = 10000;

Vec random_direction(Rng& rng, int dim) {
  if (dim == 2) {
    const double t = rng.uniform(0.0, std::numbers::pi);
    return Vec{{std::cos(t), std::sin(t)}};
  }
  Vec v(3);
  do {
    v << rng.normal(), rng.normal(), rng.normal();
  } while (v.norm() < 1e-6);
  return v.normalized();
}

// Orthonormal complement of a unit vector (one vector in 2D, two in 3D).
std::vector<Vec> normals_of(const Vec& axis) {
  if (axis.size() == 2) return {Vec{{-axis[1], axis[0]}}};
  Vec helper = std::abs(axis[0]) < 0.9 ? Vec{{1.0, 0.0, 0.0}} : Vec{{0.0, 1.0, 0.0}};
  Vec n1 = (helper - helper.dot(axis) * axis).normalized();
  Vec n2(3);
  n2 << axis[1] * n1[2] - axis[2] * n1[1], axis[2] * n1[0] - axis[0] * n1[2], axis[0] * n1[1] - axis[1] * n1[0];
  return {n1, n2};
}

bool inside(const Vec& p, double lo, double hi) { return (p.array() >= lo).all() && (p.array() <= hi).all(); }

bool clear_of(const std::vector<Rod>& rods, const Rod& cand, double gap, int except) {
  for (std::size_t i = 0; i < rods.size(); ++i) {
    if (static_cast<int>(i) == except) continue;
    if (segment_distance(rods[i].a, rods[i].b, cand.a, cand.b) < gap) return false;
  }
  return true;
}

// Crossing partners meet at 60..90 degrees.
Vec crossing_direction(Rng& rng, const Vec& axis) {
  const double angle = rng.uniform(std::numbers::pi / 3.0, std::numbers::pi / 2.0);
  const auto normals = normals_of(axis);
  Vec side = normals[0];
  if (normals.size() == 2) {
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    side = std::cos(phi) * normals[0] + std::sin(phi) * normals[1];
  } else if (rng.uniform() < 0.5) {
    side = -side;
  }
  return (std::cos(angle) * axis + std::sin(angle) * side).normalized();
}

std::vector<Vec> rod_nodes(const Rod& rod, double spacing) {
  const Vec axis = (rod.b - rod.a).normalized();
  std::vector<Vec> out;
  for (double s : node_positions(rod.length(), spacing)) out.push_back(rod.a + s * axis);
  return out;
}

}  // namespace

std::vector<Rod> place_rods(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const double side = spec.resolved_field_size();
  const double margin = std::min(side / 4.0, 0.5 * spec.rodWidth + 2.0);
  const double lo = margin, hi = side - margin;

  auto free_rod = [&](int except, const std::vector<Rod>& rods) -> Rod {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const double len = rng.uniform(spec.lengthMin, spec.lengthMax);
      Vec center(spec.dim);
      for (int k = 0; k < spec.dim; ++k) center[k] = rng.uniform(lo, hi);
      const Vec dir = random_direction(rng, spec.dim);
      Rod cand{center - 0.5 * len * dir, center + 0.5 * len * dir, -1, Vec()};
      if (inside(cand.a, lo, hi) && inside(cand.b, lo, hi) && clear_of(rods, cand, spec.minRodGap, except)) return cand;
    }
    throw ComputationError("synth: could not place a rod in 10^4 attempts (spec too dense)");
  };

  std::vector<Rod> rods;
  for (int c = 0; c < spec.crossings; ++c) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
      const Rod first = free_rod(-1, rods);
      const Vec axis = (first.b - first.a).normalized();
      const Vec junction = first.a + rng.uniform(0.3, 0.7) * (first.b - first.a);
      const Vec dir = crossing_direction(rng, axis);
      const double len = rng.uniform(spec.lengthMin, spec.lengthMax);
      const double frac = rng.uniform(0.3, 0.7);
      Rod second{junction - frac * len * dir, junction + (1.0 - frac) * len * dir, -1, junction};
      if (!inside(second.a, lo, hi) || !inside(second.b, lo, hi) || !clear_of(rods, second, spec.minRodGap, -1)) continue;
      const int i = static_cast<int>(rods.size());
      Rod a = first;
      a.crossesWith = i + 1;
      a.junction = junction;
      second.crossesWith = i;
      rods.push_back(a);
      rods.push_back(second);
      placed = true;
    }
    if (!placed) throw ComputationError("synth: could not place a crossing pair in 10^4 attempts");
  }
  while (static_cast<int>(rods.size()) < spec.nRods) rods.push_back(free_rod(-1, rods));
  return rods;
}

SynthCloud generate_cloud(const SynthSpec& spec) {
  SynthCloud out;
  out.rods = place_rods(spec);
  out.cloud.dim = spec.dim;
  // Noise draws come from a second stream so rod placement is shared with generate_image.
  Rng noise(spec.seed ^ 0x9E3779B97F4A7C15ULL);
  for (std::size_t r = 0; r < out.rods.size(); ++r) {
    const Rod& rod = out.rods[r];
    const auto normals = normals_of((rod.b - rod.a).normalized());
    for (Vec p : rod_nodes(rod, spec.spacingAlongRod)) {
      for (const auto& nrm : normals) p += spec.orthoNoiseStd * noise.normal() * nrm;
      out.cloud.add(p);
      out.labels.push_back(static_cast<int>(r));
    }
  }
  out.truth = groups_from_labels(out.labels);
  return out;
}

namespace {

struct RodFrame {
  Vec a;
  Vec axis;
  double length;
  std::vector<double> peaks;
};

double point_segment_distance(const Vec& p, const RodFrame& f) {
  const double s = std::clamp((p - f.a).dot(f.axis), 0.0, f.length);
  return (p - (f.a + s * f.axis)).norm();
}

}  // namespace

SynthImage generate_image(const SynthSpec& spec) {
  if (spec.dim != 2) throw InputError("synth: images are generated for 2D specs only");
  return render_rods(place_rods(spec), spec);
}

SynthImage render_rods(std::vector<Rod> rods, const SynthSpec& spec) {
  if (spec.dim != 2) throw InputError("synth: images are generated for 2D specs only");
  SynthImage out;
  out.rods = std::move(rods);
  const int side = static_cast<int>(std::ceil(spec.resolved_field_size()));

  constexpr double kBackground = 0.1;
  constexpr double kPeak = 0.9;
  constexpr double kRidgeBase = 0.9;  // ridge level between node peaks, relative to a peak
  const double sigma_w = spec.rodWidth / 4.0;
  const double sigma_m = spec.spacingAlongRod / 4.0;

  std::vector<RodFrame> frames;
  for (const auto& rod : out.rods) {
    RodFrame f{rod.a, (rod.b - rod.a).normalized(), rod.length(), node_positions(rod.length(), spec.spacingAlongRod)};
    frames.push_back(std::move(f));
  }

  RasterImage img(side, side, kBackground);
  Rng noise(spec.seed ^ 0xD1B54A32D192ED03ULL);
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      const Vec p{{static_cast<double>(x), static_cast<double>(y)}};
      double ridge = 0.0;
      for (const auto& f : frames) {
        const double s = (p - f.a).dot(f.axis);
        const double d_perp = (p - (f.a + s * f.axis)).norm();
        if (d_perp > 4.0 * sigma_w + 1.0) continue;
        const double beyond = s < 0.0 ? -s : (s > f.length ? s - f.length : 0.0);
        const double body = std::exp(-(d_perp * d_perp + beyond * beyond) / (2.0 * sigma_w * sigma_w));
        double mod = 0.0;
        for (double pk : f.peaks) mod = std::max(mod, std::exp(-(s - pk) * (s - pk) / (2.0 * sigma_m * sigma_m)));
        ridge = std::max(ridge, body * (kRidgeBase + (1.0 - kRidgeBase) * mod));
      }
      double value = kBackground + (kPeak - kBackground) * ridge;
      if (spec.intensityValley) {
        // Darken the space between crossing partners near their junction while
        // leaving both centerlines bright.
        for (std::size_t i = 0; i < out.rods.size(); ++i) {
          const int j = out.rods[i].crossesWith;
          if (j < static_cast<int>(i)) continue;
          const Vec& jn = out.rods[static_cast<std::size_t>(j)].junction;
          const double dj2 = (p - jn).squaredNorm();
          const double reach = spec.rodWidth / 2.0;
          if (dj2 > 16.0 * reach * reach) continue;
          const double dmin = std::min(point_segment_distance(p, frames[i]),
                                       point_segment_distance(p, frames[static_cast<std::size_t>(j)]));
          const double off_line = 1.0 - std::exp(-2.0 * dmin * dmin);
          // full depth within `reach` of the junction, Gaussian shoulder beyond
          const double dj = std::sqrt(dj2);
          const double near = dj <= reach ? 1.0 : std::exp(-(dj - reach) * (dj - reach) / (0.5 * reach * reach));
          value *= 1.0 - *spec.intensityValley * near * off_line;
        }
      }
      if (spec.imageNoiseStd > 0.0) value += spec.imageNoiseStd * noise.normal();
      img.at(x, y) = std::clamp(value, 0.0, 1.0);
    }
  }

  out.image = std::move(img);
  out.ridgeline.dim = 2;
  for (std::size_t r = 0; r < out.rods.size(); ++r) {
    for (const Vec& p : rod_nodes(out.rods[r], spec.spacingAlongRod)) {
      out.ridgeline.add(p, out.image.sample(p[0], p[1]));
      out.labels.push_back(static_cast<int>(r));
    }
  }
  out.ridgeline.image = std::make_shared<const RasterImage>(out.image);
  out.truth = groups_from_labels(out.labels);
  return out;
}

Grouping groups_from_labels(const std::vector<int>& labels) {
  std::map<int, std::vector<int>> by_label;
  for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(static_cast<int>(i));
  Grouping g;
  for (auto& [label, ids] : by_label) g.push_back(std::move(ids));
  return g;
}

}  // namespace lcuts
