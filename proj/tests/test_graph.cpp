#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lcuts/direction.hpp"
#include "lcuts/error.hpp"
#include "lcuts/graph.hpp"
#include "lcuts/image.hpp"
#include "lcuts/pipeline.hpp"
#include "lcuts/synth.hpp"

using lcuts::Vec;

namespace {

Vec v2(double x, double y) { return Vec{{x, y}}; }

lcuts::PointCloud cloud_with_intensities(const std::vector<double>& values) {
  lcuts::PointCloud c;
  for (std::size_t i = 0; i < values.size(); ++i) c.add(v2(static_cast<double>(i), 0), values[i]);
  return c;
}

}  // namespace

TEST(WeightDistance, Examples) {
  lcuts::GraphParams p;
  EXPECT_DOUBLE_EQ(lcuts::weight_distance(0, p), 1.0);
  EXPECT_DOUBLE_EQ(lcuts::weight_distance(61, p), 0.0);
  EXPECT_GT(lcuts::weight_distance(60, p), 0.0);
  EXPECT_NEAR(lcuts::weight_distance(p.sigmaD, p), std::exp(-1.0), 1e-15);
  double prev = 1.0;
  for (double d = 0; d <= 70; d += 0.25) {
    const double w = lcuts::weight_distance(d, p);
    EXPECT_LE(w, prev);
    prev = w;
  }
}

TEST(WeightDirection, Examples) {
  lcuts::GraphParams p;
  p.sigmaT = 0.5;
  EXPECT_DOUBLE_EQ(lcuts::weight_direction(v2(1, 0), v2(1, 0), p), 1.0);
  EXPECT_DOUBLE_EQ(lcuts::weight_direction(v2(1, 0), v2(-1, 0), p), 1.0);
  EXPECT_NEAR(lcuts::weight_direction(v2(1, 0), v2(0, 1), p), std::exp(-4.0), 1e-15);
  EXPECT_THROW(lcuts::weight_direction(v2(2, 0), v2(0, 1), p), lcuts::InputError);

  lcuts::GraphParams def;
  const double th = std::acos(1 - def.sigmaT);
  EXPECT_NEAR(lcuts::weight_direction(v2(1, 0), v2(std::cos(th), std::sin(th)), def), std::exp(-1.0), 1e-12);

  double prev = 1.0;
  for (double a = 0; a <= M_PI / 2; a += 0.01) {
    const double w = lcuts::weight_direction(v2(1, 0), v2(std::cos(a), std::sin(a)), def);
    EXPECT_LE(w, prev + 1e-15);
    prev = w;
  }
}

TEST(IntensityThreshold, Examples) {
  EXPECT_DOUBLE_EQ(lcuts::intensity_threshold(cloud_with_intensities({0.3, 0.3, 0.3})), 0.3);
  EXPECT_DOUBLE_EQ(lcuts::intensity_threshold(cloud_with_intensities({0.0, 1.0})), 0.25);

  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(0.4, 1.0);
  std::vector<double> vals;
  for (int i = 0; i < 500; ++i) vals.push_back(u(gen));
  const double lo = *std::min_element(vals.begin(), vals.end());
  const double hi = *std::max_element(vals.begin(), vals.end());
  double mean = 0;
  for (double v : vals) mean += v;
  mean /= vals.size();
  double var = 0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= vals.size();
  const double t = lcuts::intensity_threshold(cloud_with_intensities(vals));
  EXPECT_NEAR(t, (lo + hi) / 2 - var, 1e-12);
  EXPECT_NEAR(t, 0.67, 0.02);

  lcuts::PointCloud missing;
  missing.add(v2(0, 0), 0.5);
  missing.add(v2(1, 0));
  EXPECT_THROW(lcuts::intensity_threshold(missing), lcuts::InputError);
}

TEST(WeightIntensity, NoImageAndConstant) {
  lcuts::GraphParams p;
  auto c = cloud_with_intensities({0.8, 0.8});
  EXPECT_DOUBLE_EQ(lcuts::weight_intensity(c, 0, 1, 0.25, p), 1.0);
  c.image = std::make_shared<const lcuts::RasterImage>(10, 4, 0.8);
  EXPECT_DOUBLE_EQ(lcuts::weight_intensity(c, 0, 1, 0.25, p), 1.0);
}

TEST(WeightIntensity, ValleyMatchesDenseSampling) {
  lcuts::RasterImage img(40, 20, 0.8);
  for (int y = 0; y < 20; ++y)
    for (int x = 19; x <= 21; ++x) img.at(x, y) = 0.1;
  lcuts::PointCloud c;
  c.add(v2(5.3, 9.7), 0.8);
  c.add(v2(33.1, 11.2), 0.8);
  c.image = std::make_shared<const lcuts::RasterImage>(img);

  double dense = 1.0;
  const Vec a = c.nodes[0].loc, b = c.nodes[1].loc;
  const int steps = static_cast<int>(std::ceil((b - a).norm() / 0.01));
  for (int k = 0; k <= steps; ++k) {
    const Vec p = a + (b - a) * (static_cast<double>(k) / steps);
    dense = std::min(dense, img.sample(p(0), p(1)));
  }
  lcuts::GraphParams p;
  const double w = lcuts::weight_intensity(c, 0, 1, 0.25, p);
  EXPECT_LE(w, 0.25);
  EXPECT_EQ(w, dense);
  EXPECT_NEAR(dense, 0.1, 1e-12);
  EXPECT_EQ(w, lcuts::weight_intensity(c, 1, 0, 0.25, p));
}

TEST(BuildAdjacency, SmallCases) {
  lcuts::GraphParams p;
  lcuts::PointCloud far;
  far.add(v2(0, 0));
  far.add(v2(61, 0));
  EXPECT_EQ(lcuts::build_adjacency(far, p)(0, 1), 0.0);

  lcuts::PointCloud two;
  two.add(v2(0, 0));
  two.add(v2(p.sigmaD, 0));
  two.nodes[0].dir = v2(1, 0);
  two.nodes[1].dir = v2(-1, 0);
  auto g = lcuts::build_adjacency(two, p);
  EXPECT_NEAR(g(0, 1), std::exp(-1.0), 1e-15);
  EXPECT_EQ(g(0, 0), 0.0);
}

TEST(BuildAdjacency, EqualsProductOfFactors) {
  lcuts::SynthSpec spec;
  spec.nRods = 6;
  spec.crossings = 1;
  spec.intensityValley = 0.6;
  spec.seed = 8;
  auto s = lcuts::generate_image(spec);
  lcuts::PointCloud c;
  for (std::size_t i = 0; i < 50 && i < s.ridgeline.size(); ++i) c.add(s.ridgeline.nodes[i].loc);
  ASSERT_EQ(c.size(), 50u);
  lcuts::bind_image(c, std::make_shared<const lcuts::RasterImage>(s.image));
  lcuts::VotingParams vp;
  auto directed = lcuts::assign_all_directions(c, vp).cloud;

  lcuts::GraphParams p;
  const int n = 50;
  const double thresh = lcuts::intensity_threshold(directed);
  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n), dir = dist, inten = dist;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& a = directed.nodes[i];
      const auto& b = directed.nodes[j];
      dist(i, j) = lcuts::weight_distance((a.loc - b.loc).norm(), p);
      dir(i, j) = (a.dir && b.dir) ? lcuts::weight_direction(*a.dir, *b.dir, p) : 1.0;
      inten(i, j) = lcuts::weight_intensity(directed, i, j, thresh, p);
    }
  }
  Eigen::MatrixXd expected = dist.cwiseProduct(dir).cwiseProduct(inten);
  auto g = lcuts::build_adjacency(directed, p);
  EXPECT_EQ((g.weights - expected).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LT(inten.minCoeff(), 1.0);
}

TEST(BuildAdjacency, SymmetricAndBounded) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(2, 78);
  for (int t = 0; t < 10; ++t) {
    lcuts::PointCloud c;
    lcuts::RasterImage img(80, 80);
    for (auto& px : img.pixels()) px = std::uniform_real_distribution<double>(0, 1)(gen);
    c.image = std::make_shared<const lcuts::RasterImage>(img);
    for (int i = 0; i < 40; ++i) {
      const Vec p = v2(u(gen), u(gen));
      c.add(p, img.sample(p(0), p(1)));
    }
    auto directed = lcuts::assign_all_directions(c, lcuts::VotingParams{}).cloud;
    auto g = lcuts::build_adjacency(directed, lcuts::GraphParams{});
    EXPECT_EQ((g.weights - g.weights.transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_GE(g.weights.minCoeff(), 0.0);
    EXPECT_LE(g.weights.maxCoeff(), 1.0);
    EXPECT_EQ(g.weights.diagonal().cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(RestrictGraph, PicksSubMatrix) {
  lcuts::WeightedGraph g;
  g.weights = Eigen::MatrixXd::Zero(4, 4);
  g.weights(0, 2) = g.weights(2, 0) = 0.5;
  g.weights(3, 2) = g.weights(2, 3) = 0.25;
  std::vector<int> ids{2, 3};
  auto sub = lcuts::restrict_graph(g, ids);
  EXPECT_EQ(sub.size(), 2);
  EXPECT_EQ(sub(0, 1), 0.25);
  EXPECT_EQ(sub(0, 0), 0.0);
}
