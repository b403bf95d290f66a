// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "lcuts/direction.hpp"
#include "lcuts/engine.hpp"
#include "lcuts/io.hpp"
#include "lcuts/metrics.hpp"
#include "lcuts/pipeline.hpp"
#include "lcuts/spectral.hpp"
#include "lcuts/synth.hpp"

using namespace lcuts;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

Grouping with_outliers(const ClusterResult& r) {
  Grouping g = r.groups;
  for (int o : r.outliers) g.push_back({o});
  return g;
}

// 1 -------------------------------------------------------------------------

std::pair<std::vector<int>, double> exhaustive_ncut(const WeightedGraph& g) {
  const int n = g.size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> bestA;
  for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> a{0}, b;
    for (int i = 1; i < n; ++i) ((mask >> (i - 1)) & 1u ? b : a).push_back(i);
    const double v = ncut_value(g, a, b);
    if (v < best) best = v, bestA = a;
  }
  return {bestA, best};
}

Outcome criterion1() {
  std::mt19937_64 gen(1001);
  std::uniform_real_distribution<double> intra(0.5, 1.0), inter(0.0, 0.01);
  int exact = 0, within = 0;
  const auto t0 = Clock::now();
  for (int t = 0; t < 200; ++t) {
    const int n = 4 + static_cast<int>(gen() % 9);
    const int split = 2 + static_cast<int>(gen() % static_cast<unsigned>(n - 3));
    std::vector<int> side(n);
    for (int i = 0; i < n; ++i) side[i] = i < split;
    std::shuffle(side.begin(), side.end(), gen);
    WeightedGraph g{Eigen::MatrixXd::Zero(n, n)};
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.weights(i, j) = g.weights(j, i) = side[i] == side[j] ? intra(gen) : inter(gen);
    const auto [bestA, best] = exhaustive_ncut(g);
    const Bipartition bp = ncut_bipartition(g);
    if (bp.groupA == bestA) ++exact;
    if (bp.ncut <= best * 1.05 + 1e-15) ++within;
  }
  const double secs = seconds_since(t0);
  return {exact >= 195 && within == 200 && secs < 10,
          "exact " + std::to_string(exact) + "/200, within 5% " + std::to_string(within) + "/200, " + fmt(secs, 3) + " s"};
}

// 2 -------------------------------------------------------------------------

Outcome criterion2() {
  std::mt19937_64 gen(1002);
  std::normal_distribution<double> nd(0, 1);
  std::uniform_real_distribution<double> u(0, 1);
  double worstResidual = 0, lo = 0, hi = 0, worstZero = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(gen() % 63);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = nd(gen);
    for (const auto& p : smallest_eigenpairs(m, n))
      worstResidual = std::max(worstResidual, (m * p.vector - p.value * p.vector).norm() / m.norm());

    WeightedGraph g{Eigen::MatrixXd::Zero(n, n)};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) g.weights(i, j) = g.weights(j, i) = u(gen) < 0.3 ? 0.0 : u(gen);
    for (int i = 1; i < n; ++i)  // chain keeps it connected
      if (g.weights(i, i - 1) == 0.0) g.weights(i, i - 1) = g.weights(i - 1, i) = 0.05 + u(gen);
    const Eigen::MatrixXd lap = normalized_laplacian(g);
    const auto pairs = smallest_eigenpairs(lap, n);
    for (const auto& p : pairs) {
      worstResidual = std::max(worstResidual, (lap * p.vector - p.value * p.vector).norm() / lap.norm());
      lo = std::min(lo, p.value);
      hi = std::max(hi, p.value);
    }
    worstZero = std::max(worstZero, std::abs(pairs.front().value));
  }
  const bool ok = worstResidual <= 1e-8 && lo >= -1e-8 && hi <= 2 + 1e-8 && worstZero <= 1e-8;
  return {ok, "max residual/|M|_F " + fmt(worstResidual, 3) + ", L_sym spectrum [" + fmt(lo, 3) + ", " + fmt(hi, 6) +
                  "], max |lambda_0| " + fmt(worstZero, 3)};
}

// 3 -------------------------------------------------------------------------

Outcome criterion3() {
  int perfect = 0;
  const auto t0 = Clock::now();
  for (int seed = 1; seed <= 50; ++seed) {
    SynthSpec s;
    s.seed = static_cast<std::uint64_t>(seed);
    s.nRods = 5 + (seed * 7) % 26;
    s.lengthMax = 60;
    s.minRodGap = 15;
    s.orthoNoiseStd = 1.0;
    s.spacingAlongRod = 4;
    const SynthCloud c = generate_cloud(s);
    const auto r = lcuts::lcuts(c.cloud, GraphParams{}, VotingParams{}, StoppingLimits{});
    const EvalReport e = evaluate(with_outliers(r), c.truth);
    if (e.gacc == 1.0 && e.cacc == 1.0) ++perfect;
  }
  const double secs = seconds_since(t0);
  return {perfect == 50 && secs < 60, "perfect " + std::to_string(perfect) + "/50 seeds, " + fmt(secs, 3) + " s"};
}

// 4 -------------------------------------------------------------------------

Outcome criterion4() {
  double sum = 0, gsum = 0;
  for (int seed = 1; seed <= 25; ++seed) {
    SynthSpec s;
    s.seed = static_cast<std::uint64_t>(seed);
    s.nRods = 6;
    s.crossings = 2;
    s.intensityValley = 0.5;
    s.orthoNoiseStd = 0.5;
    SynthCloud c = generate_cloud(s);
    bind_image(c.cloud, std::make_shared<const RasterImage>(generate_image(s).image));
    const auto r = lcuts::lcuts(c.cloud, GraphParams{}, VotingParams{}, StoppingLimits{});
    const EvalReport e = evaluate(with_outliers(r), c.truth);
    sum += e.cacc;
    gsum += e.gacc;
  }
  const double mean = sum / 25;
  return {mean >= 0.95, "mean CAcc " + fmt(mean) + " (mean GAcc " + fmt(gsum / 25) + ") over 25 seeds, 2 X crossings each"};
}

// 5 -------------------------------------------------------------------------

Outcome criterion5() {
  double cs = 0, gs = 0;
  const auto t0 = Clock::now();
  for (int seed = 1; seed <= 25; ++seed) {
    SynthSpec s;
    s.dim = 3;
    s.seed = static_cast<std::uint64_t>(seed);
    s.nRods = 20 + (seed * 13) % 41;
    s.minRodGap = 15;
    s.orthoNoiseStd = 1.0;
    const SynthCloud c = generate_cloud(s);
    const auto r = lcuts::lcuts(c.cloud, GraphParams{}, VotingParams{}, StoppingLimits{});
    const EvalReport e = evaluate(with_outliers(r), c.truth);
    cs += e.cacc;
    gs += e.gacc;
  }
  return {cs / 25 >= 0.97 && gs / 25 >= 0.90,
          "mean CAcc " + fmt(cs / 25) + ", mean GAcc " + fmt(gs / 25) + ", " + fmt(seconds_since(t0), 3) + " s"};
}

// 6 -------------------------------------------------------------------------

double axis_angle(const Vec& a, const Vec& b) {
  return std::acos(std::min(1.0, std::abs(a.dot(b)) / (a.norm() * b.norm())));
}

Outcome criterion6() {
  std::mt19937_64 gen(1006);
  std::normal_distribution<double> nd(0, 1);
  double worstClean = 0;
  VotingParams vp;
  for (int t = 0; t < 100; ++t) {
    const int dim = t % 2 ? 3 : 2;
    Vec axis(dim);
    for (int k = 0; k < dim; ++k) axis(k) = nd(gen);
    axis.normalize();
    Vec origin(dim);
    for (int k = 0; k < dim; ++k) origin(k) = 100 * nd(gen);
    PointCloud c;
    c.dim = dim;
    for (int k = 0; k < 15; ++k) c.add(origin + (3.5 * k) * axis);
    const auto out = assign_all_directions(c, vp);
    for (const auto& n : out.cloud.nodes) worstClean = std::max(worstClean, axis_angle(*n.dir, axis));
  }

  long within = 0, total = 0;
  const double limit = 5.0 * std::numbers::pi / 180.0;
  for (int seed = 1; seed <= 50; ++seed) {
    SynthSpec s;
    s.seed = static_cast<std::uint64_t>(seed);
    s.nRods = 10;
    s.orthoNoiseStd = 1.0;
    s.spacingAlongRod = 4;
    const SynthCloud c = generate_cloud(s);
    const auto out = assign_all_directions(c.cloud, vp);
    for (std::size_t i = 0; i < c.cloud.size(); ++i) {
      const auto& rod = c.rods[static_cast<std::size_t>(c.labels[i])];
      ++total;
      const auto& d = out.cloud.nodes[i].dir;
      if (d && axis_angle(*d, rod.b - rod.a) <= limit) ++within;
    }
  }
  const double frac = static_cast<double>(within) / static_cast<double>(total);
  return {worstClean <= 1e-6 && frac >= 0.95, "noiseless max error " + fmt(worstClean, 3) + " rad; noisy within 5 deg " +
                                                  std::to_string(within) + "/" + std::to_string(total) + " = " +
                                                  fmt(frac) + " (need >= 0.95)"};
}

// 7 -------------------------------------------------------------------------

int reflect(int i, int n) {
  while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - i - 1;
  return i;
}

Outcome criterion7() {
  std::mt19937_64 gen(1007);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0;
  for (double sigma : {0.6, 1.0, 1.5, 2.5}) {
    RasterImage img(29, 23);
    for (auto& p : img.pixels()) p = u(gen);
    const RasterImage fast = gaussian_filter(img, sigma);
    const int r = static_cast<int>(std::ceil(3 * sigma));
    double total = 0;
    for (int dy = -r; dy <= r; ++dy)
      for (int dx = -r; dx <= r; ++dx) total += std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        double acc = 0;
        for (int dy = -r; dy <= r; ++dy)
          for (int dx = -r; dx <= r; ++dx)
            acc += std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma)) / total *
                   img.at(reflect(x + dx, img.width()), reflect(y + dy, img.height()));
        worst = std::max(worst, std::abs(acc - fast.at(x, y)));
      }
    }
  }

  long near = 0, far = 0, total = 0;
  for (int seed = 1; seed <= 10; ++seed) {
    SynthSpec s;
    s.seed = static_cast<std::uint64_t>(seed);
    s.nRods = 8;
    const SynthImage si = generate_image(s);
    const PointCloud c = extract_nodes(si.image, PipelineParams{});
    for (const auto& n : c.nodes) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& rod : si.rods) best = std::min(best, segment_distance(n.loc, n.loc, rod.a, rod.b));
      ++total;
      if (best <= 1.0) ++near;
      if (best > 3.0) ++far;
    }
  }
  const double frac = total ? static_cast<double>(near) / static_cast<double>(total) : 0.0;
  return {worst <= 1e-9 && frac >= 0.95 && far == 0,
          "filter max diff " + fmt(worst, 3) + "; nodes within 1 px " + fmt(frac) + " of " + std::to_string(total) +
              ", beyond 3 px " + std::to_string(far)};
}

// 8 -------------------------------------------------------------------------

Outcome criterion8() {
  bool hand = dice(1, 0, 0) == 1.0 && dice(0, 3, 2) == 0.0 && dice(3, 1, 1) == 0.75;

  Grouping truth10{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}};
  Grouping split64{{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9}};
  const Accuracy g = grouping_accuracy(split64, truth10);
  hand = hand && g.counts.tp == 6 && g.counts.fp == 4 && g.counts.fn == 4 && g.value == 0.6;

  Grouping truth20, split;
  for (int k = 0; k < 20; ++k) {
    truth20.emplace_back();
    for (int i = 0; i < 10; ++i) truth20.back().push_back(10 * k + i);
  }
  for (int k = 0; k < 20; ++k) {
    if (k == 3) {
      split.push_back({truth20[k].begin(), truth20[k].begin() + 5});
      split.push_back({truth20[k].begin() + 5, truth20[k].end()});
    } else {
      split.push_back(truth20[k]);
    }
  }
  const Accuracy c = counting_accuracy(split, truth20, 0.5);
  hand = hand && c.counts.tp == 20 && c.counts.fp == 1 && c.counts.fn == 0 && c.value == 40.0 / 41.0;
  hand = hand && counting_accuracy(truth20, truth20).value == 1.0;

  std::mt19937_64 gen(1008);
  int agree = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<std::vector<long>> m(5, std::vector<long>(5));
    for (int r = 0; r < 5; ++r) {
      long rowSum = 0;
      for (auto& v : m[r]) rowSum += v = static_cast<long>(gen() % 8);
      if (rowSum == 0) m[r][r] = 1;
    }
    for (int col = 0; col < 5; ++col) {
      long colSum = 0;
      for (int r = 0; r < 5; ++r) colSum += m[r][col];
      if (colSum == 0) m[col][col] = 1;
    }
    Grouping pred(5), truth(5);
    int next = 0;
    for (int r = 0; r < 5; ++r)
      for (int col = 0; col < 5; ++col)
        for (long k = 0; k < m[r][col]; ++k) {
          pred[r].push_back(next);
          truth[col].push_back(next);
          ++next;
        }
    long got = 0;
    for (const auto& mt : match_clusters(pred, truth)) got += mt.overlap;
    std::vector<int> perm{0, 1, 2, 3, 4};
    long best = 0;
    do {
      long s = 0;
      for (int r = 0; r < 5; ++r) s += m[r][perm[r]];
      best = std::max(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (got == best) ++agree;
  }
  return {hand && agree == 100,
          std::string("hand examples ") + (hand ? "exact" : "MISMATCH") + ", matching = 5! oracle on " +
              std::to_string(agree) + "/100"};
}

// 9 -------------------------------------------------------------------------

PointCloud fuzz_cloud(std::mt19937_64& gen, int t) {
  PointCloud c;
  c.dim = (t % 4 == 3) ? 3 : 2;
  std::uniform_real_distribution<double> u(0, 150);
  auto add_unique = [&](const Vec& p) {
    for (const auto& n : c.nodes)
      if (n.loc == p) return;
    c.add(p);
  };
  const int kind = t % 10;
  if (kind == 0) return c;
  if (kind == 1) {
    Vec p(c.dim);
    for (int k = 0; k < c.dim; ++k) p(k) = u(gen);
    c.add(p);
    return c;
  }
  if (kind == 2 || kind == 3) {
    // points that happen to fall on a few straight lines, irregular spacing
    const int lines = 1 + static_cast<int>(gen() % 3);
    for (int l = 0; l < lines; ++l) {
      Vec a(c.dim), d(c.dim);
      for (int k = 0; k < c.dim; ++k) a(k) = u(gen), d(k) = u(gen) - 75;
      d.normalize();
      const int m = 2 + static_cast<int>(gen() % 25);
      for (int i = 0; i < m; ++i) add_unique(a + (std::round(u(gen) * 4) / 4 - 75) * d);
    }
    return c;
  }
  const int n = 2 + static_cast<int>(gen() % 70);
  for (int i = 0; i < n; ++i) {
    Vec p(c.dim);
    for (int k = 0; k < c.dim; ++k) p(k) = std::round((kind >= 7 ? u(gen) / 3 : u(gen)) * 8) / 8;
    add_unique(p);
  }
  return c;
}

std::string check_invariants(const PointCloud& c, const ClusterResult& r, const StoppingLimits& lim) {
  std::vector<int> seen(c.size(), 0);
  for (const auto& g : r.groups)
    for (int i : g) ++seen[static_cast<std::size_t>(i)];
  for (int i : r.outliers) ++seen[static_cast<std::size_t>(i)];
  for (int s : seen)
    if (s != 1) return "partition";
  for (std::size_t g = 0; g < r.groups.size(); ++g) {
    if (r.groups[g].size() < 2) continue;
    if (std::find(r.forcedGroups.begin(), r.forcedGroups.end(), static_cast<int>(g)) != r.forcedGroups.end()) continue;
    const LineFit f = fit_line(locations(c, r.groups[g]));
    if (f.extent > lim.sizeLimit || f.std > lim.stdLimit) return "size/std";
    if (r.groups[g].size() > 3 && f.eccentricity < lim.eccLimit) return "eccentricity";
  }
  return "";
}

Outcome criterion9() {
  std::mt19937_64 gen(1009);
  const StoppingLimits lim;
  int ok = 0;
  std::string firstFailure;
  for (int t = 0; t < 500; ++t) {
    const PointCloud c = fuzz_cloud(gen, t);
    const auto r = lcuts::lcuts(c, GraphParams{}, VotingParams{}, lim);
    std::string why = check_invariants(c, r, lim);

    const auto again = lcuts::lcuts(c, GraphParams{}, VotingParams{}, lim);
    if (why.empty() && (again.groups != r.groups || again.outliers != r.outliers)) why = "determinism";

    std::vector<int> perm(c.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    PointCloud pc;
    pc.dim = c.dim;
    for (int old : perm) pc.add(c.nodes[static_cast<std::size_t>(old)].loc);
    const auto pr = lcuts::lcuts(pc, GraphParams{}, VotingParams{}, lim);
    std::set<std::vector<int>> mapped, orig(r.groups.begin(), r.groups.end());
    for (const auto& g : pr.groups) {
      std::vector<int> m;
      for (int i : g) m.push_back(perm[static_cast<std::size_t>(i)]);
      std::sort(m.begin(), m.end());
      mapped.insert(m);
    }
    if (why.empty() && mapped != orig) why = "permutation equivariance";
    if (why.empty()) ++ok;
    else if (firstFailure.empty()) firstFailure = " (first failure: cloud " + std::to_string(t) + ", " + why + ")";
  }
  return {ok == 500, std::to_string(ok) + "/500 fuzzed clouds hold all invariants" + firstFailure};
}

// 10 ------------------------------------------------------------------------

int sh(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

Outcome criterion10() {
  const fs::path root = fs::temp_directory_path() / "lcuts_acceptance";
  fs::remove_all(root);
  const std::string exe = LCUTS_CLI_PATH;
  const std::vector<std::string> files{"s.csv", "s.pgm", "c.json", "e.json", "r.svg"};
  std::vector<std::vector<std::string>> runs;
  bool ran = true;
  for (const std::string run : {"a", "b"}) {
    const fs::path d = root / run;
    fs::create_directories(d);
    write_text_file(d / "spec.txt", "n_rods = 12\ncrossings = 1\nvalley = 0.6\nseed = 2024\n");
    const std::string p = d.string() + "/";
    ran = ran && sh(exe + " --quiet synth " + p + "spec.txt " + p + "s") == 0;
    ran = ran && sh(exe + " --quiet cluster " + p + "s.csv --image " + p + "s.pgm -o " + p + "c.json") == 0;
    ran = ran && sh(exe + " --quiet evaluate " + p + "c.json " + p + "s.csv -o " + p + "e.json > /dev/null") == 0;
    ran = ran && sh(exe + " --quiet render " + p + "c.json " + p + "r.svg") == 0;
    runs.emplace_back();
    for (const auto& f : files) runs.back().push_back(fs::exists(d / f) ? read_text_file(d / f) : std::string());
  }
  const bool identical = ran && runs[0] == runs[1];
  fs::remove_all(root);

  SynthSpec s;
  s.nRods = 60;
  s.seed = 600;
  const SynthCloud big = generate_cloud(s);
  PointCloud c;
  for (std::size_t i = 0; i < 600 && i < big.cloud.size(); ++i) c.add(big.cloud.nodes[i].loc);
  const auto t0 = Clock::now();
  const auto r = lcuts::lcuts(c, GraphParams{}, VotingParams{}, StoppingLimits{});
  const double secs = seconds_since(t0);
  return {identical && c.size() == 600 && secs < 5,
          std::string("pipeline reruns ") + (identical ? "byte-identical" : "DIFFER") + "; " +
              std::to_string(c.size()) + "-node cloud clustered into " + std::to_string(r.groups.size()) + " groups in " +
              fmt(secs, 3) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ncut oracle equivalence", criterion1},  {"eigensolver correctness", criterion2},
      {"exact recovery 2D", criterion3},        {"crossing separation", criterion4},
      {"3D rods", criterion5},                  {"direction estimation", criterion6},
      {"pipeline fidelity", criterion7},        {"metrics exactness", criterion8},
      {"engine invariants", criterion9},        {"end-to-end reproducibility", criterion10},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << (k + 1) << " [" << (o.pass ? "PASS" : "FAIL") << "] " << criteria[k].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
