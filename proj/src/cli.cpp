#include "lcuts/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "lcuts/error.hpp"
#include "lcuts/io.hpp"
#include "lcuts/pipeline.hpp"
#include "lcuts/render.hpp"
#include "lcuts/synth.hpp"

namespace lcuts {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

ojson vec_json(const Vec& v) {
  ojson a = ojson::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v[k]);
  return a;
}

Vec vec_from(const nlohmann::json& a) {
  if (!a.is_array()) throw InputError("expected a numeric array");
  Vec v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t k = 0; k < a.size(); ++k) v[static_cast<Eigen::Index>(k)] = a[k].get<double>();
  return v;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

struct Globals {
  std::string configPath;
  std::string adjacencyPath;
  bool quiet = false;
};

Config load_config(const Globals& g) {
  if (g.configPath.empty()) return parse_config("");
  return parse_config(read_text_file(g.configPath));
}

void require_file(const std::string& path) {
  if (!fs::exists(path)) throw InputError("no such file: " + path);
}

int cmd_extract(const Globals& g, const std::string& image_path, const std::string& out_path, std::ostream& err) {
  require_file(image_path);
  const Config cfg = load_config(g);
  const RasterImage img = read_image(image_path);
  const PointCloud cloud = extract_nodes(img, cfg.pipeline);
  write_cloud_csv(fs::path(out_path), cloud);
  if (!g.quiet) err << "extracted " << cloud.size() << " nodes from " << image_path << '\n';
  return kExitOk;
}

int cmd_cluster(const Globals& g, const std::string& cloud_path, const std::string& image_path,
                const std::string& out_path, std::ostream& err) {
  require_file(cloud_path);
  const Config cfg = load_config(g);
  CloudFile file = read_cloud_csv(fs::path(cloud_path));
  PointCloud& cloud = file.cloud;
  if (cfg.dim != 0 && cfg.dim != cloud.dim) {
    throw InputError("config dim " + std::to_string(cfg.dim) + " does not match the " + std::to_string(cloud.dim) +
                     "D cloud in " + cloud_path);
  }
  if (!image_path.empty()) {
    require_file(image_path);
    bind_image(cloud, std::make_shared<const RasterImage>(read_image(image_path)));
  }
  cloud.validate();
  cfg.validate();
  const DirectionAssignment directed = assign_all_directions(cloud, cfg.voting);
  const WeightedGraph graph = build_adjacency(directed.cloud, cfg.graph);
  if (!g.adjacencyPath.empty()) write_matrix_csv(g.adjacencyPath, graph.weights);
  const ClusterResult result = lcuts_with_graph(directed.cloud, graph, cfg.graph, cfg.limits);
  write_text_file(out_path, dump(cluster_to_json(result, directed.cloud, cfg)));
  if (!g.quiet) {
    err << "clustered " << cloud.size() << " nodes into " << result.groups.size() << " groups, "
        << result.outliers.size() << " outliers";
    if (!directed.undirected.empty()) err << ", " << directed.undirected.size() << " nodes without direction";
    if (!result.forcedGroups.empty()) err << ", " << result.forcedGroups.size() << " groups accepted unsplittable";
    err << '\n';
  }
  return kExitOk;
}

Grouping truth_from_csv(const std::string& path, std::size_t& count) {
  require_file(path);
  const CloudFile f = read_cloud_csv(fs::path(path));
  if (!f.labels) throw InputError("truth CSV has no group column: " + path);
  count = f.cloud.size();
  return groups_from_labels(*f.labels);
}

int cmd_evaluate(const Globals& g, const std::vector<std::string>& inputs, const std::string& out_path,
                 std::ostream& out) {
  if (inputs.size() < 2 || inputs.size() % 2 != 0) throw InputError("evaluate expects pairs of <pred.json> <truth.csv>");
  const Config cfg = load_config(g);
  std::vector<EvalReport> reports;
  for (std::size_t k = 0; k < inputs.size(); k += 2) {
    require_file(inputs[k]);
    nlohmann::json pred_json;
    try {
      pred_json = nlohmann::json::parse(read_text_file(inputs[k]));
    } catch (const nlohmann::json::exception& e) {
      throw InputError("malformed JSON in " + inputs[k] + ": " + e.what());
    }
    const Grouping pred = grouping_from_cluster_json(pred_json);
    std::size_t count = 0;
    const Grouping truth = truth_from_csv(inputs[k + 1], count);
    reports.push_back(evaluate(pred, truth, cfg.overlapFrac));
    out << inputs[k] << ": gacc=" << reports.back().gacc << " cacc=" << reports.back().cacc << '\n';
  }
  ojson j;
  if (reports.size() == 1) {
    j = report_to_json(reports.front());
  } else {
    Counts node, cluster;
    double mg = 0.0, mc = 0.0;
    j["reports"] = ojson::array();
    for (const auto& r : reports) {
      j["reports"].push_back(report_to_json(r));
      mg += r.gacc;
      mc += r.cacc;
      node.tp += r.nodeLevel.tp; node.fp += r.nodeLevel.fp; node.fn += r.nodeLevel.fn;
      cluster.tp += r.clusterLevel.tp; cluster.fp += r.clusterLevel.fp; cluster.fn += r.clusterLevel.fn;
    }
    const double n = static_cast<double>(reports.size());
    j["aggregate"] = {{"meanGacc", mg / n},
                      {"meanCacc", mc / n},
                      {"pooledGacc", dice(node.tp, node.fp, node.fn)},
                      {"pooledCacc", dice(cluster.tp, cluster.fp, cluster.fn)}};
    out << "mean: gacc=" << mg / n << " cacc=" << mc / n << '\n';
  }
  j["params"] = {{"overlap_frac", cfg.overlapFrac}};
  write_text_file(out_path, dump(j));
  return kExitOk;
}

int cmd_synth(const Globals& g, const std::string& spec_path, const std::string& prefix, std::ostream& err) {
  require_file(spec_path);
  const SynthSpec spec = parse_synth_spec(read_text_file(spec_path));
  SynthCloud sc = generate_cloud(spec);
  if (spec.dim == 2) {
    SynthImage si = generate_image(spec);
    // Quantize first so intensities match what a reader of the PGM sees.
    std::ostringstream pgm;
    write_pgm(pgm, si.image);
    write_text_file(prefix + ".pgm", pgm.str());
    std::istringstream back(pgm.str());
    const RasterImage stored = read_pgm(back);
    for (auto& n : sc.cloud.nodes) {
      if (stored.contains(n.loc[0], n.loc[1])) n.intensity = std::clamp(stored.sample(n.loc[0], n.loc[1]), 0.0, 1.0);
    }
  }
  write_cloud_csv(fs::path(prefix + ".csv"), sc.cloud, &sc.labels);
  if (!g.quiet) err << "generated " << sc.rods.size() << " rods, " << sc.cloud.size() << " nodes\n";
  return kExitOk;
}

int cmd_render(const std::string& in_path, const std::string& out_path) {
  require_file(in_path);
  const std::string text = read_text_file(in_path);
  RenderInput input;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw InputError("malformed JSON in " + in_path + ": " + e.what());
    }
    input.dim = j.at("dim").get<int>();
    for (const auto& p : j.at("nodes")) input.locs.push_back(vec_from(p));
    input.group.assign(input.locs.size(), -1);
    const auto& groups = j.at("groups");
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      for (int id : groups[gi]) input.group.at(static_cast<std::size_t>(id)) = static_cast<int>(gi);
    }
    for (const auto& pg : j.at("perGroup")) {
      if (pg.is_null()) {
        input.fits.emplace_back();
        continue;
      }
      LineFit f;
      f.centroid = vec_from(pg.at("centroid"));
      f.axis = vec_from(pg.at("axis"));
      f.std = pg.at("std").get<double>();
      f.eccentricity = pg.at("eccentricity").get<double>();
      f.extent = pg.at("extent").get<double>();
      input.fits.emplace_back(std::move(f));
    }
  } else {
    std::istringstream ss(text);
    const CloudFile f = read_cloud_csv(ss);
    input.dim = f.cloud.dim;
    for (const auto& n : f.cloud.nodes) input.locs.push_back(n.loc);
    if (f.labels) {
      std::map<int, int> index;
      for (int l : *f.labels) index.emplace(l, 0);
      int k = 0;
      for (auto& [label, idx] : index) idx = k++;
      for (int l : *f.labels) input.group.push_back(index.at(l));
    } else {
      input.group.assign(input.locs.size(), 0);
    }
  }
  write_text_file(out_path, render_svg(input));
  return kExitOk;
}

}  // namespace

ojson cluster_to_json(const ClusterResult& result, const PointCloud& cloud, const Config& cfg) {
  ojson j;
  j["params"] = config_to_json(cfg);
  j["dim"] = cloud.dim;
  j["image"] = static_cast<bool>(cloud.image);
  j["nodes"] = ojson::array();
  for (const auto& n : cloud.nodes) j["nodes"].push_back(vec_json(n.loc));
  j["directions"] = ojson::array();
  for (const auto& d : result.directions) j["directions"].push_back(d ? vec_json(*d) : ojson(nullptr));
  j["groups"] = result.groups;
  j["outliers"] = result.outliers;
  j["forced"] = result.forcedGroups;
  j["perGroup"] = ojson::array();
  for (const auto& f : result.perGroup) {
    if (!f) {
      j["perGroup"].push_back(nullptr);
      continue;
    }
    ojson pg;
    pg["centroid"] = vec_json(f->centroid);
    pg["axis"] = vec_json(f->axis);
    pg["std"] = f->std;
    pg["eccentricity"] = f->eccentricity;
    pg["extent"] = f->extent;
    j["perGroup"].push_back(std::move(pg));
  }
  j["tree"] = ojson::array();
  for (const auto& t : result.tree) {
    ojson node;
    node["members"] = t.members;
    node["decision"] = to_string(t.decision);
    if (t.forced) node["forced"] = true;
    if (!t.stripped.empty()) node["stripped"] = t.stripped;
    if (t.left >= 0) {
      node["ncut"] = t.ncut;
      node["left"] = t.left;
      if (t.right >= 0) node["right"] = t.right;
    }
    j["tree"].push_back(std::move(node));
  }
  return j;
}

ojson report_to_json(const EvalReport& r) {
  ojson j;
  j["gacc"] = r.gacc;
  j["cacc"] = r.cacc;
  j["node"] = {{"tp", r.nodeLevel.tp}, {"fp", r.nodeLevel.fp}, {"fn", r.nodeLevel.fn}};
  j["cluster"] = {{"tp", r.clusterLevel.tp}, {"fp", r.clusterLevel.fp}, {"fn", r.clusterLevel.fn}};
  j["matches"] = ojson::array();
  for (const auto& m : r.matches) j["matches"].push_back({{"pred", m.pred}, {"truth", m.truth}, {"overlap", m.overlap}});
  return j;
}

Grouping grouping_from_cluster_json(const nlohmann::json& j) {
  try {
    Grouping g = j.at("groups").get<Grouping>();
    for (int id : j.at("outliers").get<std::vector<int>>()) g.push_back({id});
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("cluster JSON lacks groups/outliers: ") + e.what());
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lcuts: recursive normalized-cut clustering of point clouds into linear groups", "lcuts"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.configPath, "key = value parameter file");
  app.add_option("--dump-adjacency", g.adjacencyPath, "write the adjacency matrix as CSV (cluster)");
  app.add_flag("--quiet", g.quiet, "suppress progress messages");

  std::string image, cloud, output, spec, prefix, input;
  std::vector<std::string> eval_inputs;

  auto* extract = app.add_subcommand("extract", "find nodes in a PGM or CSV-grid image");
  extract->add_option("image", image)->required();
  extract->add_option("-o,--out", output)->required();
  extract->fallthrough();

  auto* cluster = app.add_subcommand("cluster", "cluster a point-cloud CSV");
  cluster->add_option("cloud", cloud)->required();
  cluster->add_option("--image", image, "image for intensity weighting (2D)");
  cluster->add_option("-o,--out", output)->required();
  cluster->fallthrough();

  auto* eval = app.add_subcommand("evaluate", "score cluster JSON against ground-truth CSV");
  eval->add_option("inputs", eval_inputs, "<pred.json> <truth.csv> [more pairs]")->required();
  eval->add_option("-o,--out", output)->required();
  eval->fallthrough();

  auto* synth = app.add_subcommand("synth", "generate synthetic rods");
  synth->add_option("spec", spec)->required();
  synth->add_option("prefix", prefix)->required();
  synth->fallthrough();

  auto* render = app.add_subcommand("render", "draw a cloud CSV or cluster JSON as SVG");
  render->add_option("input", input)->required();
  render->add_option("output", output)->required();
  render->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "lcuts: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*extract) return cmd_extract(g, image, output, err);
    if (*cluster) return cmd_cluster(g, cloud, image, output, err);
    if (*eval) return cmd_evaluate(g, eval_inputs, output, out);
    if (*synth) return cmd_synth(g, spec, prefix, err);
    if (*render) return cmd_render(input, output);
  } catch (const InputError& e) {
    err << "lcuts: " << e.what() << '\n';
    return kExitInput;
  } catch (const ComputationError& e) {
    err << "lcuts: " << e.what() << '\n';
    return kExitComputation;
  } catch (const std::exception& e) {
    err << "lcuts: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitInput;
}

}  // namespace lcuts
