#include "lcuts/config.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "lcuts/error.hpp"

namespace lcuts {

void Config::validate() const {
  if (dim != 0 && dim != 2 && dim != 3) throw InputError("config: dim must be 0, 2 or 3");
  voting.validate();
  graph.validate();
  limits.validate();
  pipeline.validate();
  if (!(overlapFrac > 0.0 && overlapFrac <= 1.0)) throw InputError("config: overlap_frac must be in (0, 1]");
}

namespace {

using Entries = std::vector<std::pair<std::string, std::string>>;

Entries parse_entries(const std::string& text) {
  Entries out;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError("config line " + std::to_string(lineno) + ": expected key = value");
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    if (key.empty()) throw InputError("config line " + std::to_string(lineno) + ": empty key");
    if (!seen.insert(key).second) throw InputError("config: duplicate key '" + key + "'");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

double to_real(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty()) throw InputError("config: '" + key + "' expects a number, got '" + v + "'");
  return x;
}

long long to_integer(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty()) throw InputError("config: '" + key + "' expects an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InputError("config: '" + key + "' expects true or false, got '" + v + "'");
}

using Setter = std::function<void(const std::string&, const std::string&)>;

void apply(const Entries& entries, const std::map<std::string, Setter>& setters, const char* what) {
  for (const auto& [k, v] : entries) {
    const auto it = setters.find(k);
    if (it == setters.end()) throw InputError(std::string(what) + ": unknown key '" + k + "'");
    it->second(k, v);
  }
}

}  // namespace

Config parse_config(const std::string& text) {
  Config c;
  bool bins_given = false;
  const std::map<std::string, Setter> setters{
      {"dim", [&](auto& k, auto& v) { c.dim = static_cast<int>(to_integer(k, v)); }},
      {"hops", [&](auto& k, auto& v) { c.voting.hops = static_cast<int>(to_integer(k, v)); }},
      {"hop_radius", [&](auto& k, auto& v) { c.voting.hopRadius = to_real(k, v); }},
      {"rel_bins", [&](auto& k, auto& v) { c.voting.nRelBins = static_cast<int>(to_integer(k, v)); bins_given = true; }},
      {"r", [&](auto& k, auto& v) { c.graph.r = to_real(k, v); }},
      {"sigma_d", [&](auto& k, auto& v) { c.graph.sigmaD = to_real(k, v); }},
      {"sigma_t", [&](auto& k, auto& v) { c.graph.sigmaT = to_real(k, v); }},
      {"intensity_step", [&](auto& k, auto& v) { c.graph.intensitySamplingStep = to_real(k, v); }},
      {"size_limit", [&](auto& k, auto& v) { c.limits.sizeLimit = to_real(k, v); }},
      {"ecc_limit", [&](auto& k, auto& v) { c.limits.eccLimit = to_real(k, v); }},
      {"std_limit", [&](auto& k, auto& v) { c.limits.stdLimit = to_real(k, v); }},
      {"min_group_size", [&](auto& k, auto& v) { c.limits.minGroupSize = static_cast<int>(to_integer(k, v)); }},
      {"check_intensity", [&](auto& k, auto& v) { c.limits.checkIntensity = to_bool(k, v); }},
      {"check_eccentricity", [&](auto& k, auto& v) { c.limits.checkEccentricity = to_bool(k, v); }},
      {"gaussian_sigma", [&](auto& k, auto& v) { c.pipeline.gaussianSigma = to_real(k, v); }},
      {"background_radius", [&](auto& k, auto& v) { c.pipeline.backgroundRadius = to_real(k, v); }},
      {"maxima_window", [&](auto& k, auto& v) { c.pipeline.maximaWindow = static_cast<int>(to_integer(k, v)); }},
      {"min_separation", [&](auto& k, auto& v) { c.pipeline.minSeparation = to_real(k, v); }},
      {"min_neighbor_dist", [&](auto& k, auto& v) { c.pipeline.minNeighborDist = to_real(k, v); }},
      {"detection_floor", [&](auto& k, auto& v) { c.pipeline.detectionFloor = to_real(k, v); }},
      {"overlap_frac", [&](auto& k, auto& v) { c.overlapFrac = to_real(k, v); }},
  };
  apply(parse_entries(text), setters, "config");
  if (!bins_given) c.voting.nRelBins = c.voting.hops;
  c.validate();
  return c;
}

nlohmann::ordered_json config_to_json(const Config& c) {
  nlohmann::ordered_json j;
  j["dim"] = c.dim;
  j["hops"] = c.voting.hops;
  j["hop_radius"] = c.voting.hopRadius;
  j["rel_bins"] = c.voting.nRelBins;
  j["r"] = c.graph.r;
  j["sigma_d"] = c.graph.sigmaD;
  j["sigma_t"] = c.graph.sigmaT;
  j["intensity_step"] = c.graph.intensitySamplingStep;
  j["size_limit"] = c.limits.sizeLimit;
  j["ecc_limit"] = c.limits.eccLimit;
  j["std_limit"] = c.limits.stdLimit;
  j["min_group_size"] = c.limits.minGroupSize;
  j["check_intensity"] = c.limits.checkIntensity;
  j["check_eccentricity"] = c.limits.checkEccentricity;
  j["gaussian_sigma"] = c.pipeline.gaussianSigma;
  j["background_radius"] = c.pipeline.backgroundRadius;
  j["maxima_window"] = c.pipeline.maximaWindow;
  j["min_separation"] = c.pipeline.minSeparation;
  j["min_neighbor_dist"] = c.pipeline.minNeighborDist;
  j["detection_floor"] = c.pipeline.detectionFloor;
  j["overlap_frac"] = c.overlapFrac;
  return j;
}

SynthSpec parse_synth_spec(const std::string& text) {
  SynthSpec s;
  const std::map<std::string, Setter> setters{
      {"dim", [&](auto& k, auto& v) { s.dim = static_cast<int>(to_integer(k, v)); }},
      {"n_rods", [&](auto& k, auto& v) { s.nRods = static_cast<int>(to_integer(k, v)); }},
      {"length_min", [&](auto& k, auto& v) { s.lengthMin = to_real(k, v); }},
      {"length_max", [&](auto& k, auto& v) { s.lengthMax = to_real(k, v); }},
      {"spacing", [&](auto& k, auto& v) { s.spacingAlongRod = to_real(k, v); }},
      {"ortho_noise", [&](auto& k, auto& v) { s.orthoNoiseStd = to_real(k, v); }},
      {"min_gap", [&](auto& k, auto& v) { s.minRodGap = to_real(k, v); }},
      {"crossings", [&](auto& k, auto& v) { s.crossings = static_cast<int>(to_integer(k, v)); }},
      {"valley", [&](auto& k, auto& v) {
         if (v == "none") s.intensityValley.reset();
         else s.intensityValley = to_real(k, v);
       }},
      {"seed", [&](auto& k, auto& v) {
         const long long x = to_integer(k, v);
         if (x < 0) throw InputError("synth spec: seed must be non-negative");
         s.seed = static_cast<std::uint64_t>(x);
       }},
      {"field_size", [&](auto& k, auto& v) { s.fieldSize = to_real(k, v); }},
      {"rod_width", [&](auto& k, auto& v) { s.rodWidth = to_real(k, v); }},
      {"image_noise", [&](auto& k, auto& v) { s.imageNoiseStd = to_real(k, v); }},
  };
  apply(parse_entries(text), setters, "synth spec");
  s.validate();
  return s;
}

nlohmann::ordered_json synth_spec_to_json(const SynthSpec& s) {
  nlohmann::ordered_json j;
  j["dim"] = s.dim;
  j["n_rods"] = s.nRods;
  j["length_min"] = s.lengthMin;
  j["length_max"] = s.lengthMax;
  j["spacing"] = s.spacingAlongRod;
  j["ortho_noise"] = s.orthoNoiseStd;
  j["min_gap"] = s.minRodGap;
  j["crossings"] = s.crossings;
  j["valley"] = s.intensityValley ? nlohmann::ordered_json(*s.intensityValley) : nlohmann::ordered_json("none");
  j["seed"] = s.seed;
  j["field_size"] = s.resolved_field_size();
  j["rod_width"] = s.rodWidth;
  j["image_noise"] = s.imageNoiseStd;
  return j;
}

}  // namespace lcuts
