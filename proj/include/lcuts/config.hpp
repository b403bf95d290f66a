#pragma once

#include <string>

#include <json.hpp>

#include "lcuts/direction.hpp"
#include "lcuts/engine.hpp"
#include "lcuts/graph.hpp"
#include "lcuts/pipeline.hpp"
#include "lcuts/synth.hpp"

namespace lcuts {

/// Every tunable parameter, with module defaults.
struct Config {
  int dim = 0;  // 0 accepts either dimension
  VotingParams voting;
  GraphParams graph;
  StoppingLimits limits;
  PipelineParams pipeline;
  double overlapFrac = 0.5;

  void validate() const;
};

/// Flat `key = value` text; `#` starts a comment. Unknown keys and malformed
/// values throw InputError. When `hops` is given without `rel_bins`, the
/// bin count follows `hops`.
Config parse_config(const std::string& text);

/// Fully resolved parameter set, keys as in the config file.
nlohmann::ordered_json config_to_json(const Config& cfg);

/// Same format for synthetic-data specs (keys: dim, n_rods, length_min, ...).
SynthSpec parse_synth_spec(const std::string& text);
nlohmann::ordered_json synth_spec_to_json(const SynthSpec& spec);

}  // namespace lcuts
