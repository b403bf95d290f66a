#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcuts/config.hpp"
#include "lcuts/engine.hpp"
#include "lcuts/metrics.hpp"

namespace lcuts {

enum ExitCode : int { kExitOk = 0, kExitComputation = 1, kExitInput = 2 };

/// Entry point of the `lcuts` tool. Subcommands: extract, cluster, evaluate,
/// synth, render. Global flags: --config, --dump-adjacency, --quiet.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::ordered_json cluster_to_json(const ClusterResult& result, const PointCloud& cloud, const Config& cfg);
nlohmann::ordered_json report_to_json(const EvalReport& report);

/// Predicted grouping from cluster JSON; outliers become singleton groups.
Grouping grouping_from_cluster_json(const nlohmann::json& j);

}  // namespace lcuts
