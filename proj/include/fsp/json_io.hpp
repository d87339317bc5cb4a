#pragma once

#include <string>

#include <json.hpp>

#include "fsp/benchmark.hpp"
#include "fsp/search.hpp"

namespace fsp {

/// {algorithm, config, start, goal, waypoints, world_waypoints, total_cost,
///  explored_nodes, wall_time_s, fallback_used}
nlohmann::json path_to_json(const GridGeometry& geometry, const std::string& algorithm, const PlannerConfig& cfg,
                            const GridCoord& start, const GridCoord& goal, const PathResult& result);

nlohmann::json config_to_json(const PlannerConfig& cfg);

nlohmann::json report_to_json(const MetricReport& report);

}  // namespace fsp
