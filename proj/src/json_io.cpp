#include "fsp/json_io.hpp"

#include <cmath>

namespace fsp {

namespace {

nlohmann::json coord_json(const GridCoord& c) { return nlohmann::json::array({c.i, c.j, c.k}); }

// JSON has no NaN; undefined statistics become null.
nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json config_to_json(const PlannerConfig& cfg) {
  return {{"cost_weight", cfg.cost_weight},
          {"max_los", cfg.max_los},
          {"neighbours", cfg.neighbours.label()},
          {"fallback", cfg.fallback.label()},
          {"heuristic_weight", cfg.heuristic_weight}};
}

nlohmann::json path_to_json(const GridGeometry& geometry, const std::string& algorithm, const PlannerConfig& cfg,
                            const GridCoord& start, const GridCoord& goal, const PathResult& result) {
  nlohmann::json waypoints = nlohmann::json::array();
  nlohmann::json world = nlohmann::json::array();
  for (const GridCoord& c : result.waypoints) {
    waypoints.push_back(coord_json(c));
    const WorldPoint p = geometry.center(c);
    world.push_back({p.x, p.y, p.z});
  }
  return {{"algorithm", algorithm},
          {"config", config_to_json(cfg)},
          {"start", coord_json(start)},
          {"goal", coord_json(goal)},
          {"waypoints", waypoints},
          {"world_waypoints", world},
          {"total_cost", result.total_cost},
          {"explored_nodes", result.explored_nodes},
          {"wall_time_s", result.wall_time_s},
          {"fallback_used", result.fallback_used}};
}

nlohmann::json report_to_json(const MetricReport& report) {
  nlohmann::json scenarios = nlohmann::json::array();
  for (const auto& sc : report.scenarios) {
    nlohmann::json algos = nlohmann::json::array();
    for (const auto& a : sc.algorithms) {
      nlohmann::json metrics = nlohmann::json::object();
      for (Metric m : kAllMetrics) {
        const MetricStat& s = a.stat(m);
        metrics[metric_name(m)] = {{"mean", number_or_null(s.mean)},
                                   {"sem", number_or_null(s.sem)},
                                   {"ratio", number_or_null(s.ratio)}};
      }
      algos.push_back({{"algorithm", a.label}, {"failed_runs", a.failed_runs}, {"metrics", metrics}});
    }
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [s, g] : sc.pairs) pairs.push_back({coord_json(s), coord_json(g)});
    scenarios.push_back({{"scenario", sc.scenario + " (generated analogue)"},
                         {"pairs", pairs},
                         {"used_runs", sc.used_runs},
                         {"excluded_runs", sc.excluded_runs},
                         {"algorithms", algos}});
  }
  return {{"baseline", report.baseline},
          {"runs", report.runs},
          {"seed", report.seed},
          {"cost_weight", report.cost_weight},
          {"max_los", report.max_los},
          {"no_path_policy", "pairs unsolved by any algorithm are excluded from every statistic"},
          {"scenarios", scenarios}};
}

}  // namespace fsp
