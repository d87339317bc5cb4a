#include "search_internal.hpp"

namespace fsp {

PathResult plan_astar(const OccupancyGrid& occ, const EdfGrid& edf, const PlannerConfig& cfg,
                      const GridCoord& start, const GridCoord& goal) {
  detail::require_plannable(occ, edf, cfg, start, goal);
  const detail::Stopwatch clock;
  const GridGeometry& geo = occ.geometry();
  const auto& table = detail::offset_table();
  const double res = geo.resolution();

  detail::SearchSpace space(geo.size());
  detail::OpenList open;
  const auto start_idx = static_cast<std::int32_t>(geo.index(start));
  const auto goal_idx = static_cast<std::int32_t>(geo.index(goal));
  space.g[start_idx] = 0.0;
  space.parent[start_idx] = start_idx;
  space.state[start_idx] = detail::NodeState::open;
  open.push({heuristic(geo, start, goal, cfg.heuristic_weight), 0.0, start_idx});

  PathResult result;
  while (!open.empty()) {
    const detail::OpenEntry top = open.top();
    open.pop();
    const auto s_idx = static_cast<std::size_t>(top.index);
    if (space.state[s_idx] == detail::NodeState::closed || top.g != space.g[s_idx]) continue;
    ++result.explored_nodes;
    if (top.index == goal_idx) {
      result.status = PlanStatus::found;
      break;
    }
    space.state[s_idx] = detail::NodeState::closed;

    const GridCoord s = geo.coord(s_idx);
    const double d_s = edf[s_idx];
    for (int id = 0; id < 26; ++id) {
      const GridCoord n = s + table.offsets[id];
      if (!geo.contains(n)) continue;
      const std::size_t n_idx = geo.index(n);
      if (occ.occupied(n_idx) || space.state[n_idx] == detail::NodeState::closed) continue;
      const double cand =
          space.g[s_idx] + detail::step_cost(d_s, edf[n_idx], table.length_voxels[id] * res, cfg.cost_weight);
      if (cand < space.g[n_idx]) {
        space.g[n_idx] = cand;
        space.parent[n_idx] = top.index;
        space.state[n_idx] = detail::NodeState::open;
        open.push({cand + heuristic(geo, n, goal, cfg.heuristic_weight), cand, static_cast<std::int32_t>(n_idx)});
      }
    }
  }

  if (result.found()) {
    result.waypoints = reconstruct_path(geo, space.parent, goal);
    result.total_cost = path_cost(edf, result.waypoints, cfg.cost_weight);
  }
  result.wall_time_s = clock.seconds();
  return result;
}

}  // namespace fsp
