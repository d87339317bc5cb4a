#include "fsp/line_of_sight.hpp"
#include "search_internal.hpp"

namespace fsp {

namespace {

struct LazyThetaRun {
  bool found = false;
  std::size_t explored = 0;
  detail::SearchSpace space;

  explicit LazyThetaRun(std::size_t n) : space(n) {}
};

// One Lazy Theta* search. Expansion optimistically links each neighbour to
// the current node's parent; the deferred visibility test happens when the
// node is popped, and on failure the node is re-linked to its cheapest closed
// 26-neighbour.
LazyThetaRun lazy_theta(const OccupancyGrid& occ, const EdfGrid& edf, const PlannerConfig& cfg,
                        const GridCoord& start, const GridCoord& goal, const NeighbourPolicy& policy) {
  const GridGeometry& geo = occ.geometry();
  const auto& table = detail::offset_table();
  const double res = geo.resolution();
  const double cw = cfg.cost_weight;

  LazyThetaRun run(geo.size());
  auto& sp = run.space;
  detail::OpenList open;
  const auto start_idx = static_cast<std::int32_t>(geo.index(start));
  const auto goal_idx = static_cast<std::int32_t>(geo.index(goal));
  sp.g[start_idx] = 0.0;
  sp.parent[start_idx] = start_idx;
  sp.state[start_idx] = detail::NodeState::open;
  open.push({heuristic(geo, start, goal, cfg.heuristic_weight), 0.0, start_idx});

  while (!open.empty()) {
    const detail::OpenEntry top = open.top();
    open.pop();
    const auto s_idx = static_cast<std::size_t>(top.index);
    if (sp.state[s_idx] == detail::NodeState::closed || top.g != sp.g[s_idx]) continue;
    ++run.explored;
    const GridCoord s = geo.coord(s_idx);
    const double d_s = edf[s_idx];

    // SetVertex
    const std::int32_t p_idx = sp.parent[s_idx];
    if (p_idx != top.index) {
      const GridCoord p = geo.coord(static_cast<std::size_t>(p_idx));
      if (line_of_sight(occ, p, s, cfg.max_los) != Visibility::visible) {
        double best = detail::kInf;
        std::int32_t best_parent = -1;
        for (int id = 0; id < 26; ++id) {
          const GridCoord n = s + table.offsets[id];
          if (!geo.contains(n)) continue;
          const std::size_t n_idx = geo.index(n);
          if (sp.state[n_idx] != detail::NodeState::closed) continue;
          const double cand = sp.g[n_idx] + detail::step_cost(edf[n_idx], d_s, table.length_voxels[id] * res, cw);
          if (cand < best) {
            best = cand;
            best_parent = static_cast<std::int32_t>(n_idx);
          }
        }
        if (best_parent < 0) throw Error(ErrorCode::internal, "popped node has no closed neighbour");
        sp.parent[s_idx] = best_parent;
        sp.g[s_idx] = best;
      }
    }

    if (top.index == goal_idx) {
      run.found = true;
      return run;
    }
    sp.state[s_idx] = detail::NodeState::closed;

    const detail::NeighbourSet chosen = detail::select_neighbours(edf, s, goal, policy);
    const auto par_idx = static_cast<std::size_t>(sp.parent[s_idx]);
    const GridCoord par = geo.coord(par_idx);
    const double g_par = sp.g[par_idx];
    const double d_par = edf[par_idx];
    for (int m = 0; m < chosen.count; ++m) {
      const GridCoord n = s + table.offsets[chosen.ids[m]];
      if (!geo.contains(n)) continue;
      const std::size_t n_idx = geo.index(n);
      if (occ.occupied(n_idx) || sp.state[n_idx] == detail::NodeState::closed) continue;

      // UpdateVertex / ComputeCost, path through parent(s)
      const double g_old = sp.g[n_idx];
      const double cand = g_par + detail::step_cost(d_par, edf[n_idx], geo.center_distance(par, n), cw);
      if (cand < sp.g[n_idx]) {
        sp.parent[n_idx] = static_cast<std::int32_t>(par_idx);
        sp.g[n_idx] = cand;
      }
      if (sp.g[n_idx] < g_old) {
        sp.state[n_idx] = detail::NodeState::open;
        open.push({sp.g[n_idx] + heuristic(geo, n, goal, cfg.heuristic_weight), sp.g[n_idx],
                   static_cast<std::int32_t>(n_idx)});
      }
    }
  }
  return run;
}

PathResult finish(const EdfGrid& edf, double cost_weight, const LazyThetaRun& run, const GridCoord& goal) {
  const GridGeometry& geo = edf.geometry();
  PathResult result;
  result.explored_nodes = run.explored;
  if (run.found) {
    result.status = PlanStatus::found;
    result.waypoints = reconstruct_path(geo, run.space.parent, goal);
    result.total_cost = path_cost(edf, result.waypoints, cost_weight);
  }
  return result;
}

}  // namespace

PathResult plan_lt_full(const OccupancyGrid& occ, const EdfGrid& edf, const PlannerConfig& cfg,
                        const GridCoord& start, const GridCoord& goal) {
  detail::require_plannable(occ, edf, cfg, start, goal);
  const detail::Stopwatch clock;
  PathResult result =
      finish(edf, cfg.cost_weight, lazy_theta(occ, edf, cfg, start, goal, NeighbourPolicy::full26()), goal);
  result.wall_time_s = clock.seconds();
  return result;
}

PathResult plan_fs(const OccupancyGrid& occ, const EdfGrid& edf, const PlannerConfig& cfg,
                   const GridCoord& start, const GridCoord& goal) {
  detail::require_plannable(occ, edf, cfg, start, goal);
  const detail::Stopwatch clock;
  PathResult result = finish(edf, cfg.cost_weight, lazy_theta(occ, edf, cfg, start, goal, cfg.neighbours), goal);
  if (!result.found()) {
    const std::size_t first_explored = result.explored_nodes;
    result = finish(edf, cfg.cost_weight, lazy_theta(occ, edf, cfg, start, goal, cfg.fallback), goal);
    result.explored_nodes += first_explored;
    result.fallback_used = true;
  }
  result.wall_time_s = clock.seconds();
  return result;
}

}  // namespace fsp
