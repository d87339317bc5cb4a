#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "search_internal.hpp"

namespace fsp {

namespace detail {

const OffsetTable& offset_table() {
  static const OffsetTable table = [] {
    OffsetTable t{};
    t.offsets = neighbour_offsets();
    for (std::size_t n = 0; n < 26; ++n) {
      const GridCoord& o = t.offsets[n];
      t.length_voxels[n] = std::sqrt(static_cast<double>(squared_norm(o)));
      t.unit[n] = WorldPoint{double(o.i), double(o.j), double(o.k)} * (1.0 / t.length_voxels[n]);
    }
    return t;
  }();
  return table;
}

void require_plannable(const OccupancyGrid& occ, const EdfGrid& edf, const PlannerConfig& cfg,
                       const GridCoord& start, const GridCoord& goal) {
  if (!(occ.geometry() == edf.geometry())) {
    throw Error(ErrorCode::invalid_argument, "occupancy and distance grids differ in geometry");
  }
  cfg.validate(occ.resolution());
  if (!occ.contains(start) || !occ.contains(goal)) {
    throw Error(ErrorCode::out_of_bounds, "start or goal outside lattice");
  }
  if (occ.occupied(start) || occ.occupied(goal)) {
    throw Error(ErrorCode::endpoint_occupied, "start or goal is an occupied voxel");
  }
}

}  // namespace detail

bool is_allowed_neighbour_count(int k) {
  for (int allowed : kAllowedNeighbourCounts)
    if (k == allowed) return true;
  return false;
}

NeighbourPolicy NeighbourPolicy::fixed(int k) {
  if (!is_allowed_neighbour_count(k)) {
    throw Error(ErrorCode::invalid_argument, "neighbour count " + std::to_string(k) +
                                                 " is not one of 9, 10, 11, 13, 15, 17");
  }
  return {Mode::fixed, k, k};
}

NeighbourPolicy NeighbourPolicy::adaptive(int k_near, int k_far) {
  if (!is_allowed_neighbour_count(k_near) || !is_allowed_neighbour_count(k_far) || k_near >= k_far) {
    throw Error(ErrorCode::invalid_argument, "adaptive neighbour counts must be allowed values with near < far");
  }
  return {Mode::adaptive, k_near, k_far};
}

NeighbourPolicy NeighbourPolicy::parse(const std::string& text) {
  if (text == "full" || text == "26" || text == "all") return full26();
  auto parse_int = [&text](std::string_view part) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
      throw Error(ErrorCode::invalid_argument, "bad neighbour policy '" + text + "'");
    }
    return value;
  };
  const std::string_view view(text);
  const auto dash = view.find('-');
  if (dash == std::string_view::npos) return fixed(parse_int(view));
  return adaptive(parse_int(view.substr(0, dash)), parse_int(view.substr(dash + 1)));
}

std::string NeighbourPolicy::label() const {
  switch (mode) {
    case Mode::full26: return "full";
    case Mode::fixed: return std::to_string(k_near);
    case Mode::adaptive: return std::to_string(k_near) + "-" + std::to_string(k_far);
  }
  return "?";
}

void PlannerConfig::validate(double resolution) const {
  if (!(cost_weight >= 0.0) || !std::isfinite(cost_weight)) {
    throw Error(ErrorCode::invalid_argument, "cost weight must be finite and >= 0");
  }
  if (!(max_los >= resolution)) throw Error(ErrorCode::invalid_argument, "max line of sight must be >= resolution");
  if (!(heuristic_weight >= 1.0) || !std::isfinite(heuristic_weight)) {
    throw Error(ErrorCode::invalid_argument, "heuristic weight must be finite and >= 1");
  }
  if (!(fallback == NeighbourPolicy::full26() || fallback == NeighbourPolicy::fixed(17))) {
    throw Error(ErrorCode::invalid_argument, "fallback policy must be full or 17");
  }
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::astar: return "astar";
    case Algorithm::lt_full: return "lt_full";
    case Algorithm::fs: return "fs";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "astar") return Algorithm::astar;
  if (name == "lt_full" || name == "lt") return Algorithm::lt_full;
  if (name == "fs") return Algorithm::fs;
  return std::nullopt;
}

double edge_cost(const EdfGrid& edf, const GridCoord& a, const GridCoord& b, double cost_weight) {
  const auto& g = edf.geometry();
  if (!g.contains(a) || !g.contains(b)) throw Error(ErrorCode::out_of_bounds, "edge endpoint outside lattice");
  if (a == b) throw Error(ErrorCode::zero_length_segment, "edge endpoints coincide");
  const double d_a = edf.unchecked(a);
  const double d_b = edf.unchecked(b);
  if (d_a <= 0.0 || d_b <= 0.0) throw Error(ErrorCode::endpoint_occupied, "edge endpoint has zero clearance");
  return detail::step_cost(d_a, d_b, g.center_distance(a, b), cost_weight);
}

double path_cost(const EdfGrid& edf, const std::vector<GridCoord>& waypoints, double cost_weight) {
  std::vector<double> edges;
  edges.reserve(waypoints.size());
  for (std::size_t n = 1; n < waypoints.size(); ++n)
    edges.push_back(edge_cost(edf, waypoints[n - 1], waypoints[n], cost_weight));
  std::sort(edges.begin(), edges.end());
  double total = 0.0;
  for (double e : edges) total += e;
  return total;
}

double heuristic(const GridGeometry& geometry, const GridCoord& a, const GridCoord& goal, double heuristic_weight) {
  return heuristic_weight * geometry.center_distance(a, goal);
}

std::vector<GridCoord> reconstruct_path(const GridGeometry& geometry, const std::vector<std::int32_t>& parent,
                                        const GridCoord& goal) {
  if (!geometry.contains(goal)) throw Error(ErrorCode::out_of_bounds, "goal outside lattice");
  std::vector<GridCoord> path;
  auto cur = static_cast<std::int32_t>(geometry.index(goal));
  for (std::size_t steps = 0; steps <= parent.size(); ++steps) {
    path.push_back(geometry.coord(static_cast<std::size_t>(cur)));
    const std::int32_t p = parent[static_cast<std::size_t>(cur)];
    if (p < 0) throw Error(ErrorCode::internal, "broken parent chain");
    if (p == cur) {
      std::reverse(path.begin(), path.end());
      return path;
    }
    cur = p;
  }
  throw Error(ErrorCode::internal, "cyclic parent chain");
}

PathResult plan(Algorithm algorithm, const OccupancyGrid& occ, const EdfGrid& edf, const PlannerConfig& cfg,
                const GridCoord& start, const GridCoord& goal) {
  switch (algorithm) {
    case Algorithm::astar: return plan_astar(occ, edf, cfg, start, goal);
    case Algorithm::lt_full: return plan_lt_full(occ, edf, cfg, start, goal);
    case Algorithm::fs: return plan_fs(occ, edf, cfg, start, goal);
  }
  throw Error(ErrorCode::invalid_argument, "unknown algorithm");
}

}  // namespace fsp
