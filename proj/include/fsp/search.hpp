#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fsp/edf.hpp"
#include "fsp/grid.hpp"

namespace fsp {

/// Neighbour counts accepted for a reduced expansion set.
inline constexpr int kAllowedNeighbourCounts[] = {9, 10, 11, 13, 15, 17};

bool is_allowed_neighbour_count(int k);

/// Which of the 26 neighbours a node expands.
///
/// * full26: every neighbour.
/// * fixed(k): the k offsets best aligned with the blended retreat/goal
///   direction (k = 10 is the best 9 plus the offset opposite the best).
/// * adaptive(near, far): fixed(near) when the retreat direction and the goal
///   direction are less than 90 degrees apart, otherwise fixed(far).
struct NeighbourPolicy {
  enum class Mode { full26, fixed, adaptive };

  Mode mode = Mode::full26;
  int k_near = 26;
  int k_far = 26;

  static NeighbourPolicy full26() { return {}; }
  static NeighbourPolicy fixed(int k);
  static NeighbourPolicy adaptive(int k_near, int k_far);

  /// Accepts "full", "26", "k" and "near-far" forms, e.g. "9", "9-11".
  static NeighbourPolicy parse(const std::string& text);

  /// "full", "9" or "9-11".
  std::string label() const;

  friend bool operator==(const NeighbourPolicy&, const NeighbourPolicy&) = default;
};

struct PlannerConfig {
  double cost_weight = 500.0;  ///< c_w, meters^3
  double max_los = 1.0;        ///< meters
  NeighbourPolicy neighbours = NeighbourPolicy::full26();
  NeighbourPolicy fallback = NeighbourPolicy::fixed(17);
  double heuristic_weight = 1.0;

  /// Throws Error(invalid_argument) on a violated invariant.
  void validate(double resolution) const;
};

enum class PlanStatus { found, no_path };

struct PathResult {
  PlanStatus status = PlanStatus::no_path;
  std::vector<GridCoord> waypoints;
  double total_cost = 0.0;          ///< path_cost of the waypoints
  std::size_t explored_nodes = 0;  ///< nodes popped from the open list, all attempts
  double wall_time_s = 0.0;
  bool fallback_used = false;

  bool found() const { return status == PlanStatus::found; }
};

enum class Algorithm { astar, lt_full, fs };

const char* to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(const std::string& name);

/// |center(b) - center(a)| + c_w / O(a, b), with O the endpoint-average
/// segment integral. c_w = 0 yields the pure Euclidean length.
double edge_cost(const EdfGrid& edf, const GridCoord& a, const GridCoord& b, double cost_weight);

/// Sum of edge_cost over consecutive waypoints, added in ascending order so
/// that two paths made of the same edges give bit-identical totals.
double path_cost(const EdfGrid& edf, const std::vector<GridCoord>& waypoints, double cost_weight);

/// heuristic_weight * |center(goal) - center(a)|.
double heuristic(const GridGeometry& geometry, const GridCoord& a, const GridCoord& goal, double heuristic_weight);

/// Neighbour offsets expanded from `s` under `policy`, ordered by decreasing
/// alignment with the blended direction (full26: lexicographic order).
/// Out-of-lattice neighbours never become the retreat direction.
std::vector<GridCoord> choose_neighbours(const EdfGrid& edf, const GridCoord& s, const GridCoord& goal,
                                         const NeighbourPolicy& policy);

/// Intermediate quantities of choose_neighbours, exposed for inspection.
struct NeighbourDirections {
  GridCoord retreat_offset;  ///< offset with the minimum directional derivative
  WorldPoint retreat_unit;
  WorldPoint goal_unit;
  WorldPoint blended_unit;   ///< û
  GridCoord best_offset;     ///< offset maximizing alignment with û
  bool retreat_toward_goal;  ///< angle(retreat, goal) < 90 degrees
};

NeighbourDirections neighbour_directions(const EdfGrid& edf, const GridCoord& s, const GridCoord& goal);

/// A* on the 26-connected graph with edge_cost and heuristic.
PathResult plan_astar(const OccupancyGrid& occ, const EdfGrid& edf, const PlannerConfig& cfg,
                      const GridCoord& start, const GridCoord& goal);

/// Lazy Theta* with bounded line of sight expanding all 26 neighbours; no fallback.
PathResult plan_lt_full(const OccupancyGrid& occ, const EdfGrid& edf, const PlannerConfig& cfg,
                        const GridCoord& start, const GridCoord& goal);

/// Lazy Theta* with gradient-guided neighbour selection (cfg.neighbours). If
/// the open list empties without reaching the goal, the search is repeated
/// once with cfg.fallback and fallback_used is set.
PathResult plan_fs(const OccupancyGrid& occ, const EdfGrid& edf, const PlannerConfig& cfg,
                   const GridCoord& start, const GridCoord& goal);

PathResult plan(Algorithm algorithm, const OccupancyGrid& occ, const EdfGrid& edf, const PlannerConfig& cfg,
                const GridCoord& start, const GridCoord& goal);

/// Parent-chain walk from `goal` back to the node that is its own parent,
/// returned start-first. `parent[n]` holds a lattice index or -1. Throws
/// Error(internal) on a broken or cyclic chain.
std::vector<GridCoord> reconstruct_path(const GridGeometry& geometry, const std::vector<std::int32_t>& parent,
                                        const GridCoord& goal);

}  // namespace fsp
