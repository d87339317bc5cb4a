#include <cmath>

#include "search_internal.hpp"

namespace fsp {

namespace detail {

namespace {

struct Directions {
  int retreat_id = -1;
  WorldPoint retreat_unit;
  WorldPoint goal_unit;
  WorldPoint blended;
  bool toward_goal = true;
};

WorldPoint unit_or_zero(const WorldPoint& v) {
  const double n = norm(v);
  return n > 0.0 ? v * (1.0 / n) : WorldPoint{};
}

Directions directions(const EdfGrid& edf, const GridCoord& s, const GridCoord& goal) {
  const OffsetTable& t = offset_table();
  const GridGeometry& geo = edf.geometry();
  const double d_s = edf.unchecked(s);
  const double res = geo.resolution();

  Directions out;
  // Steepest retreat: minimum directional derivative, first in lexicographic
  // order on ties. Out-of-lattice neighbours are skipped, which is the same as
  // giving them +inf. NaN (infinite field) never compares less.
  double best = kInf;
  for (int id = 0; id < 26; ++id) {
    const GridCoord n = s + t.offsets[id];
    if (!geo.contains(n)) continue;
    const double deriv = (d_s - edf.unchecked(n)) / (t.length_voxels[id] * res);
    if (deriv < best) {
      best = deriv;
      out.retreat_id = id;
    }
  }
  if (out.retreat_id >= 0) out.retreat_unit = t.unit[out.retreat_id];

  const GridCoord to_goal = goal - s;
  out.goal_unit = unit_or_zero({double(to_goal.i), double(to_goal.j), double(to_goal.k)});

  const WorldPoint sum = out.retreat_unit + out.goal_unit;
  const double sum_norm = norm(sum);
  out.blended = sum_norm > 1e-12 ? sum * (1.0 / sum_norm) : out.goal_unit;
  out.toward_goal = dot(out.retreat_unit, out.goal_unit) > 0.0;
  return out;
}

// Offset ids by decreasing alignment with `u`; ties keep lexicographic order.
std::array<std::uint8_t, 26> rank_by_alignment(const WorldPoint& u) {
  const OffsetTable& t = offset_table();
  std::array<double, 26> score{};
  std::array<std::uint8_t, 26> order{};
  for (int id = 0; id < 26; ++id) {
    score[id] = dot(t.unit[id], u);
    order[id] = static_cast<std::uint8_t>(id);
  }
  for (int a = 1; a < 26; ++a) {
    const std::uint8_t id = order[a];
    int b = a - 1;
    while (b >= 0 && score[order[b]] < score[id]) {
      order[b + 1] = order[b];
      --b;
    }
    order[b + 1] = id;
  }
  return order;
}

NeighbourSet take(const std::array<std::uint8_t, 26>& order, int k) {
  NeighbourSet set;
  if (k == 10) {
    // Best nine plus the neighbour opposite the best candidate.
    const auto opposite = static_cast<std::uint8_t>(25 - order[0]);
    bool seen = false;
    for (int n = 0; n < 9; ++n) {
      set.ids[set.count++] = order[n];
      seen = seen || order[n] == opposite;
    }
    set.ids[set.count++] = seen ? order[9] : opposite;
    return set;
  }
  for (int n = 0; n < k; ++n) set.ids[set.count++] = order[n];
  return set;
}

}  // namespace

NeighbourSet select_neighbours(const EdfGrid& edf, const GridCoord& s, const GridCoord& goal,
                               const NeighbourPolicy& policy) {
  if (policy.mode == NeighbourPolicy::Mode::full26) {
    NeighbourSet all;
    for (int id = 0; id < 26; ++id) all.ids[all.count++] = static_cast<std::uint8_t>(id);
    return all;
  }
  const Directions dir = directions(edf, s, goal);
  const int k = policy.mode == NeighbourPolicy::Mode::fixed || dir.toward_goal ? policy.k_near : policy.k_far;
  return take(rank_by_alignment(dir.blended), k);
}

}  // namespace detail

NeighbourDirections neighbour_directions(const EdfGrid& edf, const GridCoord& s, const GridCoord& goal) {
  if (!edf.geometry().contains(s)) throw Error(ErrorCode::out_of_bounds, "node outside lattice");
  const auto dir = detail::directions(edf, s, goal);
  const auto& t = detail::offset_table();
  NeighbourDirections out;
  out.retreat_offset = dir.retreat_id >= 0 ? t.offsets[dir.retreat_id] : GridCoord{};
  out.retreat_unit = dir.retreat_unit;
  out.goal_unit = dir.goal_unit;
  out.blended_unit = dir.blended;
  out.best_offset = t.offsets[detail::rank_by_alignment(dir.blended)[0]];
  out.retreat_toward_goal = dir.toward_goal;
  return out;
}

std::vector<GridCoord> choose_neighbours(const EdfGrid& edf, const GridCoord& s, const GridCoord& goal,
                                         const NeighbourPolicy& policy) {
  if (!edf.geometry().contains(s)) throw Error(ErrorCode::out_of_bounds, "node outside lattice");
  const auto set = detail::select_neighbours(edf, s, goal, policy);
  const auto& t = detail::offset_table();
  std::vector<GridCoord> out;
  out.reserve(static_cast<std::size_t>(set.count));
  for (int n = 0; n < set.count; ++n) out.push_back(t.offsets[set.ids[n]]);
  return out;
}

}  // namespace fsp
