#include "fsp/line_of_sight.hpp"

#include <array>
#include <cstdint>
#include <cstdlib>

namespace fsp {

namespace {

// Walks the voxels crossed by the center-to-center segment. Crossing m on an
// axis with |delta| = n happens at t = (2m + 1) / (2n); comparing two such
// fractions by cross-multiplication keeps every tie exact.
bool walk_clear(const OccupancyGrid& occ, const GridCoord& a, const GridCoord& b) {
  if (occ.occupied(a) || occ.occupied(b)) return false;
  const GridCoord delta = b - a;
  const std::array<std::int64_t, 3> n{std::abs(delta.i), std::abs(delta.j), std::abs(delta.k)};
  const std::array<int, 3> dir{delta.i > 0 ? 1 : -1, delta.j > 0 ? 1 : -1, delta.k > 0 ? 1 : -1};
  std::array<std::int64_t, 3> m{0, 0, 0};
  std::array<int, 3> cur{a.i, a.j, a.k};

  while (true) {
    int first = -1;
    for (int ax = 0; ax < 3; ++ax) {
      if (m[ax] >= n[ax]) continue;
      if (first < 0 || (2 * m[ax] + 1) * n[first] < (2 * m[first] + 1) * n[ax]) first = ax;
    }
    if (first < 0) return true;
    std::array<bool, 3> step{false, false, false};
    for (int ax = 0; ax < 3; ++ax) {
      if (m[ax] < n[ax] && (2 * m[ax] + 1) * n[first] == (2 * m[first] + 1) * n[ax]) step[ax] = true;
    }
    for (int ax = 0; ax < 3; ++ax) {
      if (step[ax]) {
        cur[ax] += dir[ax];
        ++m[ax];
      }
    }
    if (occ.occupied(GridCoord{cur[0], cur[1], cur[2]})) return false;
  }
}

}  // namespace

const char* to_string(Visibility v) {
  switch (v) {
    case Visibility::visible: return "visible";
    case Visibility::blocked: return "blocked";
    case Visibility::too_far: return "too_far";
  }
  return "unknown";
}

Visibility line_of_sight(const OccupancyGrid& occ, const GridCoord& a, const GridCoord& b, double max_los) {
  if (!occ.contains(a) || !occ.contains(b)) throw Error(ErrorCode::out_of_bounds, "line of sight outside lattice");
  if (occ.geometry().center_distance(a, b) > max_los) return Visibility::too_far;
  return walk_clear(occ, a, b) ? Visibility::visible : Visibility::blocked;
}

bool segment_clear(const OccupancyGrid& occ, const GridCoord& a, const GridCoord& b) {
  if (!occ.contains(a) || !occ.contains(b)) throw Error(ErrorCode::out_of_bounds, "segment outside lattice");
  return walk_clear(occ, a, b);
}

}  // namespace fsp
