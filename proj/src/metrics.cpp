#include "fsp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fsp {

std::vector<WorldPoint> to_world(const GridGeometry& geometry, const std::vector<GridCoord>& waypoints) {
  std::vector<WorldPoint> out;
  out.reserve(waypoints.size());
  for (const GridCoord& c : waypoints) out.push_back(geometry.center(c));
  return out;
}

double path_length(const std::vector<WorldPoint>& path) {
  double total = 0.0;
  for (std::size_t n = 1; n < path.size(); ++n) total += distance(path[n - 1], path[n]);
  return total;
}

double mean_angle(const std::vector<WorldPoint>& path) {
  if (path.size() < 3) return 0.0;
  double sum = 0.0;
  for (std::size_t n = 1; n + 1 < path.size(); ++n) {
    const WorldPoint in = path[n] - path[n - 1];
    const WorldPoint out = path[n + 1] - path[n];
    const double len = norm(in) * norm(out);
    if (!(len > 0.0)) throw Error(ErrorCode::zero_length_segment, "path repeats a waypoint");
    const double c = std::clamp(dot(in, out) / len, -1.0, 1.0);
    sum += std::acos(c) * 180.0 / std::numbers::pi;
  }
  return sum / static_cast<double>(path.size() - 2);
}

double mean_clearance(const EdfGrid& edf, const std::vector<GridCoord>& waypoints) {
  const GridGeometry& geo = edf.geometry();
  if (waypoints.empty()) return 0.0;
  for (const GridCoord& c : waypoints) {
    if (!geo.contains(c)) throw Error(ErrorCode::out_of_bounds, "waypoint outside lattice");
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t n = 1; n < waypoints.size(); ++n) {
    const WorldPoint a = geo.center(waypoints[n - 1]);
    const WorldPoint b = geo.center(waypoints[n]);
    const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(distance(a, b) / geo.resolution())));
    // Samples at t = m/steps for m < steps; the segment end is the next
    // segment's start (or the final sample below).
    for (std::size_t m = 0; m < steps; ++m) {
      const double t = static_cast<double>(m) / static_cast<double>(steps);
      sum += edf.unchecked(geo.nearest_voxel(a + (b - a) * t));
      ++count;
    }
  }
  sum += edf.unchecked(waypoints.back());
  ++count;
  return sum / static_cast<double>(count);
}

PathMetrics measure(const EdfGrid& edf, const PathResult& result) {
  PathMetrics m;
  m.explored = result.explored_nodes;
  m.time = result.wall_time_s;
  if (!result.found()) return m;
  const auto world = to_world(edf.geometry(), result.waypoints);
  m.length = path_length(world);
  m.mean_angle = mean_angle(world);
  m.mean_clearance = mean_clearance(edf, result.waypoints);
  return m;
}

}  // namespace fsp
