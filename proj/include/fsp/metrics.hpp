#pragma once

#include <cstddef>
#include <vector>

#include "fsp/edf.hpp"
#include "fsp/grid.hpp"
#include "fsp/search.hpp"

namespace fsp {

struct PathMetrics {
  double length = 0.0;          ///< meters
  std::size_t explored = 0;
  double time = 0.0;            ///< seconds
  double mean_clearance = 0.0;  ///< meters
  double mean_angle = 0.0;      ///< degrees
};

std::vector<WorldPoint> to_world(const GridGeometry& geometry, const std::vector<GridCoord>& waypoints);

/// Sum of segment lengths. Zero for fewer than two points.
double path_length(const std::vector<WorldPoint>& path);

/// Mean heading change at interior waypoints, degrees. Zero for fewer than
/// three points. Throws Error(zero_length_segment) on repeated waypoints.
double mean_angle(const std::vector<WorldPoint>& path);

/// Field average over the polyline resampled every `resolution` meters,
/// segment endpoints included, nearest-voxel lookup.
double mean_clearance(const EdfGrid& edf, const std::vector<GridCoord>& waypoints);

/// Length, angle and clearance of a found path plus the result's counters.
PathMetrics measure(const EdfGrid& edf, const PathResult& result);

}  // namespace fsp
