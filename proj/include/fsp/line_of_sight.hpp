#pragma once

#include "fsp/grid.hpp"

namespace fsp {

enum class Visibility { visible, blocked, too_far };

const char* to_string(Visibility v);

/// Bounded line of sight between two voxel centers.
///
/// too_far when the center distance exceeds `max_los` meters. Otherwise every
/// voxel whose interior the segment crosses is visited with exact integer
/// parametric stepping; where the segment passes exactly through a voxel edge
/// or corner all crossed axes advance together, so voxels only touched at that
/// edge or corner are not visited. The result is symmetric in (a, b).
Visibility line_of_sight(const OccupancyGrid& occ, const GridCoord& a, const GridCoord& b, double max_los);

/// Unbounded variant: true iff no crossed voxel is occupied.
bool segment_clear(const OccupancyGrid& occ, const GridCoord& a, const GridCoord& b);

}  // namespace fsp
