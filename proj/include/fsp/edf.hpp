#pragma once

#include <cstddef>
#include <vector>

#include "fsp/grid.hpp"

namespace fsp {

/// Per-voxel distance (meters) from the voxel center to the nearest occupied
/// voxel center. Zero on occupied voxels.
class EdfGrid {
 public:
  EdfGrid() = default;
  EdfGrid(GridGeometry geometry, std::vector<double> dist);

  /// Field with the same value everywhere. Used for obstacle-free maps, where
  /// the distance to the (empty) obstacle set is unbounded.
  static EdfGrid uniform(const GridGeometry& geometry, double value);

  const GridGeometry& geometry() const { return geometry_; }
  double resolution() const { return geometry_.resolution(); }

  /// Stored distance at `c`; throws Error(out_of_bounds).
  double at(const GridCoord& c) const;
  double operator[](std::size_t index) const { return dist_[index]; }
  double unchecked(const GridCoord& c) const { return dist_[geometry_.index(c)]; }

  const std::vector<double>& values() const { return dist_; }

  /// Copy with every value rounded through float, i.e. exactly what a
  /// round trip through the `.edf` cache yields.
  EdfGrid quantized_f32() const;

 private:
  GridGeometry geometry_{};
  std::vector<double> dist_;
};

/// Squared Euclidean distance, in voxel units, from every voxel center to the
/// nearest occupied voxel center; +inf if there is none. Three separable
/// lower-envelope passes. Values are exact integers.
std::vector<double> squared_distance_transform(const OccupancyGrid& occ);
std::vector<double> squared_distance_transform_serial(const OccupancyGrid& occ);

/// Exact EDF. OpenMP-parallel over independent scan lines; bit-identical to
/// compute_edf_serial. Throws Error(empty_obstacle_set) when nothing is occupied.
EdfGrid compute_edf(const OccupancyGrid& occ);
EdfGrid compute_edf_serial(const OccupancyGrid& occ);

/// Converts exact squared voxel distances into a field in meters.
EdfGrid edf_from_squared(const GridGeometry& geometry, const std::vector<double>& squared);

double edf_at(const EdfGrid& edf, const GridCoord& c);

/// (EDF(s) - EDF(s')) / |center(s) - center(s')| for a 26-neighbour s'.
/// Positive means the step approaches an obstacle.
double directional_derivative(const EdfGrid& edf, const GridCoord& s, const GridCoord& s_next);

/// Approximate integral of the distance field along a segment with its bounds
/// for a convex obstacle set. Units: meters squared.
struct SegmentCost {
  double value = 0.0;  ///< endpoint-average approximation, equal to the upper bound
  double lower = 0.0;  ///< value - L^2/2, clamped at zero
  double upper = 0.0;
};

/// Endpoint-average segment integral. Hot-path form shared by every planner so
/// that all cost evaluations are bit-identical.
inline double segment_integral(double d_a, double d_b, double length) {
  return ((d_a + d_b) / 2.0) * length;
}

SegmentCost segment_O(const EdfGrid& edf, const GridCoord& a, const GridCoord& b);

/// Composite trapezoid quadrature of d(l(t)) * L over t in [0, 1] with
/// `n_samples` equally spaced points, sampling the field at the nearest voxel.
double segment_O_quadrature(const EdfGrid& edf, const GridCoord& a, const GridCoord& b, int n_samples);

/// L / (d(a) + d(b)): relative gap between the segment-cost bounds.
double relative_error_bound(const EdfGrid& edf, const GridCoord& a, const GridCoord& b);

}  // namespace fsp
