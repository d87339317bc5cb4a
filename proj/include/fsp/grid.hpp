#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fsp/error.hpp"

namespace fsp {

/// Integer voxel index. Also used for neighbour offsets, where components may be negative.
struct GridCoord {
  int i = 0;
  int j = 0;
  int k = 0;

  friend bool operator==(const GridCoord&, const GridCoord&) = default;
  friend auto operator<=>(const GridCoord&, const GridCoord&) = default;

  GridCoord operator+(const GridCoord& o) const { return {i + o.i, j + o.j, k + o.k}; }
  GridCoord operator-(const GridCoord& o) const { return {i - o.i, j - o.j, k - o.k}; }
  GridCoord operator-() const { return {-i, -j, -k}; }
};

struct WorldPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const WorldPoint&, const WorldPoint&) = default;

  WorldPoint operator+(const WorldPoint& o) const { return {x + o.x, y + o.y, z + o.z}; }
  WorldPoint operator-(const WorldPoint& o) const { return {x - o.x, y - o.y, z - o.z}; }
  WorldPoint operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline double dot(const WorldPoint& a, const WorldPoint& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const WorldPoint& a) { return std::sqrt(dot(a, a)); }
inline double distance(const WorldPoint& a, const WorldPoint& b) { return norm(b - a); }

/// Squared integer length of an index difference.
inline std::int64_t squared_norm(const GridCoord& d) {
  return std::int64_t{d.i} * d.i + std::int64_t{d.j} * d.j + std::int64_t{d.k} * d.k;
}

struct Dims {
  int nx = 0;
  int ny = 0;
  int nz = 0;

  friend bool operator==(const Dims&, const Dims&) = default;

  std::size_t volume() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
  }
};

/// Lattice placement shared by occupancy and distance grids.
///
/// Voxel (i, j, k) spans [origin + index * resolution, origin + (index + 1) * resolution)
/// on each axis and is represented by its center. Storage is row-major in (i, j, k):
/// k varies fastest.
class GridGeometry {
 public:
  GridGeometry() = default;
  GridGeometry(Dims dims, double resolution, WorldPoint origin);

  const Dims& dims() const { return dims_; }
  double resolution() const { return resolution_; }
  const WorldPoint& origin() const { return origin_; }
  std::size_t size() const { return dims_.volume(); }

  bool contains(const GridCoord& c) const {
    return c.i >= 0 && c.j >= 0 && c.k >= 0 && c.i < dims_.nx && c.j < dims_.ny && c.k < dims_.nz;
  }

  std::size_t index(const GridCoord& c) const {
    return (static_cast<std::size_t>(c.i) * dims_.ny + static_cast<std::size_t>(c.j)) * dims_.nz +
           static_cast<std::size_t>(c.k);
  }

  GridCoord coord(std::size_t index) const {
    const auto nz = static_cast<std::size_t>(dims_.nz);
    const auto ny = static_cast<std::size_t>(dims_.ny);
    return {static_cast<int>(index / (ny * nz)), static_cast<int>((index / nz) % ny),
            static_cast<int>(index % nz)};
  }

  WorldPoint center(const GridCoord& c) const {
    return {origin_.x + (c.i + 0.5) * resolution_, origin_.y + (c.j + 0.5) * resolution_,
            origin_.z + (c.k + 0.5) * resolution_};
  }

  /// Voxel containing `p`, or nullopt when `p` lies outside the lattice.
  std::optional<GridCoord> world_to_grid(const WorldPoint& p) const;

  /// Like world_to_grid but throws Error(out_of_bounds).
  GridCoord world_to_grid_checked(const WorldPoint& p) const;

  /// Voxel whose center is nearest to `p`, clamped into the lattice.
  GridCoord nearest_voxel(const WorldPoint& p) const;

  /// Euclidean distance between two voxel centers in meters.
  double center_distance(const GridCoord& a, const GridCoord& b) const {
    return std::sqrt(static_cast<double>(squared_norm(b - a))) * resolution_;
  }

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;

 private:
  Dims dims_{};
  double resolution_ = 1.0;
  WorldPoint origin_{};
};

/// Boolean voxel lattice: the obstacle set. Cells outside the lattice are not
/// part of the map; border voxels are free unless marked.
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  explicit OccupancyGrid(GridGeometry geometry);
  OccupancyGrid(GridGeometry geometry, std::vector<std::uint8_t> cells);

  const GridGeometry& geometry() const { return geometry_; }
  const Dims& dims() const { return geometry_.dims(); }
  double resolution() const { return geometry_.resolution(); }

  bool contains(const GridCoord& c) const { return geometry_.contains(c); }
  bool occupied(const GridCoord& c) const { return cells_[geometry_.index(c)] != 0; }
  bool occupied(std::size_t index) const { return cells_[index] != 0; }
  bool is_free(const GridCoord& c) const { return contains(c) && !occupied(c); }

  void set(const GridCoord& c, bool value) { cells_[geometry_.index(c)] = value ? 1 : 0; }
  /// Marks the half-open index box [lo, hi) clipped to the lattice.
  void fill_box(GridCoord lo, GridCoord hi, bool value);

  std::size_t occupied_count() const;
  const std::vector<std::uint8_t>& cells() const { return cells_; }

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  GridGeometry geometry_{};
  std::vector<std::uint8_t> cells_;
};

/// The 26 neighbour offsets in lexicographic (di, dj, dk) order. Offset p and
/// offset 25 - p are opposite.
const std::array<GridCoord, 26>& neighbour_offsets();

/// Chebyshev distance 1 test.
inline bool is_26_neighbour(const GridCoord& a, const GridCoord& b) {
  const GridCoord d = b - a;
  return d != GridCoord{} && std::abs(d.i) <= 1 && std::abs(d.j) <= 1 && std::abs(d.k) <= 1;
}

}  // namespace fsp
