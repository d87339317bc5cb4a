#include "fsp/grid.hpp"

#include <algorithm>
#include <string>

namespace fsp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::out_of_bounds: return "out-of-bounds";
    case ErrorCode::dims_too_small: return "dims-too-small";
    case ErrorCode::empty_obstacle_set: return "empty-obstacle-set";
    case ErrorCode::endpoint_occupied: return "endpoint-occupied";
    case ErrorCode::zero_length_segment: return "zero-length-segment";
    case ErrorCode::not_a_neighbour: return "not-a-neighbour";
    case ErrorCode::no_valid_pair: return "no-valid-pair";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::format_error: return "format-error";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

GridGeometry::GridGeometry(Dims dims, double resolution, WorldPoint origin)
    : dims_(dims), resolution_(resolution), origin_(origin) {
  if (dims.nx <= 0 || dims.ny <= 0 || dims.nz <= 0) {
    throw Error(ErrorCode::invalid_argument, "grid dimensions must be positive");
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw Error(ErrorCode::invalid_argument, "resolution must be a positive finite number");
  }
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y) || !std::isfinite(origin.z)) {
    throw Error(ErrorCode::invalid_argument, "origin must be finite");
  }
}

std::optional<GridCoord> GridGeometry::world_to_grid(const WorldPoint& p) const {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) return std::nullopt;
  const double fi = std::floor((p.x - origin_.x) / resolution_);
  const double fj = std::floor((p.y - origin_.y) / resolution_);
  const double fk = std::floor((p.z - origin_.z) / resolution_);
  if (fi < 0 || fj < 0 || fk < 0 || fi >= dims_.nx || fj >= dims_.ny || fk >= dims_.nz) {
    return std::nullopt;
  }
  return GridCoord{static_cast<int>(fi), static_cast<int>(fj), static_cast<int>(fk)};
}

GridCoord GridGeometry::world_to_grid_checked(const WorldPoint& p) const {
  if (auto c = world_to_grid(p)) return *c;
  throw Error(ErrorCode::out_of_bounds, "point outside lattice");
}

GridCoord GridGeometry::nearest_voxel(const WorldPoint& p) const {
  auto clamp_axis = [this](double v, double o, int n) {
    const double f = std::floor((v - o) / resolution_);
    return static_cast<int>(std::clamp(f, 0.0, static_cast<double>(n - 1)));
  };
  return {clamp_axis(p.x, origin_.x, dims_.nx), clamp_axis(p.y, origin_.y, dims_.ny),
          clamp_axis(p.z, origin_.z, dims_.nz)};
}

OccupancyGrid::OccupancyGrid(GridGeometry geometry)
    : geometry_(geometry), cells_(geometry.size(), 0) {}

OccupancyGrid::OccupancyGrid(GridGeometry geometry, std::vector<std::uint8_t> cells)
    : geometry_(geometry), cells_(std::move(cells)) {
  if (cells_.size() != geometry_.size()) {
    throw Error(ErrorCode::invalid_argument,
                "cell count " + std::to_string(cells_.size()) + " does not match lattice size " +
                    std::to_string(geometry_.size()));
  }
  for (auto& c : cells_) c = c != 0 ? 1 : 0;
}

void OccupancyGrid::fill_box(GridCoord lo, GridCoord hi, bool value) {
  const Dims& d = dims();
  lo = {std::max(lo.i, 0), std::max(lo.j, 0), std::max(lo.k, 0)};
  hi = {std::min(hi.i, d.nx), std::min(hi.j, d.ny), std::min(hi.k, d.nz)};
  for (int i = lo.i; i < hi.i; ++i)
    for (int j = lo.j; j < hi.j; ++j)
      for (int k = lo.k; k < hi.k; ++k) set({i, j, k}, value);
}

std::size_t OccupancyGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

const std::array<GridCoord, 26>& neighbour_offsets() {
  static const std::array<GridCoord, 26> offsets = [] {
    std::array<GridCoord, 26> out{};
    std::size_t n = 0;
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj)
        for (int dk = -1; dk <= 1; ++dk)
          if (di != 0 || dj != 0 || dk != 0) out[n++] = {di, dj, dk};
    return out;
  }();
  return offsets;
}

}  // namespace fsp
