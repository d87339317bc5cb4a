#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fsp/edf.hpp"
#include "fsp/grid.hpp"

namespace fsp {

// `.vxm` layout (little-endian):
//   "VXM1" | u32 nx, ny, nz | f64 resolution | f64 origin x, y, z |
//   repeated (u32 run length, u8 value) covering the cells in storage order.
// Runs alternate value; the first run may have value 1.
std::vector<std::uint8_t> encode_vxm(const OccupancyGrid& grid);
OccupancyGrid decode_vxm(const std::vector<std::uint8_t>& bytes);
void write_vxm(const std::filesystem::path& path, const OccupancyGrid& grid);
OccupancyGrid read_vxm(const std::filesystem::path& path);

// `.edf` layout (little-endian):
//   "EDF1" | u32 nx, ny, nz | f64 resolution | f64 origin x, y, z | f32 distance per cell.
std::vector<std::uint8_t> encode_edf(const EdfGrid& edf);
EdfGrid decode_edf(const std::vector<std::uint8_t>& bytes);
void write_edf(const std::filesystem::path& path, const EdfGrid& edf);
EdfGrid read_edf(const std::filesystem::path& path);

/// ASCII point cloud, one "x y z" triple per line; blank lines and lines
/// starting with '#' are skipped. The lattice is the bounding box of the
/// points at `resolution`, grown by `padding` free voxels on every side.
OccupancyGrid load_pointcloud_xyz(const std::filesystem::path& path, double resolution, int padding);
OccupancyGrid load_pointcloud_xyz(std::istream& in, double resolution, int padding);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

/// 64-bit FNV-1a of a byte buffer, as 16 lowercase hex digits.
std::string content_hash(const std::vector<std::uint8_t>& bytes);

}  // namespace fsp
