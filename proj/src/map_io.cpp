#include "fsp/map_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

namespace fsp {

namespace {

static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");

class ByteWriter {
 public:
  explicit ByteWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  template <typename T>
  void put(T value) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(&value);
    out_.insert(out_.end(), p, p + sizeof(T));
  }
  void put_magic(const char* magic) { out_.insert(out_.end(), magic, magic + 4); }

 private:
  std::vector<std::uint8_t>& out_;
};

class ByteReader {
 public:
  ByteReader(const std::vector<std::uint8_t>& in, const char* what) : in_(in), what_(what) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T value;
    std::memcpy(&value, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }
  void expect_magic(const char* magic) {
    need(4);
    if (std::memcmp(in_.data() + pos_, magic, 4) != 0) {
      throw Error(ErrorCode::format_error, std::string(what_) + ": bad magic, expected " + magic);
    }
    pos_ += 4;
  }
  bool done() const { return pos_ == in_.size(); }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw Error(ErrorCode::format_error, std::string(what_) + ": truncated");
  }

  const std::vector<std::uint8_t>& in_;
  const char* what_;
  std::size_t pos_ = 0;
};

void put_geometry(ByteWriter& w, const GridGeometry& g) {
  w.put(static_cast<std::uint32_t>(g.dims().nx));
  w.put(static_cast<std::uint32_t>(g.dims().ny));
  w.put(static_cast<std::uint32_t>(g.dims().nz));
  w.put(g.resolution());
  w.put(g.origin().x);
  w.put(g.origin().y);
  w.put(g.origin().z);
}

GridGeometry get_geometry(ByteReader& r, const char* what) {
  const auto nx = r.get<std::uint32_t>();
  const auto ny = r.get<std::uint32_t>();
  const auto nz = r.get<std::uint32_t>();
  constexpr auto kMaxAxis = static_cast<std::uint32_t>(std::numeric_limits<int>::max());
  if (nx == 0 || ny == 0 || nz == 0 || nx > kMaxAxis || ny > kMaxAxis || nz > kMaxAxis) {
    throw Error(ErrorCode::format_error, std::string(what) + ": invalid dimensions");
  }
  const auto res = r.get<double>();
  WorldPoint origin;
  origin.x = r.get<double>();
  origin.y = r.get<double>();
  origin.z = r.get<double>();
  try {
    return GridGeometry({static_cast<int>(nx), static_cast<int>(ny), static_cast<int>(nz)}, res, origin);
  } catch (const Error& e) {
    throw Error(ErrorCode::format_error, std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::vector<std::uint8_t> encode_vxm(const OccupancyGrid& grid) {
  std::vector<std::uint8_t> out;
  ByteWriter w(out);
  w.put_magic("VXM1");
  put_geometry(w, grid.geometry());
  const auto& cells = grid.cells();
  std::size_t n = 0;
  while (n < cells.size()) {
    const std::uint8_t value = cells[n];
    std::size_t run = 0;
    while (n < cells.size() && cells[n] == value && run < std::numeric_limits<std::uint32_t>::max()) {
      ++n;
      ++run;
    }
    w.put(static_cast<std::uint32_t>(run));
    w.put(value);
  }
  return out;
}

OccupancyGrid decode_vxm(const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes, "vxm");
  r.expect_magic("VXM1");
  const GridGeometry g = get_geometry(r, "vxm");
  std::vector<std::uint8_t> cells;
  cells.reserve(g.size());
  while (!r.done()) {
    const auto run = r.get<std::uint32_t>();
    const auto value = r.get<std::uint8_t>();
    if (value > 1) throw Error(ErrorCode::format_error, "vxm: run value must be 0 or 1");
    if (run > g.size() - cells.size()) throw Error(ErrorCode::format_error, "vxm: runs exceed lattice size");
    cells.insert(cells.end(), run, value);
  }
  if (cells.size() != g.size()) throw Error(ErrorCode::format_error, "vxm: runs do not cover the lattice");
  return OccupancyGrid(g, std::move(cells));
}

std::vector<std::uint8_t> encode_edf(const EdfGrid& edf) {
  std::vector<std::uint8_t> out;
  out.reserve(44 + 4 * edf.values().size());
  ByteWriter w(out);
  w.put_magic("EDF1");
  put_geometry(w, edf.geometry());
  for (double v : edf.values()) w.put(static_cast<float>(v));
  return out;
}

EdfGrid decode_edf(const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes, "edf");
  r.expect_magic("EDF1");
  const GridGeometry g = get_geometry(r, "edf");
  if (r.remaining() != 4 * g.size()) throw Error(ErrorCode::format_error, "edf: payload size mismatch");
  std::vector<double> dist(g.size());
  for (auto& d : dist) {
    d = r.get<float>();
    if (!(d >= 0.0)) throw Error(ErrorCode::format_error, "edf: negative or NaN distance");
  }
  return EdfGrid(g, std::move(dist));
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::io_error, "read failed: " + path.string());
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io_error, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::io_error, "write failed: " + path.string());
}

void write_vxm(const std::filesystem::path& path, const OccupancyGrid& grid) {
  write_file_bytes(path, encode_vxm(grid));
}

OccupancyGrid read_vxm(const std::filesystem::path& path) { return decode_vxm(read_file_bytes(path)); }

void write_edf(const std::filesystem::path& path, const EdfGrid& edf) { write_file_bytes(path, encode_edf(edf)); }

EdfGrid read_edf(const std::filesystem::path& path) { return decode_edf(read_file_bytes(path)); }

OccupancyGrid load_pointcloud_xyz(const std::filesystem::path& path, double resolution, int padding) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  return load_pointcloud_xyz(in, resolution, padding);
}

OccupancyGrid load_pointcloud_xyz(std::istream& in, double resolution, int padding) {
  if (!(resolution > 0.0)) throw Error(ErrorCode::invalid_argument, "resolution must be positive");
  if (padding < 0) throw Error(ErrorCode::invalid_argument, "padding must be non-negative");

  std::vector<WorldPoint> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    WorldPoint p;
    std::string extra;
    if (!(fields >> p.x >> p.y >> p.z)) throw ParseError(line_no, "expected three numbers: '" + line + "'");
    if (fields >> extra) throw ParseError(line_no, "trailing data: '" + line + "'");
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw ParseError(line_no, "non-finite coordinate");
    }
    points.push_back(p);
  }
  if (points.empty()) throw Error(ErrorCode::parse_error, "point cloud is empty");

  WorldPoint lo = points.front();
  WorldPoint hi = points.front();
  for (const auto& p : points) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  // The lattice origin sits `padding` voxels below the minimum corner; the
  // extent covers every point's voxel plus `padding` voxels above.
  const WorldPoint origin{lo.x - padding * resolution, lo.y - padding * resolution, lo.z - padding * resolution};
  auto axis_cells = [&](double l, double h) {
    return static_cast<int>(std::floor((h - l) / resolution)) + 1 + 2 * padding;
  };
  const Dims dims{axis_cells(lo.x, hi.x), axis_cells(lo.y, hi.y), axis_cells(lo.z, hi.z)};
  OccupancyGrid grid(GridGeometry(dims, resolution, origin));
  for (const auto& p : points) {
    // Floating error can push a point on the upper face one cell out; clamp.
    grid.set(grid.geometry().nearest_voxel(p), true);
  }
  return grid;
}

std::string content_hash(const std::vector<std::uint8_t>& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int n = 15; n >= 0; --n) {
    out[n] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace fsp
