#include "fsp/edf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct EnvelopeScratch {
  std::vector<double> line;
  std::vector<int> sites;
  std::vector<double> bounds;

  explicit EnvelopeScratch(int n) : line(n), sites(n), bounds(n + 1) {}
};

// Lower envelope of parabolas (Felzenszwalb-Huttenlocher) over one strided
// line, in place. Infinite entries contribute no parabola, so an all-infinite
// line stays infinite. All inputs are integers, hence every envelope value is
// exact in double precision.
void envelope_1d(double* data, std::ptrdiff_t stride, int n, EnvelopeScratch& s) {
  for (int q = 0; q < n; ++q) s.line[q] = data[q * stride];

  int k = -1;
  for (int q = 0; q < n; ++q) {
    const double fq = s.line[q];
    if (fq == kInf) continue;
    if (k < 0) {
      k = 0;
      s.sites[0] = q;
      s.bounds[0] = -kInf;
      s.bounds[1] = kInf;
      continue;
    }
    double cut = 0.0;
    while (true) {
      const int p = s.sites[k];
      cut = ((fq + double(q) * q) - (s.line[p] + double(p) * p)) / (2.0 * (q - p));
      if (cut <= s.bounds[k]) {
        --k;
      } else {
        break;
      }
    }
    ++k;
    s.sites[k] = q;
    s.bounds[k] = cut;
    s.bounds[k + 1] = kInf;
  }

  if (k < 0) return;
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (s.bounds[j + 1] < q) ++j;
    const double diff = q - s.sites[j];
    data[q * stride] = diff * diff + s.line[s.sites[j]];
  }
}

std::vector<double> initial_field(const OccupancyGrid& occ) {
  std::vector<double> f(occ.geometry().size(), kInf);
  for (std::size_t n = 0; n < f.size(); ++n)
    if (occ.occupied(n)) f[n] = 0.0;
  return f;
}

// Pass along axis k (stride 1), then j (stride nz), then i (stride ny*nz).
template <bool Parallel>
void separable_passes(std::vector<double>& f, const Dims& d) {
  const std::ptrdiff_t sk = 1;
  const std::ptrdiff_t sj = d.nz;
  const std::ptrdiff_t si = std::ptrdiff_t{d.ny} * d.nz;
  double* base = f.data();

#pragma omp parallel if (Parallel)
  {
    EnvelopeScratch scratch(std::max({d.nx, d.ny, d.nz}));
#pragma omp for collapse(2) schedule(static)
    for (int i = 0; i < d.nx; ++i)
      for (int j = 0; j < d.ny; ++j) envelope_1d(base + i * si + j * sj, sk, d.nz, scratch);
#pragma omp for collapse(2) schedule(static)
    for (int i = 0; i < d.nx; ++i)
      for (int k = 0; k < d.nz; ++k) envelope_1d(base + i * si + k * sk, sj, d.ny, scratch);
#pragma omp for collapse(2) schedule(static)
    for (int j = 0; j < d.ny; ++j)
      for (int k = 0; k < d.nz; ++k) envelope_1d(base + j * sj + k * sk, si, d.nx, scratch);
  }
}

void require_obstacles(const OccupancyGrid& occ) {
  if (occ.occupied_count() == 0) {
    throw Error(ErrorCode::empty_obstacle_set, "distance field needs at least one occupied voxel");
  }
}

void require_segment(const EdfGrid& edf, const GridCoord& a, const GridCoord& b) {
  const auto& g = edf.geometry();
  if (!g.contains(a) || !g.contains(b)) throw Error(ErrorCode::out_of_bounds, "segment endpoint outside lattice");
  if (a == b) throw Error(ErrorCode::zero_length_segment, "segment endpoints coincide");
  if (edf.unchecked(a) <= 0.0 || edf.unchecked(b) <= 0.0) {
    throw Error(ErrorCode::endpoint_occupied, "segment endpoint lies on an obstacle");
  }
}

}  // namespace

EdfGrid::EdfGrid(GridGeometry geometry, std::vector<double> dist)
    : geometry_(geometry), dist_(std::move(dist)) {
  if (dist_.size() != geometry_.size()) {
    throw Error(ErrorCode::invalid_argument, "distance count " + std::to_string(dist_.size()) +
                                                 " does not match lattice size " +
                                                 std::to_string(geometry_.size()));
  }
}

EdfGrid EdfGrid::uniform(const GridGeometry& geometry, double value) {
  return EdfGrid(geometry, std::vector<double>(geometry.size(), value));
}

double EdfGrid::at(const GridCoord& c) const {
  if (!geometry_.contains(c)) throw Error(ErrorCode::out_of_bounds, "coordinate outside distance field");
  return dist_[geometry_.index(c)];
}

EdfGrid EdfGrid::quantized_f32() const {
  std::vector<double> q(dist_.size());
  std::transform(dist_.begin(), dist_.end(), q.begin(),
                 [](double v) { return static_cast<double>(static_cast<float>(v)); });
  return EdfGrid(geometry_, std::move(q));
}

std::vector<double> squared_distance_transform(const OccupancyGrid& occ) {
  auto f = initial_field(occ);
  separable_passes<true>(f, occ.dims());
  return f;
}

std::vector<double> squared_distance_transform_serial(const OccupancyGrid& occ) {
  auto f = initial_field(occ);
  separable_passes<false>(f, occ.dims());
  return f;
}

EdfGrid edf_from_squared(const GridGeometry& geometry, const std::vector<double>& squared) {
  std::vector<double> dist(squared.size());
  const double res = geometry.resolution();
  std::transform(squared.begin(), squared.end(), dist.begin(),
                 [res](double sq) { return std::sqrt(sq) * res; });
  return EdfGrid(geometry, std::move(dist));
}

EdfGrid compute_edf(const OccupancyGrid& occ) {
  require_obstacles(occ);
  return edf_from_squared(occ.geometry(), squared_distance_transform(occ));
}

EdfGrid compute_edf_serial(const OccupancyGrid& occ) {
  require_obstacles(occ);
  return edf_from_squared(occ.geometry(), squared_distance_transform_serial(occ));
}

double edf_at(const EdfGrid& edf, const GridCoord& c) { return edf.at(c); }

double directional_derivative(const EdfGrid& edf, const GridCoord& s, const GridCoord& s_next) {
  if (!edf.geometry().contains(s) || !edf.geometry().contains(s_next)) {
    throw Error(ErrorCode::out_of_bounds, "directional derivative outside lattice");
  }
  if (!is_26_neighbour(s, s_next)) {
    throw Error(ErrorCode::not_a_neighbour, "directional derivative needs a 26-neighbour");
  }
  return (edf.unchecked(s) - edf.unchecked(s_next)) / edf.geometry().center_distance(s, s_next);
}

SegmentCost segment_O(const EdfGrid& edf, const GridCoord& a, const GridCoord& b) {
  require_segment(edf, a, b);
  const double length = edf.geometry().center_distance(a, b);
  SegmentCost cost;
  cost.value = segment_integral(edf.unchecked(a), edf.unchecked(b), length);
  cost.upper = cost.value;
  cost.lower = std::max(0.0, cost.value - length * length / 2.0);
  return cost;
}

double segment_O_quadrature(const EdfGrid& edf, const GridCoord& a, const GridCoord& b, int n_samples) {
  if (n_samples < 2) throw Error(ErrorCode::invalid_argument, "quadrature needs at least two samples");
  require_segment(edf, a, b);
  const auto& g = edf.geometry();
  const WorldPoint pa = g.center(a);
  const WorldPoint step = g.center(b) - pa;
  const double length = g.center_distance(a, b);

  double sum = 0.0;
  for (int n = 0; n < n_samples; ++n) {
    const double t = static_cast<double>(n) / (n_samples - 1);
    const double w = (n == 0 || n == n_samples - 1) ? 0.5 : 1.0;
    sum += w * edf.unchecked(g.nearest_voxel(pa + step * t));
  }
  return sum / (n_samples - 1) * length;
}

double relative_error_bound(const EdfGrid& edf, const GridCoord& a, const GridCoord& b) {
  require_segment(edf, a, b);
  return edf.geometry().center_distance(a, b) / (edf.unchecked(a) + edf.unchecked(b));
}

}  // namespace fsp
