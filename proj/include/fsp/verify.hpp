#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsp/edf.hpp"
#include "fsp/grid.hpp"

namespace fsp {

/// Outcome of a property suite. `first_counterexample` is null when
/// `failures` is zero.
struct SuiteResult {
  std::string suite;
  std::size_t cases = 0;
  std::size_t failures = 0;
  nlohmann::json first_counterexample;
  nlohmann::json details = nlohmann::json::object();

  bool passed() const { return failures == 0; }
  nlohmann::json to_json() const;
};

/// Exhaustive nearest-occupied scan. Throws Error(empty_obstacle_set).
EdfGrid brute_force_edf(const OccupancyGrid& occ);
std::vector<double> brute_force_squared(const OccupancyGrid& occ);

/// Each voxel occupied with probability `fill`; at least one voxel occupied.
OccupancyGrid random_grid(Dims dims, double resolution, double fill, std::uint64_t seed);

/// compute_edf against brute_force_edf on `n_grids` random grids with every
/// axis in [2, max_dim]. One case per grid; any mismatch is a failure.
SuiteResult check_edf_exactness(int n_grids, int max_dim, std::uint64_t seed);

/// |d(a) - d(b)| <= |center(a) - center(b)| + 1e-9 over all 26-adjacent pairs
/// of `n_grids` random dim^3 grids. One case per pair.
SuiteResult check_lipschitz(int n_grids, int dim, std::uint64_t seed);

/// Convex obstacle centered at the world origin, voxelized by voxel centers.
struct ConvexObstacle {
  enum class Shape { sphere, box };
  Shape shape = Shape::sphere;
  double radius = 1.0;                              ///< sphere
  WorldPoint half_extents{1.0, 0.75, 0.5};          ///< box
};

/// Lattice used by the bound checks: `cells`^3 voxels of `resolution` with a
/// voxel center at the origin.
struct HhLattice {
  int cells = 40;
  double resolution = 0.25;
};

OccupancyGrid voxelize(const ConvexObstacle& obstacle, const HhLattice& lattice = {});

/// Tolerance of the quadrature oracle against a convex field: nearest-voxel
/// sampling and the voxelized obstacle each shift the field by at most
/// sqrt(3)/2 * resolution, so the integral moves by at most sqrt(3) * res * L.
double quadrature_tolerance(double resolution, double length);

inline constexpr int kQuadratureSamples = 1001;

/// For `n_segments` random free segments that avoid the obstacle:
/// lower <= quadrature <= upper + eps, upper - lower = L^2/2 (where the lower
/// bound is not clamped), and (upper - quadrature)/upper <= L/(d(a)+d(b)) + eps/upper.
/// details carries per-check failure counts.
SuiteResult check_hh_bounds(const ConvexObstacle& obstacle, int n_segments, std::uint64_t seed,
                            const HhLattice& lattice = {});

/// Geometry and field values of one triangle-inequality case, c_w = 1.
/// s_p is the parent, s_c the current node, s_n a 26-neighbour of s_c.
struct TriangleCase {
  double P = 0, C = 0, N = 0;  ///< field at s_p, s_c, s_n
  double L = 0;                ///< |s_n - s_p|
  double d = 0;                ///< |s_c - s_p|
  double a = 0;                ///< |s_n - s_c|
  double R() const { return P + N; }
  double S() const { return P + C; }
  double T() const { return C + N; }
  /// Direct parent-to-neighbour cost.
  double g1() const { return L + 2.0 / (R() * L); }
  /// Two-leg cost through the current node.
  double g2() const { return d + 2.0 / (S() * d) + a + 2.0 / (T() * a); }
  bool premises_hold() const;
  nlohmann::json to_json() const;
};

/// Draws `n_cases` premise-satisfying cases from random obstacle grids and
/// requires g1 < g2 for each.
SuiteResult check_triangle_inequality(std::size_t n_cases, std::uint64_t seed);

/// Free-floating field values that may break the Lipschitz premises; counts
/// how often g1 >= g2 then occurs.
SuiteResult probe_triangle_premises(std::size_t n_cases, std::uint64_t seed);

/// Planar neighbour-selection study around a current node at the origin. A
/// point obstacle orbits the node; the goal orbits the obstacle at a small
/// radius (first setup) or a large one (second setup). The parent sits
/// `los` voxels behind the node, away from the goal. Lengths are in voxels;
/// the cost weight is given in meters^3 and converted with `resolution`.
struct QualityConfig {
  double obstacle_radius = 3.0;
  double goal_radius_near = 2.0;
  double goal_radius_far = 6.0;
  double step_degrees = 5.0;
  std::vector<double> los_values{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  double cost_weight = 500.0;  ///< meters^3
  double resolution = 0.2;     ///< meters per voxel
  std::vector<int> k_values{3, 5, 8};
};

struct QualityRow {
  double los = 0.0;
  int k = 0;
  double score_near = 0.0;  ///< percent
  double score_far = 0.0;   ///< percent
  double score_min() const { return score_near < score_far ? score_near : score_far; }
};

std::vector<QualityRow> quality_study_2d(const QualityConfig& cfg);

/// Planar offsets, counter-clockwise from +x: (1,0), (1,1), (0,1), ... (1,-1).
extern const int kPlanarOffsets[8][2];

/// Planar analogue of choose_neighbours: the k offsets best aligned with the
/// blend of the steepest-retreat direction and (gx, gy), ties by index.
/// `d_neighbours[n]` is the field at offset n, `d_center` at the node.
std::vector<int> choose_neighbours_2d(double d_center, const std::array<double, 8>& d_neighbours, double gx,
                                      double gy, int k);

}  // namespace fsp
