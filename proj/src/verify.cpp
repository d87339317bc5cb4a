#include "fsp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace fsp {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

GridCoord random_coord(std::mt19937_64& rng, const Dims& d) {
  return {uniform_int(rng, 0, d.nx - 1), uniform_int(rng, 0, d.ny - 1), uniform_int(rng, 0, d.nz - 1)};
}

nlohmann::json coord_json(const GridCoord& c) { return nlohmann::json::array({c.i, c.j, c.k}); }

void record(SuiteResult& r, nlohmann::json counterexample) {
  if (r.failures++ == 0) r.first_counterexample = std::move(counterexample);
}

// Squared distance from the origin to segment [p, q].
double segment_origin_sq(const WorldPoint& p, const WorldPoint& q) {
  const WorldPoint v = q - p;
  const double vv = dot(v, v);
  const double t = vv > 0.0 ? std::clamp(-dot(p, v) / vv, 0.0, 1.0) : 0.0;
  const WorldPoint c = p + v * t;
  return dot(c, c);
}

// Slab test of segment [p, q] against the closed box |x| <= h.
bool segment_hits_box(const WorldPoint& p, const WorldPoint& q, const WorldPoint& h) {
  double t0 = 0.0;
  double t1 = 1.0;
  const double ps[3] = {p.x, p.y, p.z};
  const double vs[3] = {q.x - p.x, q.y - p.y, q.z - p.z};
  const double hs[3] = {h.x, h.y, h.z};
  for (int ax = 0; ax < 3; ++ax) {
    if (vs[ax] == 0.0) {
      if (std::abs(ps[ax]) > hs[ax]) return false;
      continue;
    }
    double a = (-hs[ax] - ps[ax]) / vs[ax];
    double b = (hs[ax] - ps[ax]) / vs[ax];
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
    if (t0 > t1) return false;
  }
  return true;
}

bool inside(const ConvexObstacle& o, const WorldPoint& p) {
  constexpr double kSlack = 1e-12;
  if (o.shape == ConvexObstacle::Shape::sphere) return dot(p, p) <= o.radius * o.radius + kSlack;
  return std::abs(p.x) <= o.half_extents.x + kSlack && std::abs(p.y) <= o.half_extents.y + kSlack &&
         std::abs(p.z) <= o.half_extents.z + kSlack;
}

bool segment_avoids(const ConvexObstacle& o, const WorldPoint& p, const WorldPoint& q) {
  if (o.shape == ConvexObstacle::Shape::sphere) return segment_origin_sq(p, q) > o.radius * o.radius;
  return !segment_hits_box(p, q, o.half_extents);
}

}  // namespace

nlohmann::json SuiteResult::to_json() const {
  return {{"suite", suite},
          {"cases", cases},
          {"failures", failures},
          {"first_counterexample", first_counterexample},
          {"details", details}};
}

std::vector<double> brute_force_squared(const OccupancyGrid& occ) {
  const GridGeometry& geo = occ.geometry();
  std::vector<GridCoord> obstacles;
  for (std::size_t n = 0; n < geo.size(); ++n)
    if (occ.occupied(n)) obstacles.push_back(geo.coord(n));
  if (obstacles.empty()) throw Error(ErrorCode::empty_obstacle_set, "grid has no occupied voxel");

  std::vector<double> out(geo.size());
  for (std::size_t n = 0; n < geo.size(); ++n) {
    const GridCoord c = geo.coord(n);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const GridCoord& o : obstacles) best = std::min(best, squared_norm(c - o));
    out[n] = static_cast<double>(best);
  }
  return out;
}

EdfGrid brute_force_edf(const OccupancyGrid& occ) { return edf_from_squared(occ.geometry(), brute_force_squared(occ)); }

OccupancyGrid random_grid(Dims dims, double resolution, double fill, std::uint64_t seed) {
  OccupancyGrid g(GridGeometry(dims, resolution, {0.0, 0.0, 0.0}));
  std::mt19937_64 rng(seed);
  for (std::size_t n = 0; n < g.geometry().size(); ++n)
    if (uniform01(rng) < fill) g.set(g.geometry().coord(n), true);
  if (g.occupied_count() == 0) g.set(random_coord(rng, dims), true);
  return g;
}

SuiteResult check_edf_exactness(int n_grids, int max_dim, std::uint64_t seed) {
  SuiteResult r;
  r.suite = "edf";
  std::mt19937_64 rng(seed);
  for (int n = 0; n < n_grids; ++n) {
    // Every fourth grid is full size so the upper end is always exercised.
    const Dims dims = n % 4 == 0 ? Dims{max_dim, max_dim, max_dim}
                                 : Dims{uniform_int(rng, 2, max_dim), uniform_int(rng, 2, max_dim),
                                        uniform_int(rng, 2, max_dim)};
    const double fill = 0.001 + 0.099 * uniform01(rng);
    const OccupancyGrid g = random_grid(dims, 1.0, fill, rng());
    const std::vector<double> fast = squared_distance_transform(g);
    const std::vector<double> slow = brute_force_squared(g);
    ++r.cases;
    for (std::size_t v = 0; v < fast.size(); ++v) {
      if (fast[v] != slow[v]) {
        record(r, {{"grid", n},
                   {"dims", {dims.nx, dims.ny, dims.nz}},
                   {"voxel", coord_json(g.geometry().coord(v))},
                   {"transform", fast[v]},
                   {"brute_force", slow[v]}});
        break;
      }
    }
  }
  return r;
}

SuiteResult check_lipschitz(int n_grids, int dim, std::uint64_t seed) {
  SuiteResult r;
  r.suite = "lipschitz";
  std::mt19937_64 rng(seed);
  const auto& offsets = neighbour_offsets();
  for (int n = 0; n < n_grids; ++n) {
    const double fill = 0.0005 + 0.05 * uniform01(rng);
    const OccupancyGrid g = random_grid({dim, dim, dim}, 0.2, fill, rng());
    const EdfGrid edf = compute_edf(g);
    const GridGeometry& geo = g.geometry();
    for (std::size_t v = 0; v < geo.size(); ++v) {
      const GridCoord a = geo.coord(v);
      // Half of the offsets (lexicographically positive) visit each pair once.
      for (std::size_t o = 13; o < offsets.size(); ++o) {
        const GridCoord b = a + offsets[o];
        if (!geo.contains(b)) continue;
        ++r.cases;
        const double lhs = std::abs(edf[v] - edf.unchecked(b));
        const double rhs = geo.center_distance(a, b) + 1e-9;
        if (!(lhs <= rhs)) {
          record(r, {{"grid", n}, {"a", coord_json(a)}, {"b", coord_json(b)}, {"da", edf[v]},
                     {"db", edf.unchecked(b)}});
        }
      }
    }
  }
  return r;
}

OccupancyGrid voxelize(const ConvexObstacle& obstacle, const HhLattice& lattice) {
  const double o = -(lattice.cells / 2 + 0.5) * lattice.resolution;
  OccupancyGrid g(GridGeometry({lattice.cells, lattice.cells, lattice.cells}, lattice.resolution, {o, o, o}));
  for (std::size_t n = 0; n < g.geometry().size(); ++n) {
    const GridCoord c = g.geometry().coord(n);
    if (inside(obstacle, g.geometry().center(c))) g.set(c, true);
  }
  return g;
}

double quadrature_tolerance(double resolution, double length) { return std::sqrt(3.0) * resolution * length; }

SuiteResult check_hh_bounds(const ConvexObstacle& obstacle, int n_segments, std::uint64_t seed,
                            const HhLattice& lattice) {
  SuiteResult r;
  r.suite = obstacle.shape == ConvexObstacle::Shape::sphere ? "hh_sphere" : "hh_box";
  const OccupancyGrid g = voxelize(obstacle, lattice);
  const EdfGrid edf = compute_edf(g);
  const GridGeometry& geo = g.geometry();
  std::mt19937_64 rng(seed);
  constexpr int kReach = 12;

  std::size_t lower_fail = 0, upper_fail = 0, gap_fail = 0, relative_fail = 0;
  double worst_relative_margin = -std::numeric_limits<double>::infinity();
  while (static_cast<int>(r.cases) < n_segments) {
    const GridCoord a = random_coord(rng, geo.dims());
    const GridCoord b = a + GridCoord{uniform_int(rng, -kReach, kReach), uniform_int(rng, -kReach, kReach),
                                      uniform_int(rng, -kReach, kReach)};
    if (a == b || !geo.contains(b) || !g.is_free(a) || !g.is_free(b)) continue;
    if (!segment_avoids(obstacle, geo.center(a), geo.center(b))) continue;
    ++r.cases;

    const SegmentCost sc = segment_O(edf, a, b);
    const double q = segment_O_quadrature(edf, a, b, kQuadratureSamples);
    const double L = geo.center_distance(a, b);
    const double eps = quadrature_tolerance(geo.resolution(), L);
    const double bound = relative_error_bound(edf, a, b);
    const double rel = (sc.upper - q) / sc.upper;
    worst_relative_margin = std::max(worst_relative_margin, rel - bound - eps / sc.upper);

    const bool lower_ok = sc.lower <= q;
    const bool upper_ok = q <= sc.upper + eps;
    // Rounding of value - L^2/2 and its difference: a few ulps of `upper`.
    const bool unclamped = sc.upper - L * L / 2.0 > 0.0;
    const bool gap_ok = !unclamped || std::abs((sc.upper - sc.lower) - L * L / 2.0) <= 8.0 * 0x1p-52 * sc.upper;
    const bool relative_ok = rel <= bound + eps / sc.upper;
    lower_fail += !lower_ok;
    upper_fail += !upper_ok;
    gap_fail += !gap_ok;
    relative_fail += !relative_ok;
    if (!(lower_ok && upper_ok && gap_ok && relative_ok)) {
      record(r, {{"a", coord_json(a)},
                 {"b", coord_json(b)},
                 {"length", L},
                 {"da", edf.unchecked(a)},
                 {"db", edf.unchecked(b)},
                 {"lower", sc.lower},
                 {"upper", sc.upper},
                 {"quadrature", q},
                 {"eps", eps}});
    }
  }
  r.details = {{"lower_failures", lower_fail},
               {"upper_failures", upper_fail},
               {"gap_failures", gap_fail},
               {"relative_failures", relative_fail},
               {"worst_relative_margin", worst_relative_margin},
               {"resolution", geo.resolution()},
               {"samples", kQuadratureSamples}};
  return r;
}

bool TriangleCase::premises_hold() const {
  return P > 0 && C > 0 && N > 0 && std::abs(P - N) < L && std::abs(P - C) < d && std::abs(N - C) < a &&
         L < d + a && L >= a && d >= a;
}

nlohmann::json TriangleCase::to_json() const {
  return {{"P", P}, {"C", C}, {"N", N}, {"L", L}, {"d", d}, {"a", a}, {"R", R()},
          {"S", S()}, {"T", T()}, {"g1", g1()}, {"g2", g2()}};
}

SuiteResult check_triangle_inequality(std::size_t n_cases, std::uint64_t seed) {
  SuiteResult r;
  r.suite = "triangle";
  constexpr int kGrids = 20;
  constexpr int kDim = 24;
  constexpr int kReach = 5;  // parent within this many voxels of the neighbour per axis
  constexpr double kMaxLos = 1.0;
  std::mt19937_64 rng(seed);
  const auto& offsets = neighbour_offsets();
  std::size_t rejected = 0;
  std::size_t backtracking = 0;

  for (int gi = 0; gi < kGrids; ++gi) {
    const std::size_t quota = n_cases / kGrids + (static_cast<std::size_t>(gi) < n_cases % kGrids ? 1 : 0);
    const double fill = 0.005 + 0.08 * uniform01(rng);
    const OccupancyGrid g = random_grid({kDim, kDim, kDim}, 0.2, fill, rng());
    const EdfGrid edf = compute_edf(g);
    const GridGeometry& geo = g.geometry();
    std::size_t done = 0;
    while (done < quota) {
      const GridCoord sc = random_coord(rng, geo.dims());
      const GridCoord sn = sc + offsets[rng() % 26];
      const GridCoord sp = sn + GridCoord{uniform_int(rng, -kReach, kReach), uniform_int(rng, -kReach, kReach),
                                          uniform_int(rng, -kReach, kReach)};
      if (!geo.contains(sn) || !geo.contains(sp) || !g.is_free(sc) || !g.is_free(sn) || !g.is_free(sp) ||
          sp == sc || sp == sn) {
        continue;
      }
      TriangleCase t;
      t.P = edf.unchecked(sp);
      t.C = edf.unchecked(sc);
      t.N = edf.unchecked(sn);
      t.L = geo.center_distance(sp, sn);
      t.d = geo.center_distance(sp, sc);
      t.a = geo.center_distance(sc, sn);
      if (t.L > kMaxLos) continue;
      if (!t.premises_hold()) {
        ++rejected;
        continue;
      }
      ++done;
      ++r.cases;
      if (!(t.g1() < t.g2())) {
        // s_c farther from the parent than s_n: the expansion steps back toward s_p.
        backtracking += t.d > t.L;
        nlohmann::json j = t.to_json();
        j["grid"] = gi;
        j["s_p"] = coord_json(sp);
        j["s_c"] = coord_json(sc);
        j["s_n"] = coord_json(sn);
        record(r, j);
      }
    }
  }
  r.details = {{"rejected_by_premises", rejected},
               {"counterexamples_with_d_above_L", backtracking},
               {"cost_weight", 1.0},
               {"max_los", kMaxLos}};
  return r;
}

SuiteResult probe_triangle_premises(std::size_t n_cases, std::uint64_t seed) {
  SuiteResult r;
  r.suite = "triangle_premises";
  std::mt19937_64 rng(seed);
  const auto& offsets = neighbour_offsets();
  std::size_t with_premises = 0;
  std::size_t broken_with_premises = 0;
  for (std::size_t n = 0; n < n_cases; ++n) {
    // Lattice geometry as in the grid suite, field values drawn freely.
    GridCoord sp, sc{0, 0, 0}, sn;
    do {
      sn = offsets[rng() % 26];
      sp = sn + GridCoord{uniform_int(rng, -5, 5), uniform_int(rng, -5, 5), uniform_int(rng, -5, 5)};
    } while (sp == sc || sp == sn);
    TriangleCase t;
    t.L = std::sqrt(static_cast<double>(squared_norm(sn - sp)));
    t.d = std::sqrt(static_cast<double>(squared_norm(sc - sp)));
    t.a = std::sqrt(static_cast<double>(squared_norm(sn - sc)));
    if (!(t.L < t.d + t.a && t.L >= t.a && t.d >= t.a)) continue;
    t.P = 0.01 + 5.0 * uniform01(rng);
    t.C = 0.01 + 5.0 * uniform01(rng);
    t.N = 0.01 + 5.0 * uniform01(rng);
    ++r.cases;
    const bool premises = t.premises_hold();
    with_premises += premises;
    if (!(t.g1() < t.g2())) {
      broken_with_premises += premises;
      record(r, t.to_json());
    }
  }
  r.details = {{"cases_meeting_premises", with_premises}, {"violations_meeting_premises", broken_with_premises}};
  return r;
}

const int kPlanarOffsets[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};

std::vector<int> choose_neighbours_2d(double d_center, const std::array<double, 8>& d_neighbours, double gx,
                                      double gy, int k) {
  int retreat = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int n = 0; n < 8; ++n) {
    const double len = std::hypot(kPlanarOffsets[n][0], kPlanarOffsets[n][1]);
    const double deriv = (d_center - d_neighbours[n]) / len;
    if (deriv < best) {
      best = deriv;
      retreat = n;
    }
  }
  const double rlen = std::hypot(kPlanarOffsets[retreat][0], kPlanarOffsets[retreat][1]);
  const double glen = std::hypot(gx, gy);
  double ux = kPlanarOffsets[retreat][0] / rlen + (glen > 0 ? gx / glen : 0.0);
  double uy = kPlanarOffsets[retreat][1] / rlen + (glen > 0 ? gy / glen : 0.0);
  const double ulen = std::hypot(ux, uy);
  if (ulen > 1e-12) {
    ux /= ulen;
    uy /= ulen;
  } else if (glen > 0) {
    ux = gx / glen;
    uy = gy / glen;
  }

  std::array<double, 8> score{};
  std::vector<int> order(8);
  for (int n = 0; n < 8; ++n) {
    const double len = std::hypot(kPlanarOffsets[n][0], kPlanarOffsets[n][1]);
    score[n] = (kPlanarOffsets[n][0] * ux + kPlanarOffsets[n][1] * uy) / len;
    order[n] = n;
  }
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return score[x] > score[y]; });
  order.resize(static_cast<std::size_t>(std::clamp(k, 0, 8)));
  return order;
}

std::vector<QualityRow> quality_study_2d(const QualityConfig& cfg) {
  if (!(cfg.step_degrees > 0.0) || std::fmod(360.0, cfg.step_degrees) != 0.0) {
    throw Error(ErrorCode::invalid_argument, "angular step must divide 360 degrees");
  }
  constexpr double kDeg = 3.14159265358979323846 / 180.0;
  if (!(cfg.resolution > 0.0) || !(cfg.cost_weight >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "resolution must be positive and cost weight non-negative");
  }
  const int steps = static_cast<int>(std::lround(360.0 / cfg.step_degrees));
  // c(a,b) in meters is res * (L + cw_voxels / (d L)) with L, d in voxels.
  const double cw_voxels = cfg.cost_weight / (cfg.resolution * cfg.resolution * cfg.resolution);

  // Percentage of (obstacle angle, goal angle) configurations where the
  // selected set meets the three cheapest neighbours.
  auto score = [&](double goal_radius, double los, int k) {
    int hits = 0;
    int total = 0;
    for (int io = 0; io < steps; ++io) {
      const double ox = cfg.obstacle_radius * std::cos(io * cfg.step_degrees * kDeg);
      const double oy = cfg.obstacle_radius * std::sin(io * cfg.step_degrees * kDeg);
      auto field = [&](double x, double y) { return std::hypot(x - ox, y - oy); };
      for (int ig = 0; ig < steps; ++ig) {
        const double gx = ox + goal_radius * std::cos(ig * cfg.step_degrees * kDeg);
        const double gy = oy + goal_radius * std::sin(ig * cfg.step_degrees * kDeg);
        const double glen = std::hypot(gx, gy);
        if (glen < 1e-9) continue;
        const double px = -los * gx / glen;
        const double py = -los * gy / glen;
        const double dp = field(px, py);

        std::array<double, 8> dn{};
        std::array<double, 8> f{};
        for (int n = 0; n < 8; ++n) {
          const double nx = kPlanarOffsets[n][0];
          const double ny = kPlanarOffsets[n][1];
          dn[n] = field(nx, ny);
          const double len = std::hypot(nx - px, ny - py);
          const double o = (dp + dn[n]) / 2.0 * len;
          // A neighbour on top of the parent is the parent itself and never a candidate.
          f[n] = len < 1e-9 ? std::numeric_limits<double>::infinity()
                            : len + cw_voxels / o + std::hypot(gx - nx, gy - ny);
        }
        std::vector<int> cheapest(8);
        for (int n = 0; n < 8; ++n) cheapest[n] = n;
        std::stable_sort(cheapest.begin(), cheapest.end(), [&](int x, int y) { return f[x] < f[y]; });
        cheapest.resize(3);

        const std::vector<int> chosen = choose_neighbours_2d(field(0.0, 0.0), dn, gx, gy, k);
        bool hit = false;
        for (int c : chosen) hit = hit || std::find(cheapest.begin(), cheapest.end(), c) != cheapest.end();
        hits += hit;
        ++total;
      }
    }
    return total > 0 ? 100.0 * hits / total : 0.0;
  };

  std::vector<QualityRow> rows;
  for (double los : cfg.los_values) {
    for (int k : cfg.k_values) {
      QualityRow row;
      row.los = los;
      row.k = k;
      row.score_near = score(cfg.goal_radius_near, los, k);
      row.score_far = score(cfg.goal_radius_far, los, k);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace fsp
