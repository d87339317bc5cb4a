#include "fsp/scenario.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace fsp {

namespace {

// Portable bounded draw; std::uniform_int_distribution differs across standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

int jitter(std::mt19937_64& rng, int span) {
  return static_cast<int>(draw(rng, static_cast<std::uint64_t>(2 * span + 1))) - span;
}

void build_h(OccupancyGrid& g, const TemplateParams& p, std::mt19937_64& rng, Scenario& s) {
  const Dims d = g.dims();
  const int t = p.wall_thickness;
  const int top = 3 * d.nz / 4;
  const int x1 = d.nx / 4;
  const int x2 = 3 * d.nx / 4 - t;
  const int y_lo = d.ny / 8;
  const int y_hi = d.ny - d.ny / 8;
  g.fill_box({x1, y_lo, 0}, {x1 + t, y_hi, top}, true);
  g.fill_box({x2, y_lo, 0}, {x2 + t, y_hi, top}, true);

  const int yc = d.ny / 2 - t / 2;
  g.fill_box({x1, yc, 0}, {x2 + t, yc + t, top}, true);

  // Window through the crossbar, kept inside the span between the bars.
  const int inner = x2 - (x1 + t);
  const int w = std::min(p.opening_width, inner);
  const int slack = (inner - w) / 2;
  const int wx = x1 + t + slack + (slack > 0 ? jitter(rng, std::min(2, slack)) : 0);
  const int wz = std::max(1, d.nz / 3 - w / 2 + jitter(rng, 1));
  g.fill_box({wx, yc, wz}, {wx + w, yc + t, wz + w}, false);

  s.start = {d.nx / 2, d.ny / 4, d.nz / 3};
  s.goal = {d.nx / 2, 3 * d.ny / 4, d.nz / 3};
}

void build_inverted_u(OccupancyGrid& g, const TemplateParams& p, std::mt19937_64& rng, Scenario& s) {
  const Dims d = g.dims();
  const int t = p.wall_thickness;
  const int top = 3 * d.nz / 4;
  const int xl = d.nx / 4;
  const int xr = 3 * d.nx / 4;
  const int shift = jitter(rng, 2);
  const int y_lo = d.ny / 4 + shift;
  const int y_hi = 3 * d.ny / 4 + shift;
  g.fill_box({xl, y_lo, 0}, {xl + t, y_hi, top}, true);
  g.fill_box({xr - t, y_lo, 0}, {xr, y_hi, top}, true);
  g.fill_box({xl, y_lo, top - t}, {xr, y_hi, top}, true);

  s.start = {d.nx / 8, d.ny / 2, d.nz / 3};
  s.goal = {d.nx / 2, d.ny / 2, d.nz / 3};
}

// C-shaped cup in plan view: back wall toward the start, two side walls, and
// two short lips that leave a mouth of opening_width facing away from the
// start. Open at the top; the goal sits inside.
void build_near_closed_u(OccupancyGrid& g, const TemplateParams& p, std::mt19937_64& rng, Scenario& s) {
  const Dims d = g.dims();
  const int t = p.wall_thickness;
  const int top = 3 * d.nz / 4;
  const int xb = 3 * d.nx / 8;
  const int xf = 3 * d.nx / 4;
  const int yl = d.ny / 4;
  const int yr = 3 * d.ny / 4;
  g.fill_box({xb, yl, 0}, {xb + t, yr, top}, true);
  g.fill_box({xb, yl, 0}, {xf, yl + t, top}, true);
  g.fill_box({xb, yr - t, 0}, {xf, yr, top}, true);

  const int inner = (yr - t) - (yl + t);
  const int w = std::min(p.opening_width, inner);
  const int slack = (inner - w) / 2;
  const int my = yl + t + slack + (slack > 0 ? jitter(rng, std::min(2, slack)) : 0);
  g.fill_box({xf - t, yl, 0}, {xf, my, top}, true);
  g.fill_box({xf - t, my + w, 0}, {xf, yr, top}, true);

  s.start = {d.nx / 8, d.ny / 2, d.nz / 3};
  s.goal = {(xb + t + xf - t) / 2, d.ny / 2, d.nz / 3};
}

// Successive walls across x, each spanning the whole y-z section and pierced
// by two square windows of twice the opening width at random heights and
// lateral positions, so routes turn, climb and descend between walls.
void build_maze(OccupancyGrid& g, const TemplateParams& p, std::mt19937_64& rng, Scenario& s) {
  const Dims d = g.dims();
  const int t = p.wall_thickness;
  const int w = 2 * p.opening_width;
  constexpr int kWalls = 4;
  const int spacing = d.nx / (kWalls + 1);
  if (spacing < t + 2 || d.ny < w + 2 || d.nz < w + 2) {
    throw Error(ErrorCode::dims_too_small, "maze walls do not fit");
  }
  for (int n = 1; n <= kWalls; ++n) {
    const int x = n * spacing - t / 2;
    g.fill_box({x, 0, 0}, {x + t, d.ny, d.nz}, true);
    for (int m = 0; m < 2; ++m) {
      const int y = 1 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(d.ny - w - 1)));
      const int z = 1 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(d.nz - w - 1)));
      g.fill_box({x, y, z}, {x + t, y + w, z + w}, false);
    }
  }
  s.start = {spacing / 2, d.ny / 4, d.nz / 2};
  s.goal = {d.nx - spacing / 2, 3 * d.ny / 4, d.nz / 2};
}

}  // namespace

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::h: return "H";
    case ScenarioKind::inverted_u: return "inverted_U";
    case ScenarioKind::near_closed_u: return "near_closed_U";
    case ScenarioKind::maze: return "maze";
  }
  return "unknown";
}

std::optional<ScenarioKind> parse_scenario_kind(const std::string& name) {
  if (name == "H" || name == "h" || name == "S1") return ScenarioKind::h;
  if (name == "inverted_U" || name == "inverted_u" || name == "S2") return ScenarioKind::inverted_u;
  if (name == "near_closed_U" || name == "near_closed_u" || name == "S3") return ScenarioKind::near_closed_u;
  if (name == "maze" || name == "S4") return ScenarioKind::maze;
  return std::nullopt;
}

Scenario gen_scenario(ScenarioKind kind, Dims dims, double resolution, std::uint64_t seed, TemplateParams params) {
  if (dims.nx < kMinScenarioDim || dims.ny < kMinScenarioDim || dims.nz < kMinScenarioDim) {
    throw Error(ErrorCode::dims_too_small,
                "scenario dims must be at least " + std::to_string(kMinScenarioDim) + " voxels per axis");
  }
  if (params.wall_thickness < 1 || params.opening_width < 2) {
    throw Error(ErrorCode::invalid_argument, "wall thickness must be >= 1 and opening width >= 2");
  }

  Scenario s;
  s.name = to_string(kind);
  s.grid = OccupancyGrid(GridGeometry(dims, resolution, {0.0, 0.0, 0.0}));
  std::mt19937_64 rng(seed);
  switch (kind) {
    case ScenarioKind::h: build_h(s.grid, params, rng, s); break;
    case ScenarioKind::inverted_u: build_inverted_u(s.grid, params, rng, s); break;
    case ScenarioKind::near_closed_u: build_near_closed_u(s.grid, params, rng, s); break;
    case ScenarioKind::maze: build_maze(s.grid, params, rng, s); break;
  }
  s.min_clearance = std::max(1, params.opening_width / 2) * resolution;

  const EdfGrid edf = compute_edf(s.grid);
  for (const GridCoord& c : {s.start, s.goal}) {
    if (!s.grid.is_free(c) || edf.unchecked(c) < s.min_clearance) {
      throw Error(ErrorCode::dims_too_small, std::string("template does not fit: ") + s.name +
                                                 " endpoint lacks clearance at these dims");
    }
  }
  return s;
}

std::pair<GridCoord, GridCoord> sample_start_goal(const OccupancyGrid& grid, const EdfGrid& edf,
                                                  double min_clearance, std::uint64_t seed,
                                                  const std::optional<SamplingRegions>& regions) {
  if (!(grid.geometry() == edf.geometry())) {
    throw Error(ErrorCode::invalid_argument, "occupancy and distance grids differ in geometry");
  }
  std::vector<std::size_t> starts;
  std::vector<std::size_t> goals;
  const double r2 = regions ? regions->radius_voxels * regions->radius_voxels : 0.0;
  for (std::size_t n = 0; n < grid.geometry().size(); ++n) {
    if (grid.occupied(n) || edf[n] < min_clearance) continue;
    if (!regions) {
      starts.push_back(n);
      continue;
    }
    const GridCoord c = grid.geometry().coord(n);
    if (static_cast<double>(squared_norm(c - regions->start_center)) <= r2) starts.push_back(n);
    if (static_cast<double>(squared_norm(c - regions->goal_center)) <= r2) goals.push_back(n);
  }
  const std::vector<std::size_t>& goal_pool = regions ? goals : starts;
  const bool enough = regions ? (!starts.empty() && !goals.empty() && starts.size() + goals.size() >= 2)
                              : starts.size() >= 2;
  if (!enough) throw Error(ErrorCode::no_valid_pair, "no two free voxels satisfy the clearance");

  std::mt19937_64 rng(seed);
  constexpr int kAttempts = 1000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const std::size_t a = starts[draw(rng, starts.size())];
    const std::size_t b = goal_pool[draw(rng, goal_pool.size())];
    if (a != b) return {grid.geometry().coord(a), grid.geometry().coord(b)};
  }
  throw Error(ErrorCode::no_valid_pair, "could not draw distinct start and goal");
}

}  // namespace fsp
