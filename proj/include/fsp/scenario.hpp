#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "fsp/edf.hpp"
#include "fsp/grid.hpp"

namespace fsp {

/// Procedural analogues of the four indoor test structures: an H (two bars and
/// a crossbar with a window), an inverted U (arch), an almost closed U (C-shaped
/// cup whose narrow mouth faces away from the start) and a maze of successive
/// walls with windows at random heights.
enum class ScenarioKind { h, inverted_u, near_closed_u, maze };

const char* to_string(ScenarioKind kind);
std::optional<ScenarioKind> parse_scenario_kind(const std::string& name);

struct TemplateParams {
  int wall_thickness = 2;  ///< voxels
  int opening_width = 4;   ///< voxels
};

struct Scenario {
  std::string name;
  OccupancyGrid grid;
  GridCoord start;
  GridCoord goal;
  double min_clearance = 0.0;  ///< meters
};

/// Smallest accepted extent on every axis.
inline constexpr int kMinScenarioDim = 16;

/// Deterministic in (kind, dims, resolution, seed, params). The seed drives
/// the maze windows and the window/mouth placement jitter of the other templates.
/// Throws Error(dims_too_small) when any axis is below kMinScenarioDim.
Scenario gen_scenario(ScenarioKind kind, Dims dims, double resolution, std::uint64_t seed,
                      TemplateParams params = {});

/// Restricts sampled endpoints to balls (in voxels) around two centers.
struct SamplingRegions {
  GridCoord start_center;
  GridCoord goal_center;
  double radius_voxels = 0.0;
};

/// Two distinct free voxels with EDF >= min_clearance, drawn deterministically
/// from `seed`. Throws Error(no_valid_pair) when fewer than two candidates exist.
std::pair<GridCoord, GridCoord> sample_start_goal(const OccupancyGrid& grid, const EdfGrid& edf,
                                                  double min_clearance, std::uint64_t seed,
                                                  const std::optional<SamplingRegions>& regions = std::nullopt);

}  // namespace fsp
