#pragma once

// Shared machinery for the planners: offset tables, dense per-node state and
// the open list. Not installed.

#include <array>
#include <chrono>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "fsp/search.hpp"

namespace fsp::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct OffsetTable {
  std::array<GridCoord, 26> offsets;
  std::array<double, 26> length_voxels;
  std::array<WorldPoint, 26> unit;
};

const OffsetTable& offset_table();

/// Offset ids (into neighbour_offsets()) expanded from one node.
struct NeighbourSet {
  std::array<std::uint8_t, 26> ids{};
  int count = 0;
};

NeighbourSet select_neighbours(const EdfGrid& edf, const GridCoord& s, const GridCoord& goal,
                               const NeighbourPolicy& policy);

inline double step_cost(double d_a, double d_b, double length, double cost_weight) {
  return length + cost_weight / segment_integral(d_a, d_b, length);
}

enum class NodeState : std::uint8_t { unseen, open, closed };

struct SearchSpace {
  std::vector<double> g;
  std::vector<std::int32_t> parent;
  std::vector<NodeState> state;

  explicit SearchSpace(std::size_t n) : g(n, kInf), parent(n, -1), state(n, NodeState::unseen) {}
};

struct OpenEntry {
  double f;
  double g;
  std::int32_t index;
};

/// Min-f first; ties prefer larger g, then the lexicographically smaller
/// coordinate (storage order is lexicographic in (i, j, k)).
struct OpenEntryAfter {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.index > b.index;
  }
};

using OpenList = std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenEntryAfter>;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Shared entry checks for all planners.
void require_plannable(const OccupancyGrid& occ, const EdfGrid& edf, const PlannerConfig& cfg,
                       const GridCoord& start, const GridCoord& goal);

}  // namespace fsp::detail
