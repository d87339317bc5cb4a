#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "fsp/line_of_sight.hpp"
#include "oracles.hpp"

using namespace fsp;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST(LineOfSight, FreeStraightLine) {
  const OccupancyGrid g(GridGeometry({10, 3, 3}, 0.2, {0, 0, 0}));
  EXPECT_EQ(line_of_sight(g, {0, 1, 1}, {9, 1, 1}, kInf), Visibility::visible);
  EXPECT_EQ(line_of_sight(g, {0, 1, 1}, {9, 1, 1}, 1.0), Visibility::too_far);
  // 9 voxels at 0.2 m is 1.8 m; exactly at the limit is still visible.
  EXPECT_EQ(line_of_sight(g, {0, 1, 1}, {5, 1, 1}, 1.0), Visibility::visible);
}

TEST(LineOfSight, WallBlocks) {
  OccupancyGrid g(GridGeometry({10, 3, 3}, 1.0, {0, 0, 0}));
  g.set({4, 1, 1}, true);
  EXPECT_EQ(line_of_sight(g, {0, 1, 1}, {9, 1, 1}, kInf), Visibility::blocked);
  EXPECT_EQ(line_of_sight(g, {0, 1, 1}, {4, 1, 1}, kInf), Visibility::blocked);
}

TEST(LineOfSight, TouchingAnEdgeIsNotCrossing) {
  // The diagonal from (0,0) to (1,1) only touches the shared edge of (1,0) and (0,1).
  OccupancyGrid g(GridGeometry({2, 2, 1}, 1.0, {0, 0, 0}));
  g.set({1, 0, 0}, true);
  g.set({0, 1, 0}, true);
  EXPECT_EQ(line_of_sight(g, {0, 0, 0}, {1, 1, 0}, kInf), Visibility::visible);
}

TEST(LineOfSight, OutOfBoundsThrows) {
  const OccupancyGrid g(GridGeometry({2, 2, 2}, 1.0, {0, 0, 0}));
  EXPECT_THROW(line_of_sight(g, {0, 0, 0}, {2, 0, 0}, kInf), Error);
}

TEST(LineOfSight, MatchesIntervalOracleAndIsSymmetric) {
  std::mt19937 rng(17);
  for (unsigned grid = 0; grid < 10; ++grid) {
    const OccupancyGrid g = oracle::random_occupancy({12, 12, 12}, 1.0, 0.08, grid);
    std::uniform_int_distribution<int> u(0, 11);
    for (int n = 0; n < 2000; ++n) {
      const GridCoord a{u(rng), u(rng), u(rng)};
      const GridCoord b{u(rng), u(rng), u(rng)};
      const bool expect = oracle::segment_clear(g, a, b);
      ASSERT_EQ(segment_clear(g, a, b), expect) << "grid " << grid << " case " << n;
      ASSERT_EQ(segment_clear(g, b, a), expect);
    }
  }
}

TEST(LineOfSight, TooFarIgnoresOcclusion) {
  OccupancyGrid g(GridGeometry({6, 1, 1}, 1.0, {0, 0, 0}));
  g.set({3, 0, 0}, true);
  EXPECT_EQ(line_of_sight(g, {0, 0, 0}, {5, 0, 0}, 4.0), Visibility::too_far);
  EXPECT_EQ(line_of_sight(g, {0, 0, 0}, {5, 0, 0}, 5.0), Visibility::blocked);
}
