#include <gtest/gtest.h>

#include "fsp/grid.hpp"

using namespace fsp;

TEST(Grid, WorldToGridFloors) {
  const GridGeometry g({4, 4, 4}, 1.0, {0, 0, 0});
  EXPECT_EQ(g.world_to_grid({2.4, 0.0, 0.0}), (GridCoord{2, 0, 0}));
  EXPECT_EQ(g.world_to_grid({0.0, 0.0, 0.0}), (GridCoord{0, 0, 0}));
  EXPECT_FALSE(g.world_to_grid({-0.1, 0.0, 0.0}).has_value());
  EXPECT_FALSE(g.world_to_grid({4.0, 0.0, 0.0}).has_value());
  EXPECT_THROW(g.world_to_grid_checked({-0.1, 0, 0}), Error);
}

TEST(Grid, CenterRoundTripsForEveryVoxel) {
  const GridGeometry g({7, 5, 3}, 0.2, {-1.3, 0.7, 12.0});
  for (std::size_t n = 0; n < g.size(); ++n) {
    const GridCoord c = g.coord(n);
    EXPECT_EQ(g.index(c), n);
    EXPECT_EQ(g.world_to_grid(g.center(c)), c);
  }
}

TEST(Grid, RejectsBadGeometry) {
  EXPECT_THROW(GridGeometry({0, 4, 4}, 1.0, {0, 0, 0}), Error);
  EXPECT_THROW(GridGeometry({4, 4, 4}, 0.0, {0, 0, 0}), Error);
  EXPECT_THROW(GridGeometry({4, 4, 4}, -1.0, {0, 0, 0}), Error);
}

TEST(Grid, NearestVoxelClamps) {
  const GridGeometry g({4, 4, 4}, 0.5, {0, 0, 0});
  EXPECT_EQ(g.nearest_voxel({-3, 0.3, 9}), (GridCoord{0, 0, 3}));
}

TEST(Grid, FillBoxIsHalfOpenAndClipped) {
  OccupancyGrid g(GridGeometry({5, 5, 5}, 1.0, {0, 0, 0}));
  g.fill_box({-2, 1, 1}, {2, 3, 9}, true);
  EXPECT_EQ(g.occupied_count(), 2u * 2u * 4u);
  EXPECT_TRUE(g.occupied({1, 2, 4}));
  EXPECT_FALSE(g.occupied({2, 2, 4}));
}

TEST(Grid, NeighbourOffsetsAreLexicographicAndSymmetric) {
  const auto& off = neighbour_offsets();
  for (std::size_t n = 1; n < off.size(); ++n) EXPECT_LT(off[n - 1], off[n]);
  for (std::size_t n = 0; n < off.size(); ++n) {
    EXPECT_EQ(off[25 - n], -off[n]);
    EXPECT_TRUE(is_26_neighbour({0, 0, 0}, off[n]));
  }
  EXPECT_FALSE(is_26_neighbour({0, 0, 0}, {0, 0, 0}));
  EXPECT_FALSE(is_26_neighbour({0, 0, 0}, {2, 0, 0}));
}

TEST(Grid, CenterDistanceIsExactMultipleOfResolution) {
  const GridGeometry g({8, 8, 8}, 0.25, {0, 0, 0});
  EXPECT_DOUBLE_EQ(g.center_distance({0, 0, 0}, {3, 4, 0}), 1.25);
}
