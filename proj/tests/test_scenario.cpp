#include <gtest/gtest.h>

#include <limits>

#include "fsp/line_of_sight.hpp"
#include "fsp/map_io.hpp"
#include "fsp/scenario.hpp"

using namespace fsp;

namespace {

const ScenarioKind kKinds[] = {ScenarioKind::h, ScenarioKind::inverted_u, ScenarioKind::near_closed_u,
                               ScenarioKind::maze};

}  // namespace

TEST(Scenario, GenerationIsDeterministic) {
  for (ScenarioKind kind : kKinds) {
    const Scenario a = gen_scenario(kind, {64, 64, 64}, 0.2, 42);
    const Scenario b = gen_scenario(kind, {64, 64, 64}, 0.2, 42);
    EXPECT_EQ(encode_vxm(a.grid), encode_vxm(b.grid)) << a.name;
    EXPECT_EQ(a.start, b.start);
    EXPECT_EQ(a.goal, b.goal);
  }
}

TEST(Scenario, SeedChangesTheMaze) {
  const Scenario a = gen_scenario(ScenarioKind::maze, {64, 64, 32}, 0.2, 1);
  const Scenario b = gen_scenario(ScenarioKind::maze, {64, 64, 32}, 0.2, 2);
  EXPECT_NE(a.grid, b.grid);
}

TEST(Scenario, EndpointsAreFreeWithClearanceAndBlockedFromEachOther) {
  for (ScenarioKind kind : kKinds) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const Scenario s = gen_scenario(kind, {64, 64, 64}, 0.2, seed);
      const EdfGrid edf = compute_edf(s.grid);
      EXPECT_TRUE(s.grid.is_free(s.start)) << s.name;
      EXPECT_TRUE(s.grid.is_free(s.goal)) << s.name;
      EXPECT_GE(edf.at(s.start), s.min_clearance) << s.name;
      EXPECT_GE(edf.at(s.goal), s.min_clearance) << s.name;
      // The H window may line up with the endpoints; every other template hides the goal.
      if (kind != ScenarioKind::h) EXPECT_FALSE(segment_clear(s.grid, s.start, s.goal)) << s.name << " seed " << seed;
    }
  }
}

TEST(Scenario, InvertedUHidesTheGoal) {
  const Scenario s = gen_scenario(ScenarioKind::inverted_u, {64, 64, 64}, 0.2, 1);
  EXPECT_EQ(line_of_sight(s.grid, s.start, s.goal, std::numeric_limits<double>::infinity()), Visibility::blocked);
}

TEST(Scenario, SmallDimsRejected) {
  try {
    gen_scenario(ScenarioKind::maze, {12, 12, 12}, 0.2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dims_too_small);
  }
  EXPECT_THROW(gen_scenario(ScenarioKind::h, {64, 15, 64}, 0.2, 1), Error);
}

TEST(Scenario, NamesParse) {
  for (ScenarioKind kind : kKinds) EXPECT_EQ(parse_scenario_kind(to_string(kind)), kind);
  EXPECT_EQ(parse_scenario_kind("S4"), ScenarioKind::maze);
  EXPECT_FALSE(parse_scenario_kind("Z").has_value());
}

TEST(SampleStartGoal, EmptyGridIsDeterministic) {
  const OccupancyGrid g(GridGeometry({8, 8, 8}, 1.0, {0, 0, 0}));
  const EdfGrid edf = EdfGrid::uniform(g.geometry(), std::numeric_limits<double>::infinity());
  const auto a = sample_start_goal(g, edf, 0.0, 7);
  const auto b = sample_start_goal(g, edf, 0.0, 7);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.first, a.second);
  EXPECT_TRUE(g.is_free(a.first));
  EXPECT_TRUE(g.is_free(a.second));
}

TEST(SampleStartGoal, FullGridHasNoPair) {
  OccupancyGrid g(GridGeometry({4, 4, 4}, 1.0, {0, 0, 0}));
  g.fill_box({0, 0, 0}, {4, 4, 4}, true);
  const EdfGrid edf = compute_edf(g);
  try {
    sample_start_goal(g, edf, 0.0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::no_valid_pair);
  }
}

TEST(SampleStartGoal, RespectsClearance) {
  const Scenario s = gen_scenario(ScenarioKind::h, {64, 64, 64}, 0.2, 1);
  const EdfGrid edf = compute_edf(s.grid);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [a, b] = sample_start_goal(s.grid, edf, 2.0, seed);
    EXPECT_GE(edf.at(a), 2.0);
    EXPECT_GE(edf.at(b), 2.0);
  }
}

TEST(SampleStartGoal, RegionsBoundTheDraw) {
  const Scenario s = gen_scenario(ScenarioKind::inverted_u, {64, 64, 64}, 0.2, 1);
  const EdfGrid edf = compute_edf(s.grid);
  const SamplingRegions r{s.start, s.goal, 4.0};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [a, b] = sample_start_goal(s.grid, edf, s.min_clearance, seed, r);
    EXPECT_LE(squared_norm(a - s.start), 16);
    EXPECT_LE(squared_norm(b - s.goal), 16);
  }
}
