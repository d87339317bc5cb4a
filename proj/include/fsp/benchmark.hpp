#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fsp/scenario.hpp"
#include "fsp/search.hpp"

namespace fsp {

/// A planner plus its neighbour policy, labeled "astar", "lt_full", "fs_9",
/// "fs_9-11", ...
struct BenchAlgorithm {
  std::string label;
  Algorithm algorithm = Algorithm::astar;
  NeighbourPolicy neighbours = NeighbourPolicy::full26();
};

/// Throws Error(invalid_argument) on an unknown label.
BenchAlgorithm parse_bench_algorithm(const std::string& label);

enum class Metric { time, length, explored, clearance, angle };
inline constexpr std::array<Metric, 5> kAllMetrics = {Metric::time, Metric::length, Metric::explored,
                                                      Metric::clearance, Metric::angle};

/// "T", "L", "N", "MD", "MA".
const char* metric_name(Metric m);

struct BenchConfig {
  std::vector<ScenarioKind> scenarios{ScenarioKind::h, ScenarioKind::inverted_u, ScenarioKind::near_closed_u,
                                      ScenarioKind::maze};
  std::vector<BenchAlgorithm> algorithms;
  std::string baseline = "astar";
  PlannerConfig planner;  ///< neighbours field is overridden per algorithm
  int runs = 20;
  std::uint64_t seed = 0;
  Dims dims{64, 64, 64};
  double resolution = 0.2;
  TemplateParams params;
  double sample_radius_voxels = 5.0;  ///< endpoints are drawn around the template's start and goal
  int timing_repeats = 3;             ///< median of this many calls
  bool serial_timing = false;
};

struct MetricStat {
  double mean = 0.0;
  double sem = 0.0;    ///< sample standard deviation / sqrt(n)
  double ratio = 0.0;  ///< mean / baseline mean; NaN when the baseline mean is zero
};

struct AlgorithmSummary {
  std::string label;
  int failed_runs = 0;  ///< pairs this algorithm could not solve
  std::array<MetricStat, 5> stats{};  ///< indexed like kAllMetrics

  const MetricStat& stat(Metric m) const { return stats[static_cast<std::size_t>(m)]; }
};

struct ScenarioReport {
  std::string scenario;
  std::vector<std::pair<GridCoord, GridCoord>> pairs;
  int used_runs = 0;      ///< pairs solved by every algorithm; statistics cover only these
  int excluded_runs = 0;  ///< pairs dropped because some algorithm found no path
  std::vector<AlgorithmSummary> algorithms;
};

struct MetricReport {
  std::string baseline;
  int runs = 0;
  std::uint64_t seed = 0;
  double cost_weight = 0.0;
  double max_los = 0.0;
  std::vector<ScenarioReport> scenarios;

  /// True when at least one algorithm solved every pair of every scenario.
  bool any_algorithm_complete() const;
};

/// Deterministic seed of the `run`-th start/goal pair of a scenario.
std::uint64_t pair_seed(std::uint64_t seed, ScenarioKind kind, int run);

/// Every algorithm receives the same pairs. Wall time covers the planning call
/// only. Pairs are planned in parallel unless cfg.serial_timing is set.
MetricReport run_benchmark(const BenchConfig& cfg);

/// One row per (scenario, algorithm, metric): scenario,algorithm,metric,mean,sem,ratio.
std::string report_csv(const MetricReport& report);

/// Mean planning time per algorithm for each cost weight:
/// scenario,algorithm,cw,mean_time,sem_time.
std::string time_vs_cost_weight_csv(const BenchConfig& cfg, const std::vector<double>& cost_weights);

}  // namespace fsp
