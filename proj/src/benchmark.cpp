#include "fsp/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fsp/edf.hpp"
#include "fsp/metrics.hpp"

namespace fsp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double metric_value(const PathMetrics& m, Metric metric) {
  switch (metric) {
    case Metric::time: return m.time;
    case Metric::length: return m.length;
    case Metric::explored: return static_cast<double>(m.explored);
    case Metric::clearance: return m.mean_clearance;
    case Metric::angle: return m.mean_angle;
  }
  return 0.0;
}

struct Cell {
  bool found = false;
  PathMetrics metrics;
};

Cell run_cell(const Scenario& sc, const EdfGrid& edf, const PlannerConfig& base, const BenchAlgorithm& algo,
              const std::pair<GridCoord, GridCoord>& pair, int repeats) {
  PlannerConfig cfg = base;
  cfg.neighbours = algo.neighbours;
  std::vector<double> times;
  PathResult first;
  for (int r = 0; r < std::max(1, repeats); ++r) {
    PathResult res = plan(algo.algorithm, sc.grid, edf, cfg, pair.first, pair.second);
    times.push_back(res.wall_time_s);
    if (r == 0) first = std::move(res);
  }
  std::sort(times.begin(), times.end());
  first.wall_time_s = times[times.size() / 2];
  Cell cell;
  cell.found = first.found();
  cell.metrics = measure(edf, first);
  return cell;
}

MetricStat summarize(const std::vector<double>& xs) {
  MetricStat s;
  const auto n = static_cast<double>(xs.size());
  if (xs.empty()) {
    s.mean = s.sem = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sem = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return s;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

BenchAlgorithm parse_bench_algorithm(const std::string& label) {
  if (label == "astar") return {label, Algorithm::astar, NeighbourPolicy::full26()};
  if (label == "lt_full" || label == "lt") return {"lt_full", Algorithm::lt_full, NeighbourPolicy::full26()};
  if (label.rfind("fs_", 0) == 0) {
    const NeighbourPolicy p = NeighbourPolicy::parse(label.substr(3));
    return {"fs_" + p.label(), Algorithm::fs, p};
  }
  throw Error(ErrorCode::invalid_argument, "unknown benchmark algorithm '" + label + "'");
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::time: return "T";
    case Metric::length: return "L";
    case Metric::explored: return "N";
    case Metric::clearance: return "MD";
    case Metric::angle: return "MA";
  }
  return "?";
}

bool MetricReport::any_algorithm_complete() const {
  if (scenarios.empty()) return false;
  const std::size_t n = scenarios.front().algorithms.size();
  for (std::size_t a = 0; a < n; ++a) {
    bool complete = true;
    for (const auto& sc : scenarios) complete = complete && sc.algorithms[a].failed_runs == 0;
    if (complete) return true;
  }
  return false;
}

std::uint64_t pair_seed(std::uint64_t seed, ScenarioKind kind, int run) {
  return splitmix64(splitmix64(seed) ^ (static_cast<std::uint64_t>(kind) << 32) ^ static_cast<std::uint64_t>(run));
}

MetricReport run_benchmark(const BenchConfig& cfg) {
  if (cfg.runs < 1) throw Error(ErrorCode::invalid_argument, "runs must be >= 1");
  if (cfg.algorithms.empty()) throw Error(ErrorCode::invalid_argument, "no algorithms selected");
  const auto base_it = std::find_if(cfg.algorithms.begin(), cfg.algorithms.end(),
                                    [&](const BenchAlgorithm& a) { return a.label == cfg.baseline; });
  if (base_it == cfg.algorithms.end()) {
    throw Error(ErrorCode::invalid_argument, "baseline '" + cfg.baseline + "' is not among the algorithms");
  }
  const auto base_pos = static_cast<std::size_t>(base_it - cfg.algorithms.begin());
  cfg.planner.validate(cfg.resolution);

  MetricReport report;
  report.baseline = cfg.baseline;
  report.runs = cfg.runs;
  report.seed = cfg.seed;
  report.cost_weight = cfg.planner.cost_weight;
  report.max_los = cfg.planner.max_los;

  const std::size_t n_algo = cfg.algorithms.size();
  for (ScenarioKind kind : cfg.scenarios) {
    const Scenario sc = gen_scenario(kind, cfg.dims, cfg.resolution, cfg.seed, cfg.params);
    const EdfGrid edf = compute_edf(sc.grid);
    const SamplingRegions regions{sc.start, sc.goal, cfg.sample_radius_voxels};

    ScenarioReport sr;
    sr.scenario = sc.name;
    for (int r = 0; r < cfg.runs; ++r) {
      sr.pairs.push_back(sample_start_goal(sc.grid, edf, sc.min_clearance, pair_seed(cfg.seed, kind, r), regions));
    }

    const auto n_cells = static_cast<long>(sr.pairs.size() * n_algo);
    std::vector<Cell> cells(static_cast<std::size_t>(n_cells));
#pragma omp parallel for schedule(dynamic) if (!cfg.serial_timing)
    for (long c = 0; c < n_cells; ++c) {
      const auto cu = static_cast<std::size_t>(c);
      cells[cu] = run_cell(sc, edf, cfg.planner, cfg.algorithms[cu % n_algo], sr.pairs[cu / n_algo],
                           cfg.timing_repeats);
    }

    std::vector<std::size_t> used;
    sr.algorithms.resize(n_algo);
    for (std::size_t p = 0; p < sr.pairs.size(); ++p) {
      bool all = true;
      for (std::size_t a = 0; a < n_algo; ++a) {
        if (!cells[p * n_algo + a].found) {
          ++sr.algorithms[a].failed_runs;
          all = false;
        }
      }
      if (all) used.push_back(p);
    }
    sr.used_runs = static_cast<int>(used.size());
    sr.excluded_runs = static_cast<int>(sr.pairs.size() - used.size());

    for (std::size_t a = 0; a < n_algo; ++a) {
      sr.algorithms[a].label = cfg.algorithms[a].label;
      for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
        std::vector<double> xs;
        for (std::size_t p : used) xs.push_back(metric_value(cells[p * n_algo + a].metrics, kAllMetrics[m]));
        sr.algorithms[a].stats[m] = summarize(xs);
      }
    }
    for (std::size_t a = 0; a < n_algo; ++a) {
      for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
        const double base = sr.algorithms[base_pos].stats[m].mean;
        sr.algorithms[a].stats[m].ratio =
            a == base_pos ? 1.0
                          : (base != 0.0 ? sr.algorithms[a].stats[m].mean / base
                                         : std::numeric_limits<double>::quiet_NaN());
      }
    }
    report.scenarios.push_back(std::move(sr));
  }
  return report;
}

std::string report_csv(const MetricReport& report) {
  std::ostringstream out;
  out << "scenario,algorithm,metric,mean,sem,ratio\n";
  for (const auto& sc : report.scenarios) {
    for (const auto& a : sc.algorithms) {
      for (Metric m : kAllMetrics) {
        const MetricStat& s = a.stat(m);
        out << sc.scenario << ',' << a.label << ',' << metric_name(m) << ',' << fmt(s.mean) << ',' << fmt(s.sem)
            << ',' << fmt(s.ratio) << '\n';
      }
    }
  }
  return out.str();
}

std::string time_vs_cost_weight_csv(const BenchConfig& cfg, const std::vector<double>& cost_weights) {
  std::ostringstream out;
  out << "scenario,algorithm,cw,mean_time,sem_time\n";
  for (double cw : cost_weights) {
    BenchConfig c = cfg;
    c.planner.cost_weight = cw;
    const MetricReport rep = run_benchmark(c);
    for (const auto& sc : rep.scenarios) {
      for (const auto& a : sc.algorithms) {
        const MetricStat& t = a.stat(Metric::time);
        out << sc.scenario << ',' << a.label << ',' << fmt(cw) << ',' << fmt(t.mean) << ',' << fmt(t.sem) << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace fsp
