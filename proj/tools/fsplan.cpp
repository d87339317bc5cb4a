// fsplan: map generation, distance fields, planning, benchmarks and property suites.
//
// Exit codes: 0 success, 1 I/O, 2 usage, 3 no path, 4 property suite failed.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsp/benchmark.hpp"
#include "fsp/edf.hpp"
#include "fsp/json_io.hpp"
#include "fsp/map_io.hpp"
#include "fsp/metrics.hpp"
#include "fsp/scenario.hpp"
#include "fsp/search.hpp"
#include "fsp/verify.hpp"

namespace fs = std::filesystem;
using fsp::Error;
using fsp::ErrorCode;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoPath = 3;
constexpr int kExitSuiteFailed = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::io_error:
    case ErrorCode::parse_error:
    case ErrorCode::format_error:
    case ErrorCode::internal: return kExitIo;
    default: return kExitUsage;
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad " + what + " '" + s + "'");
  }
}

fsp::Dims parse_dims(const std::string& text) {
  const auto parts = split(text, 'x');
  if (parts.size() == 1) {
    const int n = to_int(parts[0], "dims");
    return {n, n, n};
  }
  if (parts.size() != 3) throw UsageError("dims must be N or NxMxK");
  return {to_int(parts[0], "dims"), to_int(parts[1], "dims"), to_int(parts[2], "dims")};
}

fsp::GridCoord parse_coord(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError("coordinate must be i,j,k");
  return {to_int(parts[0], "coordinate"), to_int(parts[1], "coordinate"), to_int(parts[2], "coordinate")};
}

std::vector<fsp::ScenarioKind> parse_suite(const std::string& text) {
  if (text == "all") {
    return {fsp::ScenarioKind::h, fsp::ScenarioKind::inverted_u, fsp::ScenarioKind::near_closed_u,
            fsp::ScenarioKind::maze};
  }
  std::vector<fsp::ScenarioKind> out;
  for (const auto& name : split(text, ',')) {
    const auto kind = fsp::parse_scenario_kind(name);
    if (!kind) throw UsageError("unknown scenario '" + name + "'");
    out.push_back(*kind);
  }
  if (out.empty()) throw UsageError("empty scenario suite");
  return out;
}

std::vector<fsp::BenchAlgorithm> parse_algos(const std::string& text) {
  std::vector<fsp::BenchAlgorithm> out;
  for (const auto& label : split(text, ',')) out.push_back(fsp::parse_bench_algorithm(label));
  if (out.empty()) throw UsageError("no algorithms given");
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
}

fs::path cache_dir() {
  if (const char* env = std::getenv("EDF_PLANNER_CACHE_DIR"); env && *env) return env;
  return fs::temp_directory_path() / "fsplan-edf-cache";
}

// Field for `map_bytes`, read from the content-addressed cache when a matching
// entry exists. The fresh path is rounded through f32 as well, so a cached and
// an uncached run plan on identical values.
fsp::EdfGrid load_or_compute_edf(const std::vector<std::uint8_t>& map_bytes, const fsp::OccupancyGrid& grid,
                                 const std::string& explicit_path, bool use_cache) {
  // Nothing to be near: every voxel is unboundedly far from an obstacle.
  if (grid.occupied_count() == 0) {
    return fsp::EdfGrid::uniform(grid.geometry(), std::numeric_limits<double>::infinity());
  }
  fs::path path;
  if (!explicit_path.empty()) {
    path = explicit_path;
  } else if (use_cache) {
    path = cache_dir() / (fsp::content_hash(map_bytes) + ".edf");
  }
  if (!path.empty() && fs::exists(path)) {
    try {
      fsp::EdfGrid cached = fsp::read_edf(path);
      if (cached.geometry() == grid.geometry()) return cached;
      std::cerr << "ignoring stale distance field cache " << path << "\n";
    } catch (const Error& e) {
      std::cerr << "ignoring unreadable distance field cache " << path << ": " << e.what() << "\n";
    }
  }
  fsp::EdfGrid fresh = fsp::compute_edf(grid).quantized_f32();
  if (!path.empty()) {
    std::error_code ec;
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path(), ec);
    try {
      fsp::write_edf(path, fresh);
    } catch (const Error& e) {
      std::cerr << "warning: " << e.what() << "\n";
    }
  }
  return fresh;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3D path planning over Euclidean distance fields"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a scenario map or voxelize a point cloud");
  std::string gen_kind, gen_dims = "64", gen_out, gen_xyz;
  double gen_res = 0.2;
  std::uint64_t gen_seed = 0;
  int gen_wall = 2, gen_opening = 4, gen_padding = 1;
  gen->add_option("--kind", gen_kind, "H, inverted_U, near_closed_U or maze");
  gen->add_option("--dims", gen_dims, "N or NxMxK voxels");
  gen->add_option("--res", gen_res, "meters per voxel");
  gen->add_option("--seed", gen_seed);
  gen->add_option("--wall", gen_wall, "wall thickness, voxels");
  gen->add_option("--opening", gen_opening, "opening width, voxels");
  gen->add_option("--xyz", gen_xyz, "ASCII x y z point cloud instead of a template");
  gen->add_option("--padding", gen_padding, "free voxels around the point cloud");
  gen->add_option("--out", gen_out, ".vxm output")->required();

  // edf
  auto* edf_cmd = app.add_subcommand("edf", "Compute the distance field of a map");
  std::string edf_map, edf_out;
  edf_cmd->add_option("--map", edf_map)->required();
  edf_cmd->add_option("--out", edf_out, ".edf output")->required();

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "Plan a path");
  std::string plan_map, plan_start, plan_goal, plan_algo = "fs", plan_neigh = "9-11", plan_fallback = "17",
                                                plan_edf, plan_out;
  double plan_cw = 500.0, plan_los = 1.0, plan_hw = 1.0;
  bool plan_no_cache = false;
  plan_cmd->add_option("--map", plan_map)->required();
  plan_cmd->add_option("--start", plan_start, "i,j,k")->required();
  plan_cmd->add_option("--goal", plan_goal, "i,j,k")->required();
  plan_cmd->add_option("--algo", plan_algo, "astar, lt_full or fs");
  plan_cmd->add_option("--neighbours", plan_neigh, "fs policy: k or near-far, k in {9,10,11,13,15,17}");
  plan_cmd->add_option("--fallback", plan_fallback, "17 or full");
  plan_cmd->add_option("--cw", plan_cw, "cost weight, m^3");
  plan_cmd->add_option("--los", plan_los, "line-of-sight limit, m");
  plan_cmd->add_option("--heuristic-weight", plan_hw);
  plan_cmd->add_option("--edf", plan_edf, "distance field file to read or create");
  plan_cmd->add_flag("--no-cache", plan_no_cache, "always compute the distance field");
  plan_cmd->add_option("--out", plan_out, "path JSON output (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "Run the seeded scenario benchmark");
  std::string bench_suite = "all", bench_algos = "astar,lt_full,fs_9,fs_9-11", bench_dims = "64", bench_csv,
              bench_baseline = "astar";
  int bench_runs = 20;
  std::uint64_t bench_seed = 0;
  double bench_res = 0.2, bench_cw = 500.0, bench_los = 1.0, bench_radius = 5.0;
  bool bench_serial = false;
  bench->add_option("--suite", bench_suite, "all or comma list of scenarios");
  bench->add_option("--algos", bench_algos, "comma list: astar, lt_full, fs_<k>, fs_<near>-<far>");
  bench->add_option("--baseline", bench_baseline);
  bench->add_option("--runs", bench_runs);
  bench->add_option("--seed", bench_seed);
  bench->add_option("--dims", bench_dims);
  bench->add_option("--res", bench_res);
  bench->add_option("--cw", bench_cw);
  bench->add_option("--los", bench_los);
  bench->add_option("--radius", bench_radius, "endpoint sampling radius, voxels");
  bench->add_flag("--serial-timing", bench_serial, "plan one cell at a time");
  bench->add_option("--out-csv", bench_csv, "CSV report; a .json twin is written next to it")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  std::string verify_suite = "all";
  long long verify_cases = -1;
  std::uint64_t verify_seed = 0;
  verify->add_option("--suite", verify_suite, "edf, lipschitz, hh, triangle, quality or all");
  verify->add_option("--cases", verify_cases, "suite size (grids, segments or cases)");
  verify->add_option("--seed", verify_seed);

  // plotdata
  auto* plot = app.add_subcommand("plotdata", "Planning time against cost weight");
  std::string plot_suite = "all", plot_algos = "lt_full,fs_9,fs_9-11", plot_dims = "64", plot_cws = "0,100,250,500,1000",
              plot_out;
  int plot_runs = 5;
  std::uint64_t plot_seed = 0;
  double plot_res = 0.2, plot_los = 1.0;
  plot->add_option("--suite", plot_suite);
  plot->add_option("--algos", plot_algos);
  plot->add_option("--cws", plot_cws, "comma list of cost weights");
  plot->add_option("--runs", plot_runs);
  plot->add_option("--seed", plot_seed);
  plot->add_option("--dims", plot_dims);
  plot->add_option("--res", plot_res);
  plot->add_option("--los", plot_los);
  plot->add_option("--out", plot_out, "CSV output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      fsp::OccupancyGrid grid;
      nlohmann::json info;
      if (!gen_xyz.empty()) {
        grid = fsp::load_pointcloud_xyz(gen_xyz, gen_res, gen_padding);
        info = {{"source", gen_xyz}};
      } else {
        const auto kind = fsp::parse_scenario_kind(gen_kind);
        if (!kind) throw UsageError("--kind must be H, inverted_U, near_closed_U or maze");
        const fsp::Scenario sc = fsp::gen_scenario(*kind, parse_dims(gen_dims), gen_res, gen_seed,
                                                   {gen_wall, gen_opening});
        grid = sc.grid;
        info = {{"scenario", sc.name},
                {"start", {sc.start.i, sc.start.j, sc.start.k}},
                {"goal", {sc.goal.i, sc.goal.j, sc.goal.k}},
                {"min_clearance", sc.min_clearance}};
      }
      fsp::write_vxm(gen_out, grid);
      const auto& d = grid.dims();
      info["dims"] = {d.nx, d.ny, d.nz};
      info["occupied"] = grid.occupied_count();
      std::cout << info.dump() << "\n";
      return 0;
    }

    if (*edf_cmd) {
      fsp::write_edf(edf_out, fsp::compute_edf(fsp::read_vxm(edf_map)));
      return 0;
    }

    if (*plan_cmd) {
      const auto algo = fsp::parse_algorithm(plan_algo);
      if (!algo) throw UsageError("--algo must be astar, lt_full or fs");
      fsp::PlannerConfig cfg;
      cfg.cost_weight = plan_cw;
      cfg.max_los = plan_los;
      cfg.heuristic_weight = plan_hw;
      // Parsed for every algorithm so a bad value is always a usage error.
      const fsp::NeighbourPolicy policy = fsp::NeighbourPolicy::parse(plan_neigh);
      if (*algo == fsp::Algorithm::fs) cfg.neighbours = policy;
      cfg.fallback = fsp::NeighbourPolicy::parse(plan_fallback);
      const fsp::GridCoord start = parse_coord(plan_start);
      const fsp::GridCoord goal = parse_coord(plan_goal);

      const auto bytes = fsp::read_file_bytes(plan_map);
      const fsp::OccupancyGrid grid = fsp::decode_vxm(bytes);
      cfg.validate(grid.resolution());
      if (!grid.contains(start) || !grid.contains(goal)) throw UsageError("start or goal outside the map");
      if (grid.occupied(start) || grid.occupied(goal)) throw UsageError("start or goal is occupied");
      const fsp::EdfGrid edf = load_or_compute_edf(bytes, grid, plan_edf, !plan_no_cache);

      const fsp::PathResult result = fsp::plan(*algo, grid, edf, cfg, start, goal);
      const std::string label = std::string(fsp::to_string(*algo)) +
                                (*algo == fsp::Algorithm::fs ? "_" + cfg.neighbours.label() : "");
      if (!result.found()) {
        nlohmann::json err = {{"error", "no-path"},
                              {"algorithm", label},
                              {"start", {start.i, start.j, start.k}},
                              {"goal", {goal.i, goal.j, goal.k}},
                              {"explored_nodes", result.explored_nodes},
                              {"fallback_used", result.fallback_used},
                              {"wall_time_s", result.wall_time_s}};
        if (!plan_out.empty() && plan_out != "-") write_text(plan_out, err.dump(2) + "\n");
        std::cout << err.dump() << "\n";
        return kExitNoPath;
      }
      const nlohmann::json j = fsp::path_to_json(grid.geometry(), label, cfg, start, goal, result);
      if (!plan_out.empty() && plan_out != "-") {
        write_text(plan_out, j.dump(2) + "\n");
        const fsp::PathMetrics m = fsp::measure(edf, result);
        std::printf("algorithm=%s waypoints=%zu length=%.6g explored=%zu time=%.6g clearance=%.6g angle=%.6g fallback=%d\n",
                    label.c_str(), result.waypoints.size(), m.length, m.explored, m.time, m.mean_clearance,
                    m.mean_angle, result.fallback_used ? 1 : 0);
      } else {
        std::cout << j.dump(2) << "\n";
      }
      return 0;
    }

    if (*bench) {
      fsp::BenchConfig cfg;
      cfg.scenarios = parse_suite(bench_suite);
      cfg.algorithms = parse_algos(bench_algos);
      cfg.baseline = bench_baseline;
      cfg.runs = bench_runs;
      cfg.seed = bench_seed;
      cfg.dims = parse_dims(bench_dims);
      cfg.resolution = bench_res;
      cfg.planner.cost_weight = bench_cw;
      cfg.planner.max_los = bench_los;
      cfg.sample_radius_voxels = bench_radius;
      cfg.serial_timing = bench_serial;
      const fsp::MetricReport report = fsp::run_benchmark(cfg);
      write_text(bench_csv, fsp::report_csv(report));
      fs::path json_path = bench_csv;
      json_path.replace_extension(".json");
      write_text(json_path, fsp::report_to_json(report).dump(2) + "\n");
      for (const auto& sc : report.scenarios) {
        if (sc.excluded_runs > 0) {
          std::cerr << sc.scenario << ": " << sc.excluded_runs << " of " << sc.pairs.size()
                    << " pairs excluded (no path for some algorithm)\n";
        }
      }
      return report.any_algorithm_complete() ? 0 : kExitNoPath;
    }

    if (*verify) {
      const std::vector<std::string> known = {"edf", "lipschitz", "hh", "triangle", "quality"};
      std::vector<std::string> suites;
      if (verify_suite == "all") {
        suites = known;
      } else if (std::find(known.begin(), known.end(), verify_suite) != known.end()) {
        suites = {verify_suite};
      } else {
        throw UsageError("unknown suite '" + verify_suite + "'");
      }
      auto cases = [&](long long fallback) { return verify_cases > 0 ? verify_cases : fallback; };
      nlohmann::json out = nlohmann::json::array();
      bool ok = true;
      for (const auto& s : suites) {
        std::vector<fsp::SuiteResult> results;
        if (s == "edf") results.push_back(fsp::check_edf_exactness(static_cast<int>(cases(50)), 32, verify_seed));
        if (s == "lipschitz") results.push_back(fsp::check_lipschitz(static_cast<int>(cases(20)), 48, verify_seed));
        if (s == "hh") {
          fsp::ConvexObstacle sphere;
          fsp::ConvexObstacle box;
          box.shape = fsp::ConvexObstacle::Shape::box;
          results.push_back(fsp::check_hh_bounds(sphere, static_cast<int>(cases(1000)), verify_seed));
          results.push_back(fsp::check_hh_bounds(box, static_cast<int>(cases(1000)), verify_seed));
        }
        if (s == "triangle") {
          results.push_back(fsp::check_triangle_inequality(static_cast<std::size_t>(cases(1000000)), verify_seed));
        }
        if (s == "quality") {
          const fsp::QualityConfig qcfg;
          const auto rows = fsp::quality_study_2d(qcfg);
          fsp::SuiteResult r;
          r.suite = "quality";
          nlohmann::json table = nlohmann::json::array();
          double min_k3 = 100.0;
          for (const auto& row : rows) {
            ++r.cases;
            table.push_back({{"los", row.los}, {"k", row.k}, {"near", row.score_near}, {"far", row.score_far}});
            if (row.k == 3) min_k3 = std::min(min_k3, row.score_min());
            if ((row.k >= 5 && row.score_min() < 100.0) || (row.k == 3 && row.score_min() < 75.0)) {
              if (r.failures++ == 0) r.first_counterexample = table.back();
            }
          }
          r.details = {{"table", table},
                       {"min_score_k3", min_k3},
                       {"cost_weight", qcfg.cost_weight},
                       {"resolution", qcfg.resolution}};
          results.push_back(r);
        }
        for (const auto& r : results) {
          ok = ok && r.passed();
          out.push_back(r.to_json());
        }
      }
      std::cout << (out.size() == 1 ? out[0] : out).dump(2) << "\n";
      return ok ? 0 : kExitSuiteFailed;
    }

    if (*plot) {
      fsp::BenchConfig cfg;
      cfg.scenarios = parse_suite(plot_suite);
      cfg.algorithms = parse_algos(plot_algos);
      cfg.baseline = cfg.algorithms.front().label;
      cfg.runs = plot_runs;
      cfg.seed = plot_seed;
      cfg.dims = parse_dims(plot_dims);
      cfg.resolution = plot_res;
      cfg.planner.max_los = plot_los;
      std::vector<double> cws;
      for (const auto& s : split(plot_cws, ',')) {
        try {
          cws.push_back(std::stod(s));
        } catch (const std::exception&) {
          throw UsageError("bad cost weight '" + s + "'");
        }
      }
      const std::string csv = fsp::time_vs_cost_weight_csv(cfg, cws);
      if (plot_out.empty() || plot_out == "-") {
        std::cout << csv;
      } else {
        write_text(plot_out, csv);
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << fsp::to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
