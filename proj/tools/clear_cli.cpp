// clear: command-line front end.
//
//   clear synth      generate a synthetic tile (elevation.asc, landcover.asc, classes.json)
//   clear decompose  abstract a tile into planar regions and write regions, graph, metrics
//   clear plan       plan a path on a region abstraction or on the raw grid
//   clear eval       score a saved region set against its tile
//   clear compare    methods x budgets table of fidelity and planning metrics
//
// Exit codes: 0 success, 2 configuration/usage error, 3 data error, 4 unreachable goal.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "clear/decompose.hpp"
#include "clear/error.hpp"
#include "clear/graph.hpp"
#include "clear/io.hpp"
#include "clear/metrics.hpp"
#include "clear/planner.hpp"
#include "clear/raster_io.hpp"
#include "clear/render.hpp"
#include "clear/synth.hpp"

namespace fs = std::filesystem;
using namespace clear;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitUnreachable = 4;

struct TileSource {
  std::string dir;
  std::string elevation;
  std::string landcover;
  std::string classes;

  TerrainTile load() const {
    if (!dir.empty()) {
      const fs::path d(dir);
      return load_tile(elevation.empty() ? d / "elevation.asc" : fs::path(elevation),
                       landcover.empty() ? d / "landcover.asc" : fs::path(landcover),
                       classes.empty() ? d / "classes.json" : fs::path(classes));
    }
    if (elevation.empty() || landcover.empty() || classes.empty())
      throw ConfigError("give --tile DIR or all of --elevation, --landcover and --classes");
    return load_tile(elevation, landcover, classes);
  }

  Json describe() const {
    return {{"tile", dir}, {"elevation", elevation}, {"landcover", landcover}, {"classes", classes}};
  }
};

struct RunConfig {
  TileSource tile;
  ClearParams clear;
  int min_area = 4;
  CostWeights weights;
  std::string heading_mode = "literal";
  std::string friction_mode = "destination";
  std::uint64_t rng_seed = 0;
  std::string out;
  bool timings = true;

  void finalize() {
    if (heading_mode == "literal") {
      weights.heading_mode = HeadingMode::literal;
    } else if (heading_mode == "perpendicular") {
      weights.heading_mode = HeadingMode::perpendicular;
    } else {
      throw ConfigError("--heading-mode must be literal or perpendicular");
    }
    if (friction_mode == "destination") {
      weights.friction_mode = FrictionMode::destination;
    } else if (friction_mode == "average") {
      weights.friction_mode = FrictionMode::average;
    } else {
      throw ConfigError("--friction-mode must be destination or average");
    }
    clear.s_max = weights.s_max;
    if (clear.bsd.n < 1) throw ConfigError("--n-seeds must be >= 1");
    if (clear.bsd.alpha_bdy < 0.0 || clear.bsd.alpha_bdy > 1.0)
      throw ConfigError("--alpha-bdy must lie in [0, 1]");
    if (clear.bsd.r_min < 0.0) throw ConfigError("--r-min must be >= 0");
    if (!(clear.fit.epsilon > 0.0)) throw ConfigError("--epsilon must be positive");
    if (clear.fit.a_min < 1) throw ConfigError("--a-min must be >= 1");
    if (min_area < 1) throw ConfigError("--min-area must be >= 1");
    for (double w : {weights.w_f, weights.w_s, weights.w_r, weights.w_theta})
      if (w < 0.0) throw ConfigError("cost weights must be non-negative");
    if (out.empty()) throw ConfigError("--out is required");
  }

  Json describe() const {
    return {{"input", tile.describe()},
            {"n_seeds", clear.bsd.n},
            {"alpha_bdy", clear.bsd.alpha_bdy},
            {"r_min", clear.bsd.r_min},
            {"k", clear.bsd.k},
            {"sigma_window", clear.sigma_window},
            {"epsilon", clear.fit.epsilon},
            {"a_min", clear.fit.a_min},
            {"min_area", min_area},
            {"w_f", weights.w_f},
            {"w_s", weights.w_s},
            {"w_r", weights.w_r},
            {"w_theta", weights.w_theta},
            {"s_max", weights.s_max},
            {"heading_mode", heading_mode},
            {"friction_mode", friction_mode},
            {"rng_seed", rng_seed},
            {"timings", timings}};
  }
};

void add_tile_options(CLI::App* cmd, TileSource& src) {
  cmd->add_option("--tile", src.dir, "Directory holding elevation.asc, landcover.asc, classes.json");
  cmd->add_option("--elevation", src.elevation, "Elevation ESRI ASCII grid");
  cmd->add_option("--landcover", src.landcover, "Landcover ESRI ASCII grid (integer codes)");
  cmd->add_option("--classes", src.classes, "Class table JSON");
}

void add_run_options(CLI::App* cmd, RunConfig& cfg) {
  add_tile_options(cmd, cfg.tile);
  cmd->add_option("--n-seeds", cfg.clear.bsd.n, "Seed count")->capture_default_str();
  cmd->add_option("--alpha-bdy", cfg.clear.bsd.alpha_bdy, "Boundary share of the seeds")
      ->capture_default_str();
  cmd->add_option("--r-min", cfg.clear.bsd.r_min, "Flat-seed spacing (pixels)")->capture_default_str();
  cmd->add_option("--k", cfg.clear.bsd.k, "Entropy window")->capture_default_str();
  cmd->add_option("--sigma-window", cfg.clear.sigma_window, "Local elevation std window")
      ->capture_default_str();
  cmd->add_option("--epsilon", cfg.clear.fit.epsilon, "Plane-fit RMSE tolerance (m)")
      ->capture_default_str();
  cmd->add_option("--a-min", cfg.clear.fit.a_min, "Smallest splittable leaf (pixels)")
      ->capture_default_str();
  cmd->add_option("--min-area", cfg.min_area, "Quadtree minimum node area (pixels^2)")
      ->capture_default_str();
  cmd->add_option("--w-f", cfg.weights.w_f, "Friction weight")->capture_default_str();
  cmd->add_option("--w-s", cfg.weights.w_s, "Grade weight")->capture_default_str();
  cmd->add_option("--w-r", cfg.weights.w_r, "Roughness weight")->capture_default_str();
  cmd->add_option("--w-theta", cfg.weights.w_theta, "Heading penalty weight")->capture_default_str();
  cmd->add_option("--s-max", cfg.weights.s_max, "Steepest traversable grade (fraction)")
      ->capture_default_str();
  cmd->add_option("--heading-mode", cfg.heading_mode, "literal | perpendicular")
      ->capture_default_str();
  cmd->add_option("--friction-mode", cfg.friction_mode, "destination | average")
      ->capture_default_str();
  cmd->add_option("--rng-seed", cfg.rng_seed, "Seed for every random draw")->capture_default_str();
  cmd->add_option("--out", cfg.out, "Output directory")->required();
  cmd->add_flag("!--no-timings", cfg.timings,
                "Write zero for wall-clock fields so reruns are byte-identical");
}

Vec2 parse_point(const std::string& text, const char* what) {
  std::stringstream ss(text);
  double x = 0.0, y = 0.0;
  char comma = 0;
  if (!(ss >> x >> comma >> y) || comma != ',' || !ss.eof())
    throw ConfigError(std::string(what) + " must be given as X,Y in map metres");
  return {x, y};
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_manifest(const fs::path& dir, const std::string& command, const Json& config,
                    std::vector<std::string> outputs) {
  std::sort(outputs.begin(), outputs.end());
  write_json(dir / "manifest.json",
             {{"tool", "clear"}, {"command", command}, {"config", config}, {"outputs", outputs}});
}

Decomposition run_method(const TerrainTile& tile, const std::string& method,
                         std::optional<int> budget, const RunConfig& cfg) {
  const Method m = parse_method(method);
  if (budget) {
    BudgetOptions opts;
    opts.clear = cfg.clear;
    opts.quadtree_min_area = cfg.min_area;
    return decompose_to_budget(tile, m, *budget, opts);
  }
  switch (m) {
    case Method::clear:
      return decompose_clear(tile, cfg.clear);
    case Method::quadtree: {
      const auto t0 = std::chrono::steady_clock::now();
      QuadtreeParams qp{cfg.clear.fit.epsilon, cfg.min_area};
      auto qt = quadtree_decompose(tile, qp, cfg.weights.s_max);
      Decomposition d;
      d.method = "quadtree";
      d.regions = std::move(qt.regions);
      d.membership = std::move(qt.membership);
      d.seconds = seconds_since(t0);
      d.resolution = qp.epsilon;
      return d;
    }
    default:
      throw ConfigError("--budget is required for the " + method + " method");
  }
}

// --- synth -------------------------------------------------------------------------------

struct SynthArgs {
  SynthSpec spec;
  std::vector<std::string> params;
  std::uint64_t rng_seed = 0;
  std::string out;
};

int cmd_synth(SynthArgs& a) {
  for (const auto& kv : a.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--param expects NAME=VALUE, got '" + kv + "'");
    try {
      a.spec.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("--param value is not a number: '" + kv + "'");
    }
  }
  const TerrainTile tile = synth_tile(a.spec, a.rng_seed);
  const fs::path out(a.out);
  save_tile(out, tile);
  Json params = Json::object();
  for (const auto& [k, v] : a.spec.params) params[k] = v;
  write_manifest(out, "synth",
                 {{"kind", a.spec.kind},
                  {"width", a.spec.width},
                  {"height", a.spec.height},
                  {"cell_size", a.spec.cell_size},
                  {"params", params},
                  {"rng_seed", a.rng_seed}},
                 {"elevation.asc", "landcover.asc", "classes.json"});
  std::cout << "wrote " << tile.width << "x" << tile.height << " " << a.spec.kind << " tile to "
            << out.string() << "\n";
  return 0;
}

// --- decompose ---------------------------------------------------------------------------

struct DecomposeArgs {
  RunConfig cfg;
  std::string method = "clear";
  std::optional<int> budget;
};

int cmd_decompose(DecomposeArgs& a) {
  a.cfg.finalize();
  const TerrainTile tile = a.cfg.tile.load();
  Decomposition d = run_method(tile, a.method, a.budget, a.cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const auto regions = mark_traversability(d.regions, tile.classes, a.cfg.weights.s_max);
  const RegionGraph graph = build_graph(regions, tile.classes, a.cfg.weights, tile.cell_size);
  const double abstraction = a.cfg.timings ? d.seconds + seconds_since(t0) : 0.0;
  const EvalReport report = evaluate(tile, regions, abstraction);
  const Reconstruction rec = rasterize(regions, tile.width, tile.height, tile.cell_size);

  const fs::path out(a.cfg.out);
  std::vector<std::string> outputs = {"regions.json", "graph.csv",      "graph.json",
                                      "report.json",  "elevation_hat.asc", "landcover_hat.asc",
                                      "regions.svg"};
  write_json(out / "regions.json",
             regions_to_json({tile.width, tile.height, tile.cell_size, d.method, regions}));
  if (!d.cells.empty()) {
    Json cells = cells_to_json(d.cells, tile.cell_size);
    if (!d.seeds.seeds.empty()) {
      cells["n_requested"] = d.seeds.n_requested;
      cells["n_flat"] = d.seeds.n_flat;
      cells["underfilled"] = d.seeds.underfilled;
    }
    write_json(out / "cells.json", cells);
    outputs.push_back("cells.json");
  }
  write_text(out / "graph.csv", graph_to_csv(graph));
  write_json(out / "graph.json", graph_to_json(graph, regions));
  Json rep = report_to_json(report);
  rep["method"] = d.method;
  rep["resolution"] = d.resolution;
  write_json(out / "report.json", rep);
  write_ascii_grid(out / "elevation_hat.asc", rec.elevation, tile.cell_size);
  write_ascii_grid(out / "landcover_hat.asc", rec.landcover, tile.cell_size);
  write_text(out / "regions.svg", render_svg(regions, tile.width_m(), tile.height_m()));
  Json config = a.cfg.describe();
  config["method"] = a.method;
  config["budget"] = a.budget ? Json(*a.budget) : Json(nullptr);
  write_manifest(out, "decompose", config, outputs);

  std::cout << d.method << ": " << regions.size() << " regions, " << graph.edges.size()
            << " directed edges, rmse " << format_double(report.rmse_m) << " m, miou "
            << format_double(report.miou) << "\n";
  return 0;
}

// --- plan --------------------------------------------------------------------------------

struct PlanArgs {
  RunConfig cfg;
  std::string method = "clear";
  std::string regions_path;
  std::optional<int> budget;
  std::string start;
  std::string goal;
  std::string algorithm = "astar";
};

int cmd_plan(PlanArgs& a) {
  a.cfg.finalize();
  const TerrainTile tile = a.cfg.tile.load();
  const PlanQuery query{parse_point(a.start, "--start"), parse_point(a.goal, "--goal"),
                        a.cfg.weights};
  SearchAlgorithm algo = SearchAlgorithm::astar;
  if (a.algorithm == "dijkstra") {
    algo = SearchAlgorithm::dijkstra;
  } else if (a.algorithm != "astar") {
    throw ConfigError("--algorithm must be astar or dijkstra");
  }
  const fs::path out(a.cfg.out);
  std::vector<std::string> outputs = {"path.csv", "plan.json"};
  PlanResult plan;
  if (a.method == "grid-astar") {
    const GridCostField field = grid_cost_field(tile, a.cfg.weights.s_max);
    plan = plan_grid(field, query, algo);
    write_ppm(out / "path.ppm", tile.landcover, tile.cell_size, plan.path);
    outputs.push_back("path.ppm");
  } else {
    std::vector<Region> regions;
    if (!a.regions_path.empty()) {
      regions = regions_from_json(read_json(a.regions_path)).regions;
    } else {
      regions = run_method(tile, a.method, a.budget, a.cfg).regions;
    }
    regions = mark_traversability(std::move(regions), tile.classes, a.cfg.weights.s_max);
    const RegionGraph graph = build_graph(regions, tile.classes, a.cfg.weights, tile.cell_size);
    plan = plan_region(graph, regions, query, algo);
    write_text(out / "path.svg", render_svg(regions, tile.width_m(), tile.height_m(), plan.path));
    outputs.push_back("path.svg");
  }
  if (!a.cfg.timings) plan.plan_time_s = 0.0;
  write_text(out / "path.csv", plan_to_csv(plan));
  write_json(out / "plan.json", plan_to_json(plan));
  Json config = a.cfg.describe();
  config["method"] = a.method;
  config["regions"] = a.regions_path;
  config["start"] = a.start;
  config["goal"] = a.goal;
  config["algorithm"] = a.algorithm;
  write_manifest(out, "plan", config, outputs);
  if (!plan.reachable) {
    std::cerr << "unreachable: " << plan.reason << "\n";
    return kExitUnreachable;
  }
  std::cout << "cost " << format_double(plan.total_cost) << ", length "
            << format_double(plan.length_m) << " m, " << plan.path.size() << " waypoints, "
            << plan.expanded_nodes << " expansions\n";
  return 0;
}

// --- eval --------------------------------------------------------------------------------

struct EvalArgs {
  TileSource tile;
  std::string regions_path;
  std::string out;
};

int cmd_eval(EvalArgs& a) {
  const TerrainTile tile = a.tile.load();
  const RegionSet set = regions_from_json(read_json(a.regions_path));
  if (set.width != tile.width || set.height != tile.height)
    throw DataError("regions were built for a " + std::to_string(set.width) + "x" +
                    std::to_string(set.height) + " tile, not " + std::to_string(tile.width) +
                    "x" + std::to_string(tile.height));
  const EvalReport report = evaluate(tile, set.regions, 0.0);
  std::cout << report_csv_header() << "\n" << report_to_csv_row(report) << "\n";
  if (!a.out.empty()) {
    const fs::path out(a.out);
    write_json(out / "report.json", report_to_json(report));
    write_manifest(out, "eval", {{"input", a.tile.describe()}, {"regions", a.regions_path}},
                   {"report.json"});
  }
  return 0;
}

// --- compare -----------------------------------------------------------------------------

struct CompareArgs {
  RunConfig cfg;
  std::vector<std::string> methods;
  std::vector<int> budgets;
  int pairs = 10;
};

struct CompareRow {
  std::string method;
  int budget = 0;
  int region_count = 0;
  double rmse = 0.0, miou = 0.0, jsd_retention = 0.0;
  double mean_cost = 0.0, mean_len = 0.0, p_time = 0.0, a_time = 0.0;
  int reachable = 0;
  int unreachable = 0;
  std::string status = "ok";
};

// Start/goal pairs on pixel centres that the raw grid considers traversable.
std::vector<std::pair<Vec2, Vec2>> draw_pairs(const TerrainTile& tile, const GridCostField& field,
                                              int count, std::uint64_t seed) {
  std::vector<int> open;
  for (std::size_t i = 0; i < field.traversable.size(); ++i)
    if (field.traversable[i]) open.push_back(static_cast<int>(i));
  if (open.size() < 2) throw DataError("fewer than two traversable pixels; cannot draw pairs");
  std::mt19937_64 rng(seed);
  auto pick = [&]() {
    const int px = open[static_cast<std::size_t>(rng() % open.size())];
    return field.nodes[static_cast<std::size_t>(px)].position;
  };
  const double min_sep = 0.25 * std::hypot(tile.width_m(), tile.height_m());
  std::vector<std::pair<Vec2, Vec2>> pairs;
  for (int attempt = 0; static_cast<int>(pairs.size()) < count && attempt < 100 * count; ++attempt) {
    const Vec2 s = pick(), g = pick();
    if (distance(s, g) >= min_sep) pairs.emplace_back(s, g);
  }
  while (static_cast<int>(pairs.size()) < count) {
    const Vec2 s = pick(), g = pick();
    if (!(s == g)) pairs.emplace_back(s, g);
  }
  return pairs;
}

void accumulate(CompareRow& row, const PlanResult& plan) {
  if (!plan.reachable) {
    ++row.unreachable;
    return;
  }
  ++row.reachable;
  row.mean_cost += plan.total_cost;
  row.mean_len += plan.length_m;
  row.p_time += plan.plan_time_s;
}

void finish(CompareRow& row) {
  if (row.reachable > 0) {
    row.mean_cost /= row.reachable;
    row.mean_len /= row.reachable;
    row.p_time /= row.reachable;
  }
}

int cmd_compare(CompareArgs& a) {
  a.cfg.finalize();
  if (a.methods.empty()) throw ConfigError("--methods must name at least one method");
  if (a.budgets.empty()) throw ConfigError("--budgets must list at least one budget");
  if (a.pairs < 1) throw ConfigError("--pairs must be >= 1");
  for (const auto& m : a.methods)
    if (m != "grid-astar") parse_method(m);
  const TerrainTile tile = a.cfg.tile.load();
  const fs::path out(a.cfg.out);

  const auto field_t0 = std::chrono::steady_clock::now();
  const GridCostField field = grid_cost_field(tile, a.cfg.weights.s_max);
  const double field_time = seconds_since(field_t0);
  const auto pairs = draw_pairs(tile, field, a.pairs, a.cfg.rng_seed);

  std::vector<std::string> outputs = {"compare.csv", "pairs.csv"};
  std::vector<CompareRow> rows;
  for (const auto& method : a.methods) {
    if (method == "grid-astar") {
      CompareRow row;
      row.method = method;
      row.region_count = tile.width * tile.height;
      row.rmse = 0.0;
      row.miou = 1.0;
      row.jsd_retention = 1.0;
      row.a_time = field_time;
      for (const auto& [s, g] : pairs) accumulate(row, plan_grid(field, {s, g, a.cfg.weights}));
      finish(row);
      rows.push_back(row);
      continue;
    }
    for (int budget : a.budgets) {
      CompareRow row;
      row.method = method;
      row.budget = budget;
      try {
        const Decomposition d = run_method(tile, method, budget, a.cfg);
        const auto t0 = std::chrono::steady_clock::now();
        const auto regions = mark_traversability(d.regions, tile.classes, a.cfg.weights.s_max);
        const RegionGraph graph =
            build_graph(regions, tile.classes, a.cfg.weights, tile.cell_size);
        row.a_time = d.seconds + seconds_since(t0);
        const EvalReport report = evaluate(tile, regions, row.a_time);
        row.region_count = report.region_count;
        row.rmse = report.rmse_m;
        row.miou = report.miou;
        row.jsd_retention = report.jsd_retention;
        for (const auto& [s, g] : pairs) {
          try {
            accumulate(row, plan_region(graph, regions, {s, g, a.cfg.weights}));
          } catch (const PreconditionError&) {
            ++row.unreachable;  // endpoint fell in a region this abstraction marks impassable
          }
        }
        finish(row);
        const std::string name = method + "_" + std::to_string(budget);
        write_json(out / name / "regions.json",
                   regions_to_json({tile.width, tile.height, tile.cell_size, d.method, regions}));
        outputs.push_back(name + "/regions.json");
      } catch (const Error& e) {
        row.status = std::string("error: ") + e.what();
      }
      rows.push_back(row);
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const CompareRow& l, const CompareRow& r) {
    return l.method != r.method ? l.method < r.method : l.budget < r.budget;
  });

  std::string csv =
      "method,budget,region_count,rmse,miou,jsd_retention,mean_cost,mean_len,p_time,a_time,"
      "unreachable,status\n";
  for (const auto& r : rows) {
    const bool any = r.reachable > 0;
    csv += r.method + ',' + std::to_string(r.budget) + ',' + std::to_string(r.region_count) + ',' +
           format_double(r.rmse) + ',' + format_double(r.miou) + ',' +
           format_double(r.jsd_retention) + ',' + (any ? format_double(r.mean_cost) : "") + ',' +
           (any ? format_double(r.mean_len) : "") + ',' +
           format_double(a.cfg.timings ? r.p_time : 0.0) + ',' +
           format_double(a.cfg.timings ? r.a_time : 0.0) + ',' + std::to_string(r.unreachable) +
           ',' + csv_field(r.status) + '\n';
  }
  write_text(out / "compare.csv", csv);
  std::string pair_csv = "pair,start_x,start_y,goal_x,goal_y\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    pair_csv += std::to_string(i) + ',' + format_double(pairs[i].first.x) + ',' +
                format_double(pairs[i].first.y) + ',' + format_double(pairs[i].second.x) + ',' +
                format_double(pairs[i].second.y) + '\n';
  }
  write_text(out / "pairs.csv", pair_csv);
  Json config = a.cfg.describe();
  config["methods"] = a.methods;
  config["budgets"] = a.budgets;
  config["pairs"] = a.pairs;
  write_manifest(out, "compare", config, outputs);
  std::cout << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Terrain abstraction into convex planar regions, planning and evaluation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option values");

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate a synthetic tile");
  s->add_option("--kind", synth.spec.kind,
                "ramp | hill | hills | step | diagonal | checkerboard | fractal")
      ->required();
  s->add_option("--width", synth.spec.width, "Columns")->capture_default_str();
  s->add_option("--height", synth.spec.height, "Rows")->capture_default_str();
  s->add_option("--cell-size", synth.spec.cell_size, "Pixel size (m)")->capture_default_str();
  s->add_option("--param", synth.params, "Generator parameter NAME=VALUE (repeatable)");
  s->add_option("--rng-seed", synth.rng_seed, "Random seed")->capture_default_str();
  s->add_option("--out", synth.out, "Output directory")->required();

  DecomposeArgs dec;
  auto* d = app.add_subcommand("decompose", "Abstract a tile into planar regions");
  add_run_options(d, dec.cfg);
  d->add_option("--method", dec.method, "clear | grid | hex | quadtree")->capture_default_str();
  d->add_option("--budget", dec.budget, "Target region count (searches the method's resolution)");

  PlanArgs plan;
  auto* p = app.add_subcommand("plan", "Plan a path between two map points");
  add_run_options(p, plan.cfg);
  p->add_option("--method", plan.method, "clear | grid | hex | quadtree | grid-astar")
      ->capture_default_str();
  p->add_option("--regions", plan.regions_path, "regions.json from decompose (skips decomposition)");
  p->add_option("--budget", plan.budget, "Target region count when decomposing on the fly");
  p->add_option("--start", plan.start, "Start X,Y in map metres")->required();
  p->add_option("--goal", plan.goal, "Goal X,Y in map metres")->required();
  p->add_option("--algorithm", plan.algorithm, "astar | dijkstra")->capture_default_str();

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Score a saved region set");
  add_tile_options(e, ev.tile);
  e->add_option("--regions", ev.regions_path, "regions.json")->required();
  e->add_option("--out", ev.out, "Optional output directory for report.json");

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "Methods x budgets comparison table");
  add_run_options(c, cmp.cfg);
  c->add_option("--methods", cmp.methods, "Comma-separated: clear,grid,hex,quadtree,grid-astar")
      ->delimiter(',')
      ->required();
  c->add_option("--budgets", cmp.budgets, "Comma-separated region budgets")
      ->delimiter(',')
      ->required();
  c->add_option("--pairs", cmp.pairs, "Start-goal pairs per row")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kExitConfig;
  }

  try {
    if (s->parsed()) return cmd_synth(synth);
    if (d->parsed()) return cmd_decompose(dec);
    if (p->parsed()) return cmd_plan(plan);
    if (e->parsed()) return cmd_eval(ev);
    if (c->parsed()) return cmd_compare(cmp);
  } catch (const ConfigError& ex) {
    std::cerr << "configuration error: " << ex.what() << "\n";
    return kExitConfig;
  } catch (const PreconditionError& ex) {
    std::cerr << "precondition failed: " << ex.what() << "\n";
    return kExitData;
  } catch (const Error& ex) {
    std::cerr << "data error: " << ex.what() << "\n";
    return kExitData;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitData;
  }
  return kExitConfig;
}
