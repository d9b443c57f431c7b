// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any criterion fails.
//
//   clear_acceptance [--cli PATH] [--only N[,N...]] [--work DIR]
//
// --cli points at the clear command-line tool (needed by the determinism criterion).

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "clear/baselines.hpp"
#include "clear/bsd.hpp"
#include "clear/decompose.hpp"
#include "clear/graph.hpp"
#include "clear/metrics.hpp"
#include "clear/planefit.hpp"
#include "clear/planner.hpp"
#include "clear/synth.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;
using namespace clear;
using clear::testing::Rng;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------------------
// Traversability audit shared by the planning criteria.

struct Audit {
  std::size_t plans = 0;
  std::size_t steps = 0;
  std::size_t violations = 0;
  std::string first_violation;

  void flag(const std::string& what) {
    ++violations;
    if (first_violation.empty()) first_violation = what;
  }

  void region_plan(const PlanResult& plan, std::span<const Region> regions,
                   const ClassTable& classes) {
    if (!plan.reachable) return;
    ++plans;
    for (int id : plan.visited_region_ids) {
      ++steps;
      const auto it = std::find_if(regions.begin(), regions.end(),
                                   [&](const Region& r) { return r.id == id; });
      if (it == regions.end()) {
        flag("unknown region " + std::to_string(id));
        continue;
      }
      const LandcoverClass* cls = classes.find(it->landcover);
      if (it->grade_pct > 35.0) flag("region " + std::to_string(id) + " grade " + fmt(it->grade_pct));
      if (cls != nullptr && !cls->traversable)
        flag("region " + std::to_string(id) + " class " + cls->name);
    }
  }

  void grid_plan(const PlanResult& plan, const GridCostField& field, const TerrainTile& tile) {
    if (!plan.reachable) return;
    ++plans;
    for (int px : plan.visited_region_ids) {
      ++steps;
      const CostNode& node = field.nodes[static_cast<std::size_t>(px)];
      const LandcoverClass* cls = tile.classes.find(tile.landcover[static_cast<std::size_t>(px)]);
      if (node.grade > 0.35) flag("pixel " + std::to_string(px) + " grade " + fmt(node.grade));
      if (cls != nullptr && !cls->traversable) flag("pixel " + std::to_string(px) + " " + cls->name);
    }
  }
};

Audit g_audit;

// Random point inside a pixel that is traversable for both the region abstraction and the
// raw grid, so both planners accept the same query.
std::optional<Vec2> random_traversable_point(Rng& rng, const TerrainTile& tile,
                                             const std::vector<Region>& regions,
                                             const RegionLocator& locator,
                                             const GridCostField* field) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const int r = rng.integer(0, tile.height - 1), c = rng.integer(0, tile.width - 1);
    const Vec2 p{(c + rng.uniform(0.1, 0.9)) * tile.cell_size,
                 (r + rng.uniform(0.1, 0.9)) * tile.cell_size};
    if (field != nullptr && !field->traversable[tile.elevation.index(r, c)]) continue;
    const auto idx = locator.find_index(p);
    if (idx < 0 || !regions[static_cast<std::size_t>(idx)].traversable) continue;
    return p;
  }
  return std::nullopt;
}

TerrainTile crop(const TerrainTile& t, int row, int col, int w, int h) {
  Grid<double> e(w, h);
  Grid<int> l(w, h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      e(r, c) = t.elevation(r + row, c + col);
      l(r, c) = t.landcover(r + row, c + col);
    }
  return make_tile(std::move(e), std::move(l), t.classes, t.cell_size);
}

// ---------------------------------------------------------------------------------------
// 1 + 2: 50 random decompositions shared by the RMSE and convexity criteria.

struct RandomRun {
  TerrainTile tile;
  ClearParams params;
  Decomposition result;
};

const std::vector<RandomRun>& random_runs() {
  static const std::vector<RandomRun> runs = [] {
    std::vector<RandomRun> out;
    Rng rng(0xC1EA2001);
    const double eps_choices[] = {0.25, 0.5, 1.0, 2.0, 5.0, 10.0};
    for (int i = 0; i < 50; ++i) {
      RandomRun run;
      const double cs = std::array{1.0, 5.0, 10.0, 30.0}[static_cast<std::size_t>(rng.integer(0, 3))];
      if (i % 5 == 4) {
        SynthSpec spec;
        spec.kind = "hills";
        spec.width = spec.height = 100;
        spec.cell_size = cs;
        spec.params = {{"count", rng.integer(1, 6)}, {"height", rng.uniform(10, 200)}};
        run.tile = synth_tile(spec, rng.bits());
      } else {
        run.tile = clear::testing::fractal(100, 100, cs, rng.uniform(5, 300), rng.bits(),
                                           rng.uniform(0.0, 0.3));
      }
      run.params.bsd.n = rng.integer(10, 250);
      run.params.bsd.alpha_bdy = rng.uniform(0.0, 1.0);
      run.params.bsd.r_min = rng.integer(2, 4);
      run.params.fit.epsilon = eps_choices[rng.integer(0, 5)];
      run.result = decompose_clear(run.tile, run.params);
      out.push_back(std::move(run));
    }
    return out;
  }();
  return runs;
}

Outcome criterion_1() {
  std::size_t regions = 0, violations = 0, mismatches = 0;
  for (const auto& run : random_runs()) {
    const auto& tile = run.tile;
    // Independent residual check from the pixel membership.
    std::vector<std::vector<Point3>> pts(run.result.regions.size());
    for (int r = 0; r < tile.height; ++r)
      for (int c = 0; c < tile.width; ++c) {
        const int id = run.result.membership(r, c);
        pts[static_cast<std::size_t>(id)].push_back(
            {(c + 0.5) * tile.cell_size, (r + 0.5) * tile.cell_size, tile.elevation(r, c)});
      }
    for (const Region& reg : run.result.regions) {
      ++regions;
      const auto& p = pts[static_cast<std::size_t>(reg.id)];
      double sq = 0.0;
      for (const auto& q : p) sq += std::pow(q.z - reg.plane(q.x, q.y), 2);
      const double resid = p.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(p.size()));
      if (static_cast<int>(p.size()) != reg.pixel_count ||
          std::abs(resid - reg.fit_rmse) > 1e-9 * std::max(1.0, resid))
        ++mismatches;
      const bool ok = resid <= run.params.fit.epsilon ||
                      static_cast<int>(p.size()) < run.params.fit.a_min || reg.split_failed;
      if (!ok) ++violations;
    }
  }
  return {violations == 0 && mismatches == 0,
          std::to_string(regions) + " leaves over 50 tiles, " + std::to_string(violations) +
              " violations, " + std::to_string(mismatches) + " stored/recomputed mismatches"};
}

Outcome criterion_2() {
  std::size_t total = 0, bad = 0;
  for (const auto& run : random_runs()) {
    const double eps = geom_eps(run.tile.cell_size);
    for (const auto& cell : run.result.cells) {
      ++total;
      if (!is_convex(cell.vertices, eps)) ++bad;
    }
    for (const auto& reg : run.result.regions) {
      ++total;
      if (!is_convex(reg.polygon, eps)) ++bad;
    }
  }
  return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) +
                        " cells and region polygons convex"};
}

// ---------------------------------------------------------------------------------------

Outcome criterion_3() {
  Rng rng(0xC1EA2003);
  std::size_t checked = 0, agree = 0, ties = 0;
  for (int set = 0; set < 20; ++set) {
    const int w = rng.integer(20, 150), h = rng.integer(20, 150);
    const double cs = rng.uniform(0.5, 40.0);
    const int n = rng.integer(2, std::min(400, w * h / 4));
    std::set<PixelCoord> chosen;
    while (static_cast<int>(chosen.size()) < n)
      chosen.insert({rng.integer(0, h - 1), rng.integer(0, w - 1)});
    SeedSet seeds;
    seeds.seeds.assign(chosen.begin(), chosen.end());
    std::shuffle(seeds.seeds.begin(), seeds.seeds.end(), rng.engine());
    seeds.n_requested = n;
    TerrainTile tile = make_tile(Grid<double>(w, h, 0.0), Grid<int>(w, h, 0),
                                 default_class_table(), cs);
    const auto cells = voronoi_partition(seeds, tile);
    const auto labels = voronoi_labels(seeds, w, h);
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        long best = std::numeric_limits<long>::max(), second = best;
        int arg = -1;
        for (int s = 0; s < n; ++s) {
          const long dr = seeds.seeds[static_cast<std::size_t>(s)].row - r;
          const long dc = seeds.seeds[static_cast<std::size_t>(s)].col - c;
          const long d = dr * dr + dc * dc;
          if (d < best) {
            second = best;
            best = d;
            arg = s;
          } else if (d < second) {
            second = d;
          }
        }
        if (second == best) {
          ++ties;
          continue;
        }
        ++checked;
        const Vec2 p = pixel_center({r, c}, cs);
        if (contains_convex(cells[static_cast<std::size_t>(arg)].vertices, p, 1e-9 * cs) &&
            labels(r, c) == arg)
          ++agree;
      }
    }
  }
  const double ratio = static_cast<double>(agree) / static_cast<double>(checked);
  return {ratio >= 0.9999, std::to_string(agree) + "/" + std::to_string(checked) +
                               " non-tie lattice points agree (" + fmt(100 * ratio, 8) + "%), " +
                               std::to_string(ties) + " ties excluded"};
}

Outcome criterion_4() {
  Rng rng(0xC1EA2004);
  double worst = 0.0;
  for (int set = 0; set < 1000; ++set) {
    const int n = rng.integer(3, 400);
    const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3), c = rng.uniform(-200, 200);
    const double noise = rng.uniform(0.0, 5.0);
    // Clouds straddle the origin so the uncentred oracle system stays well conditioned.
    const double span = rng.uniform(5, 60);
    const double ox = -rng.uniform(0, span), oy = -rng.uniform(0, span);
    std::vector<Point3> pts;
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) {
      const double x = ox + rng.uniform(0, span), y = oy + rng.uniform(0, span);
      const double zz = a * x + b * y + c + rng.normal(noise);
      pts.push_back({x, y, zz});
      X(i, 0) = x;
      X(i, 1) = y;
      X(i, 2) = 1.0;
      z(i) = zz;
    }
    if (n == 3) {
      // Three random points: keep only clearly non-collinear triples.
      const double area2 = std::abs((pts[1].x - pts[0].x) * (pts[2].y - pts[0].y) -
                                    (pts[2].x - pts[0].x) * (pts[1].y - pts[0].y));
      if (area2 < 0.1 * span * span) {
        --set;
        continue;
      }
    }
    const Eigen::Matrix3d normal = X.transpose() * X;
    const Eigen::Vector3d rhs = X.transpose() * z;
    const Eigen::Vector3d sol = normal.fullPivLu().solve(rhs);
    const Plane fit = fit_plane(pts).plane;
    worst = std::max({worst, std::abs(fit.a - sol(0)), std::abs(fit.b - sol(1)),
                      std::abs(fit.c - sol(2))});
  }
  return {worst <= 1e-9, "1000 point sets, max |coefficient difference| = " + fmt(worst, 3)};
}

// ---------------------------------------------------------------------------------------

Outcome criterion_5() {
  Rng rng(0xC1EA2005);
  std::size_t graphs = 0, queries = 0, mismatch_bf = 0, mismatch_dij = 0, max_vertices = 0;
  std::size_t astar_more_expansions = 0;
  while (graphs < 100) {
    const int side = rng.integer(40, 80);
    const TerrainTile tile = clear::testing::fractal(side, side, rng.uniform(5, 30),
                                                     rng.uniform(20, 200), rng.bits(),
                                                     rng.uniform(0.0, 0.25));
    const int kind = rng.integer(0, 3);
    const int budget = rng.integer(20, 450);
    BudgetOptions opts;
    Decomposition d;
    if (kind == 0) {
      ClearParams p;
      p.bsd.n = std::min(budget, 300);
      p.bsd.alpha_bdy = rng.uniform(0, 1);
      p.fit.epsilon = rng.uniform(1, 10);
      d = decompose_clear(tile, p);
    } else {
      d = decompose_to_budget(tile, static_cast<Method>(kind), budget, opts);
    }
    if (d.regions.size() > 500 || d.regions.size() < 2) continue;
    CostWeights w;
    w.w_f = rng.uniform(0, 2);
    w.w_s = rng.uniform(0, 2);
    w.w_r = rng.uniform(0, 2);
    w.w_theta = rng.uniform(0, 0.5);
    w.heading_mode = rng.integer(0, 1) ? HeadingMode::literal : HeadingMode::perpendicular;
    w.friction_mode = rng.integer(0, 1) ? FrictionMode::destination : FrictionMode::average;
    const auto regions = mark_traversability(d.regions, tile.classes, w.s_max);
    const RegionGraph g = build_graph(regions, tile.classes, w, tile.cell_size);
    ++graphs;
    max_vertices = std::max(max_vertices, g.vertex_count());
    const RegionLocator locator(regions, tile.cell_size);
    for (int q = 0; q < 5; ++q) {
      const auto s = random_traversable_point(rng, tile, regions, locator, nullptr);
      const auto t = random_traversable_point(rng, tile, regions, locator, nullptr);
      if (!s || !t) continue;
      ++queries;
      const int sv = static_cast<int>(locator.find_index(*s));
      const int tv = static_cast<int>(locator.find_index(*t));
      const auto bf = clear::testing::bellman_ford(g, sv);
      const SearchResult a = graph_search(g, sv, tv, w, SearchAlgorithm::astar);
      const SearchResult dj = graph_search(g, sv, tv, w, SearchAlgorithm::dijkstra);
      const double expect = bf[static_cast<std::size_t>(tv)];
      const bool reach = std::isfinite(expect);
      if (a.found != reach || (reach && a.cost != expect)) ++mismatch_bf;
      if (a.found != dj.found || (a.found && a.cost != dj.cost)) ++mismatch_dij;
      if (a.expanded > dj.expanded) ++astar_more_expansions;
      const PlanQuery query{*s, *t, w};
      g_audit.region_plan(plan_region(g, regions, query, SearchAlgorithm::astar), regions,
                          tile.classes);
      g_audit.region_plan(plan_region(g, regions, query, SearchAlgorithm::dijkstra), regions,
                          tile.classes);
    }
  }
  return {mismatch_bf == 0 && mismatch_dij == 0,
          std::to_string(graphs) + " graphs (max " + std::to_string(max_vertices) +
              " vertices), " + std::to_string(queries) + " queries: " +
              std::to_string(mismatch_bf) + " A*/Bellman-Ford and " +
              std::to_string(mismatch_dij) + " A*/Dijkstra mismatches; A* expanded more than "
              "Dijkstra on " + std::to_string(astar_more_expansions)};
}

// ---------------------------------------------------------------------------------------
// Planning experiments on synthetic mixed-landcover terrain.

struct PlanningSetup {
  double cell_size = 10.0;
  double relief = 80.0;
  ClearParams clear;
};

PlanningSetup planning_setup(int n_seeds) {
  PlanningSetup s;
  s.clear.bsd.n = n_seeds;
  s.clear.bsd.alpha_bdy = 0.0;  // flatness-only seeding, the planning-oriented setting
  s.clear.fit.epsilon = 2.0;
  return s;
}

Outcome criterion_6() {
  Rng rng(0xC1EA2006);
  const PlanningSetup setup = planning_setup(1500);
  std::vector<double> ratios;
  double sum_clear = 0.0, sum_grid = 0.0;
  std::size_t region_total = 0;
  for (int t = 0; t < 10; ++t) {
    const TerrainTile tile =
        clear::testing::fractal(200, 200, setup.cell_size, setup.relief, rng.bits());
    const Decomposition d = decompose_clear(tile, setup.clear);
    region_total += d.regions.size();
    const CostWeights w;
    const auto regions = mark_traversability(d.regions, tile.classes, w.s_max);
    const RegionGraph g = build_graph(regions, tile.classes, w, tile.cell_size);
    const RegionLocator locator(regions, tile.cell_size);
    const GridCostField field = grid_cost_field(tile, w.s_max);
    int pairs = 0;
    for (int attempt = 0; pairs < 10 && attempt < 500; ++attempt) {
      const auto s = random_traversable_point(rng, tile, regions, locator, &field);
      const auto e = random_traversable_point(rng, tile, regions, locator, &field);
      if (!s || !e || distance(*s, *e) < 0.25 * tile.width_m()) continue;
      const PlanQuery q{*s, *e, w};
      const PlanResult pr = plan_region(g, regions, q);
      const PlanResult pg = plan_grid(field, q);
      if (!pr.reachable || !pg.reachable) continue;
      g_audit.region_plan(pr, regions, tile.classes);
      g_audit.grid_plan(pg, field, tile);
      ratios.push_back(pr.total_cost / pg.total_cost);
      sum_clear += pr.total_cost;
      sum_grid += pg.total_cost;
      ++pairs;
    }
  }
  const double mean_ratio =
      std::accumulate(ratios.begin(), ratios.end(), 0.0) / static_cast<double>(ratios.size());
  return {ratios.size() == 100 && mean_ratio <= 1.15,
          std::to_string(ratios.size()) + " pairs, mean region/grid cost ratio " +
              fmt(mean_ratio) + " (ratio of sums " + fmt(sum_clear / sum_grid) + "), mean " +
              fmt(region_total / 10.0) + " regions per tile"};
}

Outcome criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(0xC1EA2007);
  const PlanningSetup setup = planning_setup(1200);
  const TerrainTile tile =
      clear::testing::fractal(300, 300, setup.cell_size, setup.relief, rng.bits());
  const Decomposition d = decompose_clear(tile, setup.clear);
  const CostWeights w;
  const auto regions = mark_traversability(d.regions, tile.classes, w.s_max);
  const RegionGraph g = build_graph(regions, tile.classes, w, tile.cell_size);
  const RegionLocator locator(regions, tile.cell_size);
  const GridCostField field = grid_cost_field(tile, w.s_max);
  double region_time = 0.0, grid_time = 0.0;
  int queries = 0;
  for (int attempt = 0; queries < 10 && attempt < 500; ++attempt) {
    const auto s = random_traversable_point(rng, tile, regions, locator, &field);
    const auto e = random_traversable_point(rng, tile, regions, locator, &field);
    if (!s || !e || distance(*s, *e) < 0.4 * tile.width_m()) continue;
    const PlanQuery q{*s, *e, w};
    const PlanResult pr = plan_region(g, regions, q);
    const PlanResult pg = plan_grid(field, q);
    if (!pr.reachable || !pg.reachable) continue;
    g_audit.region_plan(pr, regions, tile.classes);
    g_audit.grid_plan(pg, field, tile);
    region_time += pr.plan_time_s;
    grid_time += pg.plan_time_s;
    ++queries;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double ratio = region_time / grid_time;
  return {queries == 10 && regions.size() <= 2000 && ratio <= 0.2 && total <= 300.0,
          std::to_string(regions.size()) + " regions, " + std::to_string(queries) +
              " queries: mean region search " + fmt(1e3 * region_time / queries) +
              " ms vs grid A* " + fmt(1e3 * grid_time / queries) + " ms (ratio " + fmt(ratio) +
              "), experiment " + fmt(total) + " s"};
}

// ---------------------------------------------------------------------------------------

Outcome criterion_8() {
  SynthSpec spec;
  spec.kind = "diagonal";
  spec.width = spec.height = 100;
  spec.cell_size = 10.0;
  const TerrainTile tile = synth_tile(spec, 1);
  BudgetOptions opts;
  opts.clear.bsd.alpha_bdy = 1.0;
  bool pass = true;
  std::string detail;
  for (int budget : {50, 100, 200}) {
    const Decomposition c = decompose_to_budget(tile, Method::clear, budget, opts);
    const Decomposition g = decompose_to_budget(tile, Method::grid, budget, opts);
    const double mc = evaluate(tile, c.regions, 0).miou;
    const double mg = evaluate(tile, g.regions, 0).miou;
    pass = pass && mc >= mg;
    detail += "budget " + std::to_string(budget) + ": clear " + fmt(mc) + " (" +
              std::to_string(c.regions.size()) + " regions) vs grid " + fmt(mg) + " (" +
              std::to_string(g.regions.size()) + "); ";
  }
  return {pass, detail};
}

// Quadtree anchors the budget (RMSE-threshold search); CLEAR then uses the same threshold
// and searches its seed count for the quadtree's region count.
Outcome criterion_9() {
  SynthSpec spec;
  spec.kind = "hill";
  spec.width = spec.height = 100;
  spec.cell_size = 10.0;
  const TerrainTile tile = synth_tile(spec, 1);
  BudgetOptions opts;
  opts.quadtree_min_area = 4;
  const Decomposition q = decompose_to_budget(tile, Method::quadtree, 200, opts);
  opts.clear.fit.epsilon = q.resolution;
  const Decomposition c = decompose_to_budget(tile, Method::clear, 200, opts);
  const double rc = evaluate(tile, c.regions, 0).rmse_m;
  const double rq = evaluate(tile, q.regions, 0).rmse_m;
  const int diff = std::abs(static_cast<int>(q.regions.size()) - static_cast<int>(c.regions.size()));
  return {rc <= rq && diff <= 5,
          "epsilon " + fmt(q.resolution) + " m: clear " + std::to_string(c.regions.size()) +
              " regions (" + fmt(c.resolution) + " seeds) rmse " + fmt(rc) + " m vs quadtree " +
              std::to_string(q.regions.size()) + " regions rmse " + fmt(rq) + " m"};
}

Outcome criterion_10() {
  Rng rng(0xC1EA2010);
  constexpr int kSide = 100, kShift = 10;
  double bsd_sum = 0.0, qt_sum = 0.0;
  for (int t = 0; t < 10; ++t) {
    const TerrainTile parent = clear::testing::fractal(kSide + kShift, kSide + kShift, 10.0, 80.0,
                                                       rng.bits());
    const TerrainTile a = crop(parent, 0, 0, kSide, kSide);
    const TerrainTile b = crop(parent, kShift, kShift, kSide, kSide);
    const RepeatFrame frame{kShift, kShift, kSide, kSide, kSide, kSide, parent.cell_size};

    ClearParams p;
    p.bsd.n = 2000;
    p.bsd.alpha_bdy = 1.0;
    auto cells_of = [&](const TerrainTile& tile) {
      std::vector<Ring> rings;
      for (const auto& c : decompose_clear(tile, p).cells) rings.push_back(c.vertices);
      return rings;
    };
    bsd_sum += repeatability(cells_of(a), cells_of(b), frame).repeat_ratio;

    QuadtreeParams qp;
    qp.min_area = 16;
    qp.epsilon = 1.0;
    auto leaves_of = [&](const TerrainTile& tile) {
      std::vector<Ring> rings;
      for (const auto& r : quadtree_decompose(tile, qp).regions) rings.push_back(r.polygon);
      return rings;
    };
    qt_sum += repeatability(leaves_of(a), leaves_of(b), frame).repeat_ratio;
  }
  const double bsd = bsd_sum / 10.0, qt = qt_sum / 10.0;
  return {bsd >= 0.90 && qt <= 0.50,
          "mean repeat ratio: BSD " + fmt(bsd) + ", quadtree " + fmt(qt)};
}

Outcome criterion_11() {
  return {g_audit.plans > 0 && g_audit.violations == 0,
          std::to_string(g_audit.plans) + " plans, " + std::to_string(g_audit.steps) +
              " visited regions/pixels, " + std::to_string(g_audit.violations) + " violations" +
              (g_audit.first_violation.empty() ? "" : " (first: " + g_audit.first_violation + ")")};
}

// ---------------------------------------------------------------------------------------

Outcome criterion_12() {
  Rng rng(0xC1EA2012);
  std::size_t failures = 0;
  for (int i = 0; i < 20; ++i) {
    const TerrainTile tile = clear::testing::fractal(rng.integer(20, 80), rng.integer(20, 80),
                                                     rng.uniform(1, 30), rng.uniform(5, 100),
                                                     rng.bits(), rng.uniform(0, 0.3));
    ClearParams p;
    p.bsd.n = rng.integer(5, 80);
    const Decomposition d = decompose_clear(tile, p);
    std::vector<Ring> rings;
    for (const auto& r : d.regions) rings.push_back(r.polygon);
    const RepeatFrame frame{0, 0, tile.width, tile.height, tile.width, tile.height, tile.cell_size};
    const RepeatResult rep = repeatability(rings, rings, frame);
    const double psi = complexity_psi(tile, rng.uniform(0, 1), 2 * rng.integer(1, 3) + 1);
    if (rmse(tile.elevation, tile.elevation) != 0.0) ++failures;
    if (miou(tile.landcover, tile.landcover).miou != 1.0) ++failures;
    if (jsd_retention(tile.landcover, tile.landcover) != 1.0) ++failures;
    if (rep.mean_best_iou != 1.0 || rep.repeat_ratio != 1.0) ++failures;
    if (!(psi >= 0.0 && psi <= 1.0)) ++failures;
  }

  // 10x10 single-pixel checkerboard, k = 3. Interior pixels see 4 differing neighbours of
  // 8, edge pixels 3 and corners 2: F = (64*4 + 32*3 + 4*2) / (100 * 8) = 0.45.
  Grid<int> board(10, 10);
  for (int r = 0; r < 10; ++r)
    for (int c = 0; c < 10; ++c) board(r, c) = (r + c) % 2;
  const auto legend8 = default_class_table();
  const ClassTable legend2({legend8.at(0), legend8.at(1)});
  const TerrainTile two = make_tile(Grid<double>(10, 10, 0.0), board, legend2, 1.0);
  const TerrainTile eight = make_tile(Grid<double>(10, 10, 0.0), board, legend8, 1.0);
  const double f_hand = 0.45;
  // Against the 8-class legend: p = (1/2, 1/2, 0 x 6), u = 1/8 each, m = (5/16, 5/16, 1/16 x 6).
  const double jsd8 = 0.5 * (std::log2(1.6) + 0.25 * std::log2(0.4) + 0.75);
  const double psi2 = complexity_psi(two, 0.5, 3);
  const double psi8 = complexity_psi(eight, 0.5, 3);
  const double err2 = std::abs(psi2 - 0.5 * f_hand);
  const double err8 = std::abs(psi8 - (0.5 * std::sqrt(jsd8) + 0.5 * f_hand));
  const bool hand_ok = err2 <= 1e-12 && err8 <= 1e-12;
  return {failures == 0 && hand_ok,
          "20 fixtures, " + std::to_string(failures) + " identity failures; checkerboard psi " +
              fmt(psi2, 15) + " / " + fmt(psi8, 15) + " (errors " + fmt(err2, 2) + ", " +
              fmt(err8, 2) + ")"};
}

// ---------------------------------------------------------------------------------------

std::string g_cli;
fs::path g_work = fs::temp_directory_path() / "clear_acceptance";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome criterion_13() {
  if (g_cli.empty()) return {false, "no --cli path given"};
  const fs::path root = g_work / "determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string tile_dir = (root / "tile").string();
  auto run = [&](const std::string& args) {
    const std::string cmd = "\"" + g_cli + "\" " + args + " > \"" + (root / "log.txt").string() + "\" 2>&1";
    return std::system(cmd.c_str());
  };
  if (run("synth --kind fractal --width 80 --height 80 --cell-size 10 --rng-seed 7 --out \"" +
          tile_dir + "\"") != 0)
    return {false, "synth failed: " + slurp(root / "log.txt")};
  std::vector<std::string> outputs;
  for (const char* name : {"run1", "run2"}) {
    const std::string out = (root / name).string();
    if (run("compare --tile \"" + tile_dir +
            "\" --methods clear,grid,hex,quadtree --budgets 20,60 --pairs 4 --rng-seed 3 "
            "--no-timings --out \"" + out + "\"") != 0)
      return {false, "compare failed: " + slurp(root / "log.txt")};
    outputs.push_back(out);
  }
  std::size_t files = 0, differing = 0;
  for (const auto& entry : fs::recursive_directory_iterator(outputs[0])) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), outputs[0]);
    const auto ext = rel.extension();
    if (ext != ".csv" && ext != ".json") continue;
    ++files;
    if (slurp(entry.path()) != slurp(fs::path(outputs[1]) / rel)) ++differing;
  }
  const bool has_csv = fs::exists(fs::path(outputs[0]) / "compare.csv");
  return {has_csv && files > 1 && differing == 0,
          std::to_string(files) + " CSV/JSON outputs compared, " + std::to_string(differing) +
              " differ"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      g_cli = argv[++i];
    } else if (arg == "--work" && i + 1 < argc) {
      g_work = argv[++i];
    } else if (arg == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      for (std::string item; std::getline(ss, item, ',');) only.insert(std::stoi(item));
    } else {
      std::cerr << "usage: clear_acceptance [--cli PATH] [--only N,...] [--work DIR]\n";
      return 2;
    }
  }

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"rmse guarantee", criterion_1},
      {"convexity", criterion_2},
      {"voronoi correctness", criterion_3},
      {"plane-fit oracle", criterion_4},
      {"planner optimality", criterion_5},
      {"abstraction overhead", criterion_6},
      {"planning speedup", criterion_7},
      {"semantic fidelity ordering", criterion_8},
      {"geometric fidelity ordering", criterion_9},
      {"repeatability", criterion_10},
      {"traversability audit", criterion_11},
      {"metric identities", criterion_12},
      {"determinism", criterion_13},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(number)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failed;
    std::printf("[%s] %2d %-28s %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", number,
                criteria[i].first, out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
