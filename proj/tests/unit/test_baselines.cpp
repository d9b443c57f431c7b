#include <doctest.h>

#include <cmath>

#include "clear/baselines.hpp"
#include "clear/decompose.hpp"
#include "clear/error.hpp"
#include "clear/geometry.hpp"
#include "helpers.hpp"
#include "support/fixtures.hpp"

using namespace clear;
using namespace clear::testing;

TEST_CASE("grid_decompose tiles the raster at the requested budget") {
  CHECK(grid_decompose(flat_tile(20, 20), 400).size() == 400);

  const auto four = grid_decompose(flat_tile(10, 10), 4);
  REQUIRE(four.size() == 4);
  for (const auto& c : four) CHECK(area(c.vertices) == doctest::Approx(25.0));

  // ceil(sqrt(100 / 9)) = 4: a 3 x 3 tiling with truncated last row and column.
  const auto nine = grid_decompose(flat_tile(10, 10), 9);
  CHECK(grid_side_for_budget(flat_tile(10, 10), 9) == 4);
  REQUIRE(nine.size() == 9);
  CHECK(area(nine.back().vertices) == doctest::Approx(4.0));

  const auto three = grid_decompose_side(flat_tile(10, 10), 3);
  CHECK(three.size() == 16);
  CHECK_THROWS_AS(grid_decompose(flat_tile(10, 10), 0), ConfigError);
}

TEST_CASE("hex_decompose") {
  const TerrainTile t = flat_tile(20, 20);
  const auto cells = hex_decompose(t, 448);
  CHECK(std::abs(static_cast<double>(cells.size()) - 448.0) <= 44.8);

  const auto one = hex_decompose(t, 1);
  CHECK(one.size() >= 1);

  for (int target : {1, 7, 60, 448}) {
    const auto cs = hex_decompose(flat_tile(23, 17, 3.0), target);
    double total = 0.0;
    for (const auto& c : cs) {
      CHECK(is_convex(c.vertices, geom_eps(3.0)));
      total += area(c.vertices);
    }
    CHECK(std::abs(total - 23 * 17 * 9.0) <= 1e-6 * 23 * 17 * 9.0);
  }
}

TEST_CASE("quadtree_decompose") {
  SUBCASE("planar tile is one leaf") {
    SynthSpec spec;
    spec.kind = "ramp";
    spec.width = 13;
    spec.height = 9;
    const auto q = quadtree_decompose(synth_tile(spec, 0), QuadtreeParams{0.01, 1});
    CHECK(q.regions.size() == 1);
  }
  SUBCASE("elevated corner block") {
    // 8x8 flat ground with a raised 2x2 block in the north-west corner. The root and the
    // north-west 4x4 quadrant split; the other three 4x4 quadrants and the four 2x2
    // children are planar: 3 + 4 = 7 leaves.
    Grid<double> e(8, 8, 0.0);
    e(0, 0) = e(0, 1) = e(1, 0) = e(1, 1) = 10.0;
    const TerrainTile t = make_tile(e, Grid<int>(8, 8, 0), two_class_legend(), 1.0);
    const auto q = quadtree_decompose(t, QuadtreeParams{0.1, 1});
    CHECK(q.regions.size() == 7);
    int small = 0;
    for (const auto& r : q.regions) small += r.pixel_count == 4;
    CHECK(small == 4);
  }
  SUBCASE("min_area 1 leaves are within epsilon or single pixels") {
    const TerrainTile t = fractal(24, 20, 5.0, 50.0, 9);
    const QuadtreeParams p{0.5, 1};
    const auto q = quadtree_decompose(t, p);
    int pixels = 0;
    for (const auto& r : q.regions) {
      CHECK((r.fit_rmse <= p.epsilon || r.pixel_count == 1));
      CHECK(is_convex(r.polygon, geom_eps(5.0)));
      pixels += r.pixel_count;
    }
    CHECK(pixels == 24 * 20);
    CHECK(quadtree_leaf_count(t, p) == static_cast<int>(q.regions.size()));
  }
}

TEST_CASE("budget matching lands near the budget for every method") {
  const TerrainTile t = fractal(60, 50, 10.0, 60.0, 12);
  BudgetOptions opts;  // default epsilon, so the seed count governs CLEAR's region count
  for (Method m : {Method::clear, Method::grid, Method::hex, Method::quadtree}) {
    const Decomposition d = decompose_to_budget(t, m, 80, opts);
    CHECK(d.method == method_name(m));
    INFO(method_name(m), " produced ", d.regions.size());
    CHECK(std::abs(static_cast<int>(d.regions.size()) - 80) <= 16);
    CHECK(d.resolution > 0.0);
  }

  // A tight tolerance floors the reachable count: even a single seed fits many leaves.
  opts.clear.fit.epsilon = 2.0;
  const Decomposition tight = decompose_to_budget(t, Method::clear, 80, opts);
  CHECK(tight.resolution == 1.0);
  CHECK(tight.regions.size() > 80);
  CHECK(parse_method("hex") == Method::hex);
  CHECK_THROWS_AS(parse_method("voronoi"), ConfigError);
}
