#include <doctest.h>

#include <cmath>

#include "clear/decompose.hpp"
#include "clear/error.hpp"
#include "clear/kernels.hpp"
#include "clear/metrics.hpp"
#include "helpers.hpp"
#include "support/fixtures.hpp"

using namespace clear;
using namespace clear::testing;

namespace {

double kl_bits(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0) s += p[i] * std::log2(p[i] / q[i]);
  return s;
}

double direct_jsd(const std::vector<double>& p, const std::vector<double>& q) {
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m[i] = 0.5 * (p[i] + q[i]);
  return 0.5 * kl_bits(p, m) + 0.5 * kl_bits(q, m);
}

Region full_region(int id, Ring polygon, Plane plane, int landcover) {
  Region r;
  r.id = id;
  r.polygon = std::move(polygon);
  r.centroid = area_centroid(r.polygon);
  r.plane = plane;
  r.landcover = landcover;
  r.pixel_count = 1;
  return r;
}

}  // namespace

TEST_CASE("rmse") {
  Rng rng(3);
  Grid<double> a(5, 5), b(5, 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = rng.uniform(-10, 10);
    b[i] = rng.uniform(-10, 10);
  }
  CHECK(rmse(a, a) == 0.0);
  Grid<double> shifted = a;
  for (auto& v : shifted.values()) v += 2.0;
  CHECK(rmse(a, shifted) == doctest::Approx(2.0));
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
  CHECK(rmse(a, b) == doctest::Approx(std::sqrt(sq / 25.0)));
  CHECK_THROWS_AS(rmse(a, Grid<double>(4, 5)), DataError);
}

TEST_CASE("miou") {
  Grid<int> truth(4, 4, 0);
  CHECK(miou(truth, truth).miou == 1.0);
  CHECK(miou(truth, Grid<int>(4, 4, 1)).per_class.at(0) == 0.0);

  // Ten class-0 and six class-1 truth pixels. Confusion (truth -> estimate):
  // 0->0: 6, 0->1: 4, 1->1: 2, 1->2: 4. IoU_0 = 6/10, IoU_1 = 2/10.
  Grid<int> est(4, 4, 0);
  const int truth_labels[16] = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1};
  const int est_labels[16] = {0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2};
  for (std::size_t i = 0; i < 16; ++i) {
    truth[i] = truth_labels[i];
    est[i] = est_labels[i];
  }
  const IouResult r = miou(truth, est);
  CHECK(r.per_class.size() == 2);
  CHECK(r.per_class.at(0) == doctest::Approx(0.6));
  CHECK(r.per_class.at(1) == doctest::Approx(0.2));
  CHECK(r.miou == doctest::Approx(0.4));
}

TEST_CASE("jsd and jsd_retention") {
  const std::vector<double> p = {0.5, 0.3, 0.2}, q = {0.1, 0.1, 0.8};
  CHECK(jsd(p, q) == doctest::Approx(direct_jsd(p, q)).epsilon(1e-13));
  CHECK(jsd(p, p) == 0.0);
  const std::vector<double> a = {1, 0}, b = {0, 1};
  CHECK(jsd(a, b) == doctest::Approx(1.0));

  Grid<int> t(5, 2, 0), e(5, 2, 0);
  CHECK(jsd_retention(t, t) == 1.0);
  CHECK(jsd_retention(t, Grid<int>(5, 2, 3)) == doctest::Approx(0.0));
  // Three classes: truth counts {5, 3, 2}, estimate counts {1, 1, 8}.
  const int tl[10] = {0, 0, 0, 0, 0, 1, 1, 1, 2, 2};
  const int el[10] = {0, 1, 2, 2, 2, 2, 2, 2, 2, 2};
  for (std::size_t i = 0; i < 10; ++i) {
    t[i] = tl[i];
    e[i] = el[i];
  }
  CHECK(jsd_retention(t, e) == doctest::Approx(1.0 - direct_jsd(p, q)).epsilon(1e-13));
}

TEST_CASE("complexity score") {
  std::vector<LandcoverClass> four;
  for (int i = 0; i < 4; ++i) four.push_back({i, "c" + std::to_string(i), 0.1, 0.1, true});
  const ClassTable legend(four);

  SUBCASE("constant map") {
    const TerrainTile t = make_tile(Grid<double>(6, 6), Grid<int>(6, 6, 2), legend, 1.0);
    const ComplexityParts parts = complexity_parts(t, 0.5, 3);
    CHECK(parts.heterogeneity == 0.0);
    const std::vector<double> delta = {0, 0, 1, 0}, u = {0.25, 0.25, 0.25, 0.25};
    CHECK(parts.jsd_norm == doctest::Approx(std::sqrt(direct_jsd(delta, u))));
    CHECK(parts.psi == doctest::Approx(0.5 * parts.jsd_norm));
  }
  SUBCASE("uniform class distribution") {
    Grid<int> l(4, 4);
    for (std::size_t i = 0; i < 16; ++i) l[i] = static_cast<int>(i % 4);
    const TerrainTile t = make_tile(Grid<double>(4, 4), l, legend, 1.0);
    CHECK(complexity_parts(t, 0.5, 3).jsd_norm == doctest::Approx(0.0));
  }
  SUBCASE("checkerboard against an exhaustive window count") {
    Grid<int> board(10, 10);
    for (int r = 0; r < 10; ++r)
      for (int c = 0; c < 10; ++c) board(r, c) = (r + c) % 2;
    const ClassTable two = two_class_legend();
    const TerrainTile t = make_tile(Grid<double>(10, 10), board, two, 1.0);
    double f = 0.0;
    for (int r = 0; r < 10; ++r)
      for (int c = 0; c < 10; ++c) {
        int differ = 0;
        for (int dr = -1; dr <= 1; ++dr)
          for (int dc = -1; dc <= 1; ++dc)
            if ((dr || dc) && board.in_bounds(r + dr, c + dc) && board(r + dr, c + dc) != board(r, c))
              ++differ;
        f += differ / 8.0;
      }
    f /= 100.0;
    const ComplexityParts parts = complexity_parts(t, 0.5, 3);
    CHECK(parts.heterogeneity == doctest::Approx(f).epsilon(1e-14));
    CHECK(parts.jsd_norm == doctest::Approx(0.0));
    CHECK(parts.psi == doctest::Approx(0.5 * f).epsilon(1e-14));
  }
  SUBCASE("bounded and invariant under class relabelling") {
    const TerrainTile t = fractal(30, 30, 5.0, 40.0, 14);
    for (double alpha : {0.0, 0.3, 1.0}) {
      const double psi = complexity_psi(t, alpha, 5);
      CHECK(psi >= 0.0);
      CHECK(psi <= 1.0);
    }
    std::vector<LandcoverClass> rev;
    for (const auto& c : t.classes.classes()) rev.push_back({7 - c.id, c.name, c.friction, c.roughness, c.traversable});
    Grid<int> relabelled = t.landcover;
    for (auto& v : relabelled.values()) v = 7 - v;
    const TerrainTile u = make_tile(t.elevation, relabelled, ClassTable(rev), t.cell_size);
    CHECK(complexity_psi(u, 0.5, 5) == doctest::Approx(complexity_psi(t, 0.5, 5)).epsilon(1e-14));
    CHECK_THROWS_AS(complexity_psi(t, 1.5, 5), ConfigError);
    CHECK_THROWS_AS(complexity_psi(t, 0.5, 4), ConfigError);
  }
}

TEST_CASE("repeatability and polygon IoU") {
  const Ring sq = rectangle(0, 0, 4, 4);
  const Ring half = rectangle(2, 0, 6, 4);
  CHECK(polygon_iou(sq, sq) == 1.0);
  CHECK(polygon_iou(sq, half) == doctest::Approx(1.0 / 3.0));
  CHECK(polygon_iou(sq, rectangle(10, 10, 11, 11)) == 0.0);

  RepeatFrame frame{0, 0, 10, 10, 10, 10, 1.0};
  const std::vector<Ring> a = {sq, rectangle(4, 0, 10, 10), rectangle(0, 4, 4, 10)};
  const RepeatResult same = repeatability(a, a, frame);
  CHECK(same.mean_best_iou == doctest::Approx(1.0));
  CHECK(same.repeat_ratio == 1.0);

  const std::vector<Ring> one = {sq}, other = {half};
  const RepeatResult shifted = repeatability(one, other, frame);
  CHECK(shifted.mean_best_iou == doctest::Approx(1.0 / 3.0));
  CHECK(shifted.repeat_ratio == 0.0);

  const std::vector<Ring> far = {rectangle(6, 6, 9, 9)};
  const RepeatResult disjoint = repeatability(one, far, frame);
  CHECK(disjoint.mean_best_iou == 0.0);
  CHECK(disjoint.repeat_ratio == 0.0);

  // B is A's window moved two pixels east: B's (r, c) is A's (r, c + 2).
  RepeatFrame moved{0, 2, 10, 10, 10, 10, 1.0};
  const std::vector<Ring> b_frame = {rectangle(-2, 0, 2, 4)};
  const RepeatResult aligned = repeatability(one, b_frame, moved);
  CHECK(aligned.compared == 1);
  CHECK(aligned.mean_best_iou == doctest::Approx(1.0));
}

TEST_CASE("rasterize") {
  SUBCASE("single flat region") {
    const std::vector<Region> rs = {full_region(0, rectangle(0, 0, 8, 6), {0, 0, 3.5}, 1)};
    const Reconstruction rec = rasterize(rs, 8, 6, 1.0);
    for (double v : rec.elevation.values()) CHECK(v == 3.5);
    for (int v : rec.landcover.values()) CHECK(v == 1);
  }
  SUBCASE("two half-tile regions") {
    const std::vector<Region> rs = {full_region(0, rectangle(0, 0, 4, 6), {0, 0, 1}, 0),
                                    full_region(1, rectangle(4, 0, 8, 6), {0.5, 0, 0}, 1)};
    const Reconstruction rec = rasterize(rs, 8, 6, 1.0);
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 8; ++c) {
        CHECK(rec.landcover(r, c) == (c < 4 ? 0 : 1));
        CHECK(rec.elevation(r, c) == doctest::Approx(c < 4 ? 1.0 : 0.5 * (c + 0.5)));
      }
  }
  SUBCASE("planar tile round trip and serial/OpenMP agreement") {
    SynthSpec spec;
    spec.kind = "ramp";
    spec.width = 50;
    spec.height = 40;
    spec.cell_size = 3.0;
    spec.params = {{"a", 0.2}, {"b", 0.1}, {"c", -4.0}};
    const TerrainTile t = synth_tile(spec, 0);
    ClearParams p;
    p.bsd.n = 35;
    const Decomposition d = decompose_clear(t, p);
    const Reconstruction rec = rasterize(d.regions, t.width, t.height, t.cell_size);
    CHECK(rmse(t.elevation, rec.elevation) < 1e-9);
    const auto s = kernels::serial::rasterize(d.regions, t.width, t.height, t.cell_size);
    const auto o = kernels::omp::rasterize(d.regions, t.width, t.height, t.cell_size);
    CHECK(s.elevation == o.elevation);
    CHECK(s.landcover == o.landcover);
    CHECK(s.region == o.region);
  }
  SUBCASE("too many uncovered pixels is an error") {
    const std::vector<Region> rs = {full_region(0, rectangle(0, 0, 2, 2), {0, 0, 0}, 0)};
    CHECK_THROWS_AS(rasterize(rs, 8, 8, 1.0), DataError);
  }
}

TEST_CASE("evaluate on a self-reconstruction") {
  const TerrainTile t = fractal(40, 40, 5.0, 50.0, 19);
  const auto d = regions_from_cells(t, grid_decompose_side(t, 1), 0.35, "grid");
  const EvalReport r = evaluate(t, d.regions, 0.25);
  CHECK(r.rmse_m < 1e-12);
  CHECK(r.miou == 1.0);
  CHECK(r.jsd_retention == 1.0);
  CHECK(r.region_count == 1600);
  CHECK(r.abstraction_time_s == 0.25);
}
