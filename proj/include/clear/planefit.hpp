#pragma once

#include <optional>
#include <span>
#include <vector>

#include "clear/geometry.hpp"
#include "clear/raster.hpp"

namespace clear {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// z = a*x + b*y + c, x/y in map metres.
struct Plane {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double x, double y) const { return a * x + b * y + c; }
  friend bool operator==(const Plane&, const Plane&) = default;
};

struct PlaneFit {
  Plane plane;
  double rmse = 0.0;
};

/// Ordinary least squares. Fewer than three points or a rank-deficient design gives the
/// horizontal plane through the mean elevation. Throws DataError on an empty input.
PlaneFit fit_plane(std::span<const Point3> points);

/// Root-mean-square vertical residual of `points` against `plane`.
double plane_rmse(const Plane& plane, std::span<const Point3> points);

// Points of one fitting unit together with their labels and raster indices.
struct PointSet {
  std::vector<Point3> points;
  std::vector<int> labels;
  std::vector<int> pixels;  // flat raster index per point; may be empty

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
};

/// Splits at the coordinate medians (x < x_m | x >= x_m crossed with y < y_m | y >= y_m),
/// in quadrant order (lo,lo), (hi,lo), (lo,hi), (hi,hi), empty quadrants dropped.
/// Returns nullopt when the points cannot be separated (all share one (x, y)).
std::optional<std::vector<PointSet>> quadrant_split(const PointSet& set);

/// Splitting coordinate used by quadrant_split (exposed for tests).
double split_median(std::vector<double> values);

struct FitParams {
  double epsilon = 10.0;  // RMSE tolerance, metres
  int a_min = 4;          // leaves smaller than this many pixels are not split
};

// One planar region: fitted plane, convex outline, dominant landcover and derived
// attributes used for planning.
struct Region {
  int id = 0;
  int cell_id = -1;  // decomposition cell the region came from
  Plane plane;
  double fit_rmse = 0.0;
  Ring polygon;
  Vec2 centroid;
  int landcover = 0;
  double grade_pct = 0.0;
  double aspect_deg = 0.0;  // compass bearing of steepest descent, 0 = north (-y)
  bool flat = true;         // zero gradient; aspect is 0 by convention
  double elev_min = 0.0;
  double elev_mean = 0.0;
  double elev_max = 0.0;
  int pixel_count = 0;
  bool traversable = true;
  int depth = 0;  // recursion depth of the leaf, root = 0
  bool split_failed = false;
};

/// Percent grade of a plane: 100 * sqrt(a^2 + b^2).
double grade_percent(const Plane& plane);

/// Compass bearing in [0, 360) of the steepest-descent direction; 0 for a flat plane.
double aspect_degrees(const Plane& plane);

/// Fills grade, aspect, the flat flag and traversability (grade <= 100 * s_max and the
/// class is traversable).
Region region_attributes(Region region, const ClassTable& classes, double s_max = 0.35);

struct RegionContext {
  double cell_size = 1.0;
  const ClassTable* classes = nullptr;
  double s_max = 0.35;
  int first_id = 0;
  int cell_id = -1;
};

/// Recursive planar fitting of one decomposition cell.
///
/// Breadth-first over a FIFO queue: a node becomes a leaf when its RMSE is within
/// epsilon, it holds fewer than a_min pixels, or it cannot be split. A cell that is never
/// split keeps `parent` as its polygon; otherwise each leaf's polygon is the convex hull of
/// its pixel footprints clipped to `parent`. The landcover is the
/// label mode (ties to the smaller id). Ids are assigned consecutively from first_id.
/// If `membership` is non-null, each point's pixel index receives its leaf id.
std::vector<Region> recursive_fit(const PointSet& cell, std::span<const Vec2> parent,
                                  const FitParams& params, const RegionContext& ctx,
                                  std::vector<std::pair<int, int>>* membership = nullptr);

/// Dominant label; ties resolve to the smallest id.
int label_mode(std::span<const int> labels);

/// Builds a single region from a point set without splitting (grid/hex baselines).
Region fit_single_region(const PointSet& set, std::span<const Vec2> polygon,
                         const RegionContext& ctx);

}  // namespace clear
