#include "clear/planefit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numbers>

#include "clear/error.hpp"

namespace clear {

double plane_rmse(const Plane& plane, std::span<const Point3> points) {
  if (points.empty()) return 0.0;
  double ss = 0.0;
  for (const auto& p : points) {
    const double r = p.z - plane(p.x, p.y);
    ss += r * r;
  }
  return std::sqrt(ss / static_cast<double>(points.size()));
}

PlaneFit fit_plane(std::span<const Point3> points) {
  if (points.empty()) throw DataError("cannot fit a plane to an empty point set");
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0, mz = 0.0;
  for (const auto& p : points) {
    mx += p.x;
    my += p.y;
    mz += p.z;
  }
  mx /= n;
  my /= n;
  mz /= n;

  PlaneFit fit;
  fit.plane = {0.0, 0.0, mz};
  if (points.size() >= 3) {
    // Normal equations on centred coordinates.
    double sxx = 0.0, syy = 0.0, sxy = 0.0, sxz = 0.0, syz = 0.0;
    for (const auto& p : points) {
      const double dx = p.x - mx, dy = p.y - my, dz = p.z - mz;
      sxx += dx * dx;
      syy += dy * dy;
      sxy += dx * dy;
      sxz += dx * dz;
      syz += dy * dz;
    }
    const double det = sxx * syy - sxy * sxy;
    if (sxx > 0.0 && syy > 0.0 && det > 1e-12 * sxx * syy) {
      const double a = (sxz * syy - syz * sxy) / det;
      const double b = (syz * sxx - sxz * sxy) / det;
      fit.plane = {a, b, mz - a * mx - b * my};
    }
  }
  fit.rmse = plane_rmse(fit.plane, points);
  return fit;
}

double split_median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  double m = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  // A median equal to the minimum would leave the lower half empty; move it to the next
  // distinct value so any axis with two distinct coordinates still splits.
  if (!(values.front() < m)) {
    auto next = std::upper_bound(values.begin(), values.end(), values.front());
    if (next != values.end()) m = *next;
  }
  return m;
}

std::optional<std::vector<PointSet>> quadrant_split(const PointSet& set) {
  if (set.size() < 2) return std::nullopt;
  std::vector<double> xs, ys;
  xs.reserve(set.size());
  ys.reserve(set.size());
  for (const auto& p : set.points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  const double xm = split_median(std::move(xs));
  const double ym = split_median(std::move(ys));

  std::vector<PointSet> quads(4);
  const bool with_pixels = set.pixels.size() == set.points.size();
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& p = set.points[i];
    const int q = (p.x < xm ? 0 : 1) + (p.y < ym ? 0 : 2);
    quads[static_cast<std::size_t>(q)].points.push_back(p);
    quads[static_cast<std::size_t>(q)].labels.push_back(set.labels[i]);
    if (with_pixels) quads[static_cast<std::size_t>(q)].pixels.push_back(set.pixels[i]);
  }
  std::erase_if(quads, [](const PointSet& s) { return s.empty(); });
  if (quads.size() < 2) return std::nullopt;
  return quads;
}

int label_mode(std::span<const int> labels) {
  std::map<int, int> counts;
  for (int l : labels) ++counts[l];
  int best = 0, best_count = -1;
  for (const auto& [label, count] : counts) {
    if (count > best_count) {
      best = label;
      best_count = count;
    }
  }
  return best;
}

double grade_percent(const Plane& plane) {
  return 100.0 * std::sqrt(plane.a * plane.a + plane.b * plane.b);
}

double aspect_degrees(const Plane& plane) {
  if (plane.a == 0.0 && plane.b == 0.0) return 0.0;
  // Downslope vector (-a, -b) in map x/y; east = -a, north = +b (y grows southwards).
  double deg = std::atan2(-plane.a, plane.b) * 180.0 / std::numbers::pi;
  deg = std::fmod(deg + 360.0, 360.0);
  return deg >= 360.0 ? 0.0 : deg;
}

Region region_attributes(Region region, const ClassTable& classes, double s_max) {
  region.grade_pct = grade_percent(region.plane);
  region.flat = region.plane.a == 0.0 && region.plane.b == 0.0;
  region.aspect_deg = aspect_degrees(region.plane);
  region.traversable = region.grade_pct <= 100.0 * s_max && classes.at(region.landcover).traversable;
  return region;
}

namespace {

// Convex hull of the pixel footprints (squares of side cell_size centred on each point).
Ring footprint_hull(const std::vector<Point3>& points, double cell_size) {
  std::vector<std::pair<double, double>> yx;
  yx.reserve(points.size());
  for (const auto& p : points) yx.emplace_back(p.y, p.x);
  std::sort(yx.begin(), yx.end());
  const double h = 0.5 * cell_size;
  std::vector<Vec2> corners;
  for (std::size_t i = 0; i < yx.size();) {
    std::size_t j = i;
    while (j < yx.size() && yx[j].first == yx[i].first) ++j;
    const double y = yx[i].first, x0 = yx[i].second, x1 = yx[j - 1].second;
    corners.push_back({x0 - h, y - h});
    corners.push_back({x0 - h, y + h});
    corners.push_back({x1 + h, y - h});
    corners.push_back({x1 + h, y + h});
    i = j;
  }
  return convex_hull(std::move(corners));
}

Region make_region(const PointSet& set, const PlaneFit& fit, Ring polygon,
                   const RegionContext& ctx, int id) {
  Region region;
  region.id = id;
  region.cell_id = ctx.cell_id;
  region.plane = fit.plane;
  region.fit_rmse = fit.rmse;
  region.polygon = std::move(polygon);
  region.centroid = area_centroid(region.polygon);
  region.landcover = label_mode(set.labels);
  region.pixel_count = static_cast<int>(set.size());
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  for (const auto& p : set.points) {
    lo = std::min(lo, p.z);
    hi = std::max(hi, p.z);
    sum += p.z;
  }
  region.elev_min = lo;
  region.elev_max = hi;
  region.elev_mean = sum / static_cast<double>(set.size());
  if (ctx.classes) {
    region = region_attributes(std::move(region), *ctx.classes, ctx.s_max);
  } else {
    region.grade_pct = grade_percent(region.plane);
    region.flat = region.plane.a == 0.0 && region.plane.b == 0.0;
    region.aspect_deg = aspect_degrees(region.plane);
    region.traversable = region.grade_pct <= 100.0 * ctx.s_max;
  }
  return region;
}

Ring leaf_polygon(const PointSet& set, std::span<const Vec2> parent, double cell_size) {
  Ring hull = footprint_hull(set.points, cell_size);
  if (parent.size() >= 3) {
    Ring clipped = intersect_convex(hull, parent);
    const Box box = bounding_box(parent);
    clipped = normalize_ring(std::move(clipped), std::max(box.x1 - box.x0, box.y1 - box.y0));
    if (!clipped.empty()) return clipped;
  }
  const Box box = bounding_box(hull);
  return normalize_ring(std::move(hull), std::max(box.x1 - box.x0, box.y1 - box.y0));
}

}  // namespace

std::vector<Region> recursive_fit(const PointSet& cell, std::span<const Vec2> parent,
                                  const FitParams& params, const RegionContext& ctx,
                                  std::vector<std::pair<int, int>>* membership) {
  if (cell.empty()) throw DataError("recursive fit of an empty cell");
  if (!(params.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (params.a_min < 1) throw ConfigError("a_min must be >= 1");
  if (cell.labels.size() != cell.points.size())
    throw DataError("point and label counts differ");

  std::vector<Region> regions;
  std::deque<std::pair<PointSet, int>> queue;
  queue.emplace_back(cell, 0);
  while (!queue.empty()) {
    auto [set, depth] = std::move(queue.front());
    queue.pop_front();
    const PlaneFit fit = fit_plane(set.points);

    bool split_failed = false;
    if (fit.rmse > params.epsilon && static_cast<int>(set.size()) >= params.a_min) {
      if (auto parts = quadrant_split(set)) {
        for (auto& part : *parts) queue.emplace_back(std::move(part), depth + 1);
        continue;
      }
      split_failed = true;
    }

    const int id = ctx.first_id + static_cast<int>(regions.size());
    // An unsplit cell keeps the decomposition polygon itself; only subdivided leaves are
    // outlined by their footprint hull.
    Ring outline;
    if (depth == 0 && parent.size() >= 3) {
      const Box box = bounding_box(parent);
      outline = normalize_ring(Ring(parent.begin(), parent.end()),
                               std::max(box.x1 - box.x0, box.y1 - box.y0));
    } else {
      outline = leaf_polygon(set, parent, ctx.cell_size);
    }
    Region region = make_region(set, fit, std::move(outline), ctx, id);
    region.depth = depth;
    region.split_failed = split_failed;
    if (membership)
      for (int px : set.pixels) membership->emplace_back(px, id);
    regions.push_back(std::move(region));
  }
  return regions;
}

Region fit_single_region(const PointSet& set, std::span<const Vec2> polygon,
                         const RegionContext& ctx) {
  if (set.empty()) throw DataError("cannot fit a region without pixels");
  return make_region(set, fit_plane(set.points), Ring(polygon.begin(), polygon.end()), ctx,
                     ctx.first_id);
}

}  // namespace clear
