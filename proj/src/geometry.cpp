#include "clear/geometry.hpp"

#include <algorithm>
#include <limits>

namespace clear {

Box bounding_box(std::span<const Vec2> ring) {
  Box b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
        -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : ring) {
    b.x0 = std::min(b.x0, p.x);
    b.y0 = std::min(b.y0, p.y);
    b.x1 = std::max(b.x1, p.x);
    b.y1 = std::max(b.y1, p.y);
  }
  return b;
}

Ring rectangle(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

double signed_area(std::span<const Vec2> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return 0.0;
  // Shoelace about the first vertex for better conditioning far from the origin.
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) twice += cross(ring[i] - ring[0], ring[i + 1] - ring[0]);
  return 0.5 * twice;
}

double area(std::span<const Vec2> ring) { return std::abs(signed_area(ring)); }

Vec2 area_centroid(std::span<const Vec2> ring) {
  const std::size_t n = ring.size();
  if (n == 0) return {};
  double twice = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Vec2 a = ring[i] - ring[0], b = ring[i + 1] - ring[0];
    const double w = cross(a, b);
    twice += w;
    cx += w * (a.x + b.x);
    cy += w * (a.y + b.y);
  }
  if (twice == 0.0) {
    Vec2 mean{};
    for (const auto& p : ring) mean = mean + p;
    return (1.0 / static_cast<double>(n)) * mean;
  }
  return {ring[0].x + cx / (3.0 * twice), ring[0].y + cy / (3.0 * twice)};
}

double perimeter(std::span<const Vec2> ring) {
  double total = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) total += distance(ring[i], ring[(i + 1) % ring.size()]);
  return total;
}

bool is_convex(std::span<const Vec2> ring, double eps) {
  const std::size_t n = ring.size();
  if (n < 3 || !(signed_area(ring) > 0.0)) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = ring[i], b = ring[(i + 1) % n], c = ring[(i + 2) % n];
    if (cross(b - a, c - b) < -eps) return false;
  }
  return true;
}

Ring clip_halfplane(std::span<const Vec2> ring, Vec2 normal, double offset) {
  Ring out;
  const std::size_t n = ring.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = ring[i], b = ring[(i + 1) % n];
    const double fa = dot(normal, a) - offset;
    const double fb = dot(normal, b) - offset;
    if (fa <= 0.0) out.push_back(a);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
      const double t = fa / (fa - fb);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

Ring intersect_convex(std::span<const Vec2> a, std::span<const Vec2> b) {
  Ring result(a.begin(), a.end());
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n && result.size() >= 3; ++i) {
    const Vec2 p = b[i], q = b[(i + 1) % n];
    const Vec2 e = q - p;
    // Inside of a CCW edge is to its left: cross(e, x - p) >= 0.
    const Vec2 normal{e.y, -e.x};
    result = clip_halfplane(result, normal, dot(normal, p));
  }
  if (result.size() < 3) result.clear();
  return result;
}

Ring convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  Ring hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Vec2 p = pts[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

bool contains_convex(std::span<const Vec2> ring, Vec2 p, double tol) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = ring[i], b = ring[(i + 1) % n];
    const Vec2 e = b - a;
    const double len = norm(e);
    if (len == 0.0) continue;
    // Signed distance of p to the left of edge a->b.
    if (cross(e, p - a) / len < -tol) return false;
  }
  return true;
}

namespace {

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 e = b - a;
  const double len2 = dot(e, e);
  double t = len2 > 0 ? dot(p - a, e) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * e);
}

}  // namespace

double distance_to_convex(std::span<const Vec2> ring, Vec2 p) {
  if (ring.empty()) return std::numeric_limits<double>::infinity();
  if (contains_convex(ring, p, 0.0)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ring.size(); ++i)
    best = std::min(best, segment_distance(p, ring[i], ring[(i + 1) % ring.size()]));
  return best;
}

Ring normalize_ring(Ring ring, double scale) {
  const double tol = 1e-12 * scale;
  Ring out;
  out.reserve(ring.size());
  for (const auto& p : ring) {
    if (!out.empty() && distance(out.back(), p) <= tol) continue;
    out.push_back(p);
  }
  while (out.size() > 1 && distance(out.front(), out.back()) <= tol) out.pop_back();
  // Drop vertices lying on the segment joining their neighbours.
  bool changed = true;
  while (changed && out.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < out.size() && out.size() >= 3; ++i) {
      const Vec2 a = out[(i + out.size() - 1) % out.size()], b = out[i],
                 c = out[(i + 1) % out.size()];
      const double len = distance(a, c);
      if (len == 0.0 || std::abs(cross(b - a, c - a)) / len <= tol) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (out.size() < 3) return {};
  if (signed_area(out) < 0) std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace clear
