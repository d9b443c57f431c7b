#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace clear {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// A polygon is an implicitly closed vertex ring with positive signed area
// (counter-clockwise in the x/y map frame).
using Ring = std::vector<Vec2>;

struct Box {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  bool overlaps(const Box& o, double tol = 0.0) const {
    return x0 <= o.x1 + tol && o.x0 <= x1 + tol && y0 <= o.y1 + tol && o.y0 <= y1 + tol;
  }
  bool contains(Vec2 p, double tol = 0.0) const {
    return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
  }
};

Box bounding_box(std::span<const Vec2> ring);
Ring rectangle(double x0, double y0, double x1, double y1);

double signed_area(std::span<const Vec2> ring);
double area(std::span<const Vec2> ring);
Vec2 area_centroid(std::span<const Vec2> ring);
double perimeter(std::span<const Vec2> ring);

/// Cross products of consecutive edges all >= -eps, ring has >= 3 vertices and area > 0.
bool is_convex(std::span<const Vec2> ring, double eps);

/// Keeps the part of a convex ring with dot(normal, p) <= offset.
Ring clip_halfplane(std::span<const Vec2> ring, Vec2 normal, double offset);

/// Intersection of two convex rings (possibly empty).
Ring intersect_convex(std::span<const Vec2> a, std::span<const Vec2> b);

/// Andrew's monotone chain; collinear points dropped. Returns CCW ring (may be degenerate).
Ring convex_hull(std::vector<Vec2> points);

/// Point-in-convex-ring with boundary counted as inside up to `tol` (distance units).
bool contains_convex(std::span<const Vec2> ring, Vec2 p, double tol);

/// Euclidean distance from p to the ring's region (0 inside).
double distance_to_convex(std::span<const Vec2> ring, Vec2 p);

/// Removes repeated and collinear vertices (tolerance relative to `scale`) and fixes orientation.
Ring normalize_ring(Ring ring, double scale);

}  // namespace clear
