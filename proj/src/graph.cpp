#include "clear/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace clear {

double heading_delta(double theta_head, double theta_slope) {
  const double d = std::fmod(std::abs(theta_head - theta_slope), 360.0);
  return std::min(d, 360.0 - d);
}

double compass_bearing(Vec2 from, Vec2 to) {
  const double east = to.x - from.x;
  const double north = -(to.y - from.y);
  double deg = std::atan2(east, north) * 180.0 / std::numbers::pi;
  if (deg < 0.0) deg += 360.0;
  if (deg >= 360.0) deg -= 360.0;
  return deg;
}

CostNode cost_node(const Region& region, const ClassTable& classes) {
  CostNode node;
  node.position = region.centroid;
  node.grade = region.grade_pct / 100.0;
  node.aspect_deg = region.aspect_deg;
  node.flat = region.flat;
  if (const LandcoverClass* cls = classes.find(region.landcover)) {
    node.friction = cls->friction;
    node.roughness = cls->roughness;
  }
  return node;
}

double transfer_cost(const CostNode& from, const CostNode& to, double distance, double heading,
                     const CostWeights& w) {
  const double mu = w.friction_mode == FrictionMode::destination
                        ? to.friction
                        : 0.5 * (from.friction + to.friction);
  double cost = distance * (1.0 + w.w_f * mu + w.w_s * std::abs(to.grade) + w.w_r * to.roughness);
  if (!to.flat && w.w_theta != 0.0) {
    const double delta = heading_delta(heading, to.aspect_deg);
    const double penalty =
        w.heading_mode == HeadingMode::literal ? delta : std::abs(90.0 - delta) * 2.0;
    cost += w.w_theta * (penalty / 180.0) * distance;
  }
  return cost;
}

double edge_cost(const Region& from, const Region& to, Vec2 /*crossing*/, const CostWeights& w,
                 const ClassTable& classes) {
  const double d = distance(from.centroid, to.centroid);
  return transfer_cost(cost_node(from, classes), cost_node(to, classes), d,
                       compass_bearing(from.centroid, to.centroid), w);
}

std::vector<Region> mark_traversability(std::vector<Region> regions, const ClassTable& classes,
                                        double s_max) {
  for (auto& r : regions) {
    const LandcoverClass* cls = classes.find(r.landcover);
    const bool passable_class = cls == nullptr || cls->traversable;
    r.traversable = passable_class && r.grade_pct <= 100.0 * s_max;
  }
  return regions;
}

int RegionGraph::vertex_of(int region_id) const {
  const auto it = std::find(region_ids.begin(), region_ids.end(), region_id);
  return it == region_ids.end() ? -1 : static_cast<int>(it - region_ids.begin());
}

SharedBoundary shared_boundary(std::span<const Vec2> a, std::span<const Vec2> b, double tol) {
  SharedBoundary out;
  double longest = -1.0;
  const std::size_t na = a.size(), nb = b.size();
  for (std::size_t i = 0; i < na; ++i) {
    const Vec2 p0 = a[i], p1 = a[(i + 1) % na];
    const Vec2 dir = p1 - p0;
    const double len = norm(dir);
    if (len <= tol) continue;
    const Vec2 u = (1.0 / len) * dir;
    for (std::size_t j = 0; j < nb; ++j) {
      const Vec2 q0 = b[j], q1 = b[(j + 1) % nb];
      if (std::abs(cross(u, q0 - p0)) > tol || std::abs(cross(u, q1 - p0)) > tol) continue;
      const double t0 = dot(u, q0 - p0), t1 = dot(u, q1 - p0);
      const double lo = std::max(0.0, std::min(t0, t1));
      const double hi = std::min(len, std::max(t0, t1));
      const double overlap = hi - lo;
      if (overlap <= tol) continue;
      out.length += overlap;
      if (overlap > longest) {
        longest = overlap;
        out.midpoint = p0 + (0.5 * (lo + hi)) * u;
      }
    }
  }
  return out;
}

RegionGraph build_graph(std::span<const Region> regions, const ClassTable& classes,
                        const CostWeights& weights, double cell_size) {
  RegionGraph g;
  g.weights = weights;
  g.cell_size = cell_size;
  const std::size_t n = regions.size();
  g.region_ids.reserve(n);
  g.nodes.reserve(n);
  g.traversable.reserve(n);
  for (const auto& r : regions) {
    g.region_ids.push_back(r.id);
    g.nodes.push_back(cost_node(r, classes));
    const LandcoverClass* cls = classes.find(r.landcover);
    g.traversable.push_back((cls == nullptr || cls->traversable) &&
                            r.grade_pct <= 100.0 * weights.s_max);
  }

  const double tol = 1e-6 * cell_size;
  std::vector<Box> boxes(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    boxes[i] = bounding_box(regions[i].polygon);
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return boxes[l].x0 < boxes[r].x0 || (boxes[l].x0 == boxes[r].x0 && l < r);
  });

  std::vector<std::vector<GraphEdge>> out(n);
  for (std::size_t oi = 0; oi < n; ++oi) {
    const std::size_t i = order[oi];
    if (!g.traversable[i]) continue;
    for (std::size_t oj = oi + 1; oj < n; ++oj) {
      const std::size_t j = order[oj];
      if (boxes[j].x0 > boxes[i].x1 + tol) break;
      if (!g.traversable[j] || !boxes[i].overlaps(boxes[j], tol)) continue;
      const SharedBoundary sb = shared_boundary(regions[i].polygon, regions[j].polygon, tol);
      if (sb.length <= tol) continue;
      const double d = distance(g.nodes[i].position, g.nodes[j].position);
      auto add = [&](std::size_t from, std::size_t to) {
        GraphEdge e;
        e.from = static_cast<int>(from);
        e.to = static_cast<int>(to);
        e.distance = d;
        e.heading = compass_bearing(g.nodes[from].position, g.nodes[to].position);
        e.cost = transfer_cost(g.nodes[from], g.nodes[to], d, e.heading, weights);
        e.boundary_length = sb.length;
        e.crossing = sb.midpoint;
        out[from].push_back(e);
      };
      add(i, j);
      add(j, i);
    }
  }

  g.offsets.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(out[v].begin(), out[v].end(),
              [](const GraphEdge& l, const GraphEdge& r) { return l.to < r.to; });
    g.offsets[v + 1] = g.offsets[v] + static_cast<int>(out[v].size());
  }
  g.edges.reserve(static_cast<std::size_t>(g.offsets[n]));
  for (auto& list : out) g.edges.insert(g.edges.end(), list.begin(), list.end());
  return g;
}

}  // namespace clear
