#include "clear/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

namespace clear {

namespace {

using Clock = std::chrono::steady_clock;

// Keeps the straight-line bound strictly below any true remaining cost despite rounding.
constexpr double kHeuristicScale = 1.0 - 1e-9;

struct QueueEntry {
  double f;
  double g;
  int v;
};

struct EntryAfter {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.v > b.v;
  }
};

using OpenSet = std::priority_queue<QueueEntry, std::vector<QueueEntry>, EntryAfter>;

double polyline_length(const std::vector<Vec2>& path) {
  double len = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) len += distance(path[i - 1], path[i]);
  return len;
}

}  // namespace

RegionLocator::RegionLocator(std::span<const Region> regions, double cell_size)
    : regions_(regions), cell_size_(cell_size) {
  if (regions_.empty()) {
    bucket_ = 1.0;
    buckets_.resize(1);
    return;
  }
  extent_ = bounding_box(regions_[0].polygon);
  std::vector<Box> boxes;
  boxes.reserve(regions_.size());
  for (const auto& r : regions_) {
    const Box b = bounding_box(r.polygon);
    extent_.x0 = std::min(extent_.x0, b.x0);
    extent_.y0 = std::min(extent_.y0, b.y0);
    extent_.x1 = std::max(extent_.x1, b.x1);
    extent_.y1 = std::max(extent_.y1, b.y1);
    boxes.push_back(b);
  }
  const double w = std::max(extent_.x1 - extent_.x0, cell_size_);
  const double h = std::max(extent_.y1 - extent_.y0, cell_size_);
  bucket_ = std::sqrt(w * h / static_cast<double>(regions_.size()));
  nx_ = std::clamp(static_cast<int>(std::ceil(w / bucket_)), 1, 1024);
  ny_ = std::clamp(static_cast<int>(std::ceil(h / bucket_)), 1, 1024);
  bucket_ = std::max(w / nx_, h / ny_);
  buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
  const double tol = 1e-6 * cell_size_;
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    const Box& b = boxes[i];
    const int bx0 = std::clamp(static_cast<int>((b.x0 - tol - extent_.x0) / bucket_), 0, nx_ - 1);
    const int bx1 = std::clamp(static_cast<int>((b.x1 + tol - extent_.x0) / bucket_), 0, nx_ - 1);
    const int by0 = std::clamp(static_cast<int>((b.y0 - tol - extent_.y0) / bucket_), 0, ny_ - 1);
    const int by1 = std::clamp(static_cast<int>((b.y1 + tol - extent_.y0) / bucket_), 0, ny_ - 1);
    for (int by = by0; by <= by1; ++by)
      for (int bx = bx0; bx <= bx1; ++bx)
        buckets_[static_cast<std::size_t>(by) * nx_ + bx].push_back(i);
  }
  id_to_index_.reserve(regions_.size());
  for (std::size_t i = 0; i < regions_.size(); ++i) id_to_index_.emplace_back(regions_[i].id, i);
  std::sort(id_to_index_.begin(), id_to_index_.end());
}

std::ptrdiff_t RegionLocator::find_index(Vec2 p) const {
  if (regions_.empty()) return -1;
  const int bx = std::clamp(static_cast<int>(std::floor((p.x - extent_.x0) / bucket_)), 0, nx_ - 1);
  const int by = std::clamp(static_cast<int>(std::floor((p.y - extent_.y0) / bucket_)), 0, ny_ - 1);
  const double inside_tol = 1e-9 * cell_size_;
  std::ptrdiff_t best = -1;
  for (std::size_t i : buckets_[static_cast<std::size_t>(by) * nx_ + bx]) {
    if (best >= 0 && regions_[i].id >= regions_[static_cast<std::size_t>(best)].id) continue;
    if (contains_convex(regions_[i].polygon, p, inside_tol)) best = static_cast<std::ptrdiff_t>(i);
  }
  if (best >= 0) return best;
  const std::size_t near = nearest_index(p);
  if (distance_to_convex(regions_[near].polygon, p) <= 1e-6 * cell_size_)
    return static_cast<std::ptrdiff_t>(near);
  return -1;
}

int RegionLocator::find(Vec2 p) const {
  const auto idx = find_index(p);
  return idx < 0 ? -1 : regions_[static_cast<std::size_t>(idx)].id;
}

int RegionLocator::locate(Vec2 p) const {
  const int id = find(p);
  if (id < 0)
    throw DataError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                    ") lies outside every region");
  return id;
}

std::size_t RegionLocator::nearest_index(Vec2 p) const {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    const double d = distance_to_convex(regions_[i].polygon, p);
    if (d < best_d || (d == best_d && regions_[i].id < regions_[best].id)) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::size_t RegionLocator::index_of(int region_id) const {
  const auto it = std::lower_bound(id_to_index_.begin(), id_to_index_.end(),
                                   std::make_pair(region_id, std::size_t{0}));
  if (it == id_to_index_.end() || it->first != region_id)
    throw DataError("unknown region id " + std::to_string(region_id));
  return it->second;
}

int locate(Vec2 point, std::span<const Region> regions, double cell_size) {
  return RegionLocator(regions, cell_size).locate(point);
}

SearchResult graph_search(const RegionGraph& graph, int src, int dst, const CostWeights& weights,
                          SearchAlgorithm algorithm) {
  (void)weights;  // costs are baked into the graph's edges
  SearchResult res;
  const std::size_t n = graph.vertex_count();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> parent(n, -1);
  const Vec2 target = graph.nodes[static_cast<std::size_t>(dst)].position;
  auto h = [&](int v) {
    return algorithm == SearchAlgorithm::astar
               ? kHeuristicScale * distance(graph.nodes[static_cast<std::size_t>(v)].position, target)
               : 0.0;
  };
  OpenSet open;
  dist[static_cast<std::size_t>(src)] = 0.0;
  open.push({h(src), 0.0, src});
  while (!open.empty()) {
    const QueueEntry top = open.top();
    open.pop();
    if (top.g > dist[static_cast<std::size_t>(top.v)]) continue;
    ++res.expanded;
    if (top.v == dst) break;
    for (const GraphEdge& e : graph.out_edges(top.v)) {
      const double g = top.g + e.cost;
      if (g < dist[static_cast<std::size_t>(e.to)]) {
        dist[static_cast<std::size_t>(e.to)] = g;
        parent[static_cast<std::size_t>(e.to)] = top.v;
        open.push({g + h(e.to), g, e.to});
      }
    }
  }
  if (!std::isfinite(dist[static_cast<std::size_t>(dst)])) return res;
  res.found = true;
  res.cost = dist[static_cast<std::size_t>(dst)];
  for (int v = dst; v != -1; v = parent[static_cast<std::size_t>(v)]) res.vertices.push_back(v);
  std::reverse(res.vertices.begin(), res.vertices.end());
  return res;
}

PlanResult plan_region(const RegionGraph& graph, std::span<const Region> regions,
                       const PlanQuery& query, SearchAlgorithm algorithm) {
  const RegionLocator locator(regions, graph.cell_size);
  const auto s_idx = locator.find_index(query.start);
  const auto g_idx = locator.find_index(query.goal);
  if (s_idx < 0) throw DataError("start point lies outside every region");
  if (g_idx < 0) throw DataError("goal point lies outside every region");
  const int s = static_cast<int>(s_idx), g = static_cast<int>(g_idx);
  for (auto [v, what] : {std::pair{s, "start"}, std::pair{g, "goal"}}) {
    if (!graph.traversable[static_cast<std::size_t>(v)]) {
      const int id = graph.region_ids[static_cast<std::size_t>(v)];
      throw PreconditionError(std::string(what) + " lies in non-traversable region " +
                                  std::to_string(id),
                              id);
    }
  }

  PlanResult out;
  const auto start_time = Clock::now();
  if (s == g) {
    out.reachable = true;
    out.path.push_back(query.start);
    if (!(query.goal == query.start)) out.path.push_back(query.goal);
    out.visited_region_ids.push_back(graph.region_ids[static_cast<std::size_t>(s)]);
    out.total_cost = distance(query.start, query.goal);
    out.expanded_nodes = 0;
  } else {
    const SearchResult sr = graph_search(graph, s, g, query.weights, algorithm);
    out.expanded_nodes = sr.expanded;
    if (!sr.found) {
      out.reason = "no path between region " +
                   std::to_string(graph.region_ids[static_cast<std::size_t>(s)]) +
                   " and region " + std::to_string(graph.region_ids[static_cast<std::size_t>(g)]);
    } else {
      out.reachable = true;
      out.path.push_back(query.start);
      for (int v : sr.vertices) {
        out.path.push_back(graph.nodes[static_cast<std::size_t>(v)].position);
        out.visited_region_ids.push_back(graph.region_ids[static_cast<std::size_t>(v)]);
      }
      out.path.push_back(query.goal);
      out.total_cost = distance(query.start, graph.nodes[static_cast<std::size_t>(s)].position) +
                       sr.cost +
                       distance(graph.nodes[static_cast<std::size_t>(g)].position, query.goal);
    }
  }
  out.plan_time_s = std::chrono::duration<double>(Clock::now() - start_time).count();
  out.length_m = polyline_length(out.path);
  return out;
}

GridCostField grid_cost_field(const TerrainTile& tile, double s_max) {
  GridCostField f;
  f.width = tile.width;
  f.height = tile.height;
  f.cell_size = tile.cell_size;
  const std::size_t n = static_cast<std::size_t>(tile.width) * tile.height;
  f.nodes.resize(n);
  f.traversable.resize(n);
  const double cs = tile.cell_size;
  for (int r = 0; r < tile.height; ++r) {
    for (int c = 0; c < tile.width; ++c) {
      const int cl = std::max(c - 1, 0), cr = std::min(c + 1, tile.width - 1);
      const int ru = std::max(r - 1, 0), rd = std::min(r + 1, tile.height - 1);
      const double a =
          cr > cl ? (tile.elevation(r, cr) - tile.elevation(r, cl)) / ((cr - cl) * cs) : 0.0;
      const double b =
          rd > ru ? (tile.elevation(rd, c) - tile.elevation(ru, c)) / ((rd - ru) * cs) : 0.0;
      const Plane plane{a, b, 0.0};
      CostNode& node = f.nodes[tile.elevation.index(r, c)];
      node.position = {(c + 0.5) * cs, (r + 0.5) * cs};
      node.grade = grade_percent(plane) / 100.0;
      node.aspect_deg = aspect_degrees(plane);
      node.flat = a == 0.0 && b == 0.0;
      const LandcoverClass* cls = tile.classes.find(tile.landcover(r, c));
      if (cls != nullptr) {
        node.friction = cls->friction;
        node.roughness = cls->roughness;
      }
      const bool passable = cls == nullptr || cls->traversable;
      f.traversable[tile.elevation.index(r, c)] =
          passable && grade_percent(plane) <= 100.0 * s_max ? 1 : 0;
    }
  }
  return f;
}

PlanResult plan_grid(const GridCostField& field, const PlanQuery& query,
                     SearchAlgorithm algorithm) {
  const double cs = field.cell_size;
  auto pixel_of = [&](Vec2 p, const char* what) {
    const int c = static_cast<int>(std::floor(p.x / cs));
    const int r = static_cast<int>(std::floor(p.y / cs));
    if (c < 0 || r < 0 || c >= field.width || r >= field.height)
      throw DataError(std::string(what) + " point lies outside the tile");
    const int idx = r * field.width + c;
    if (!field.traversable[static_cast<std::size_t>(idx)])
      throw PreconditionError(std::string(what) + " lies in non-traversable pixel (row " +
                                  std::to_string(r) + ", col " + std::to_string(c) + ")",
                              idx);
    return idx;
  };
  const int s = pixel_of(query.start, "start");
  const int g = pixel_of(query.goal, "goal");

  PlanResult out;
  const auto start_time = Clock::now();
  const std::size_t n = field.nodes.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> parent(n, -1);
  const Vec2 target = field.nodes[static_cast<std::size_t>(g)].position;
  auto h = [&](int v) {
    return algorithm == SearchAlgorithm::astar
               ? kHeuristicScale * distance(field.nodes[static_cast<std::size_t>(v)].position, target)
               : 0.0;
  };
  static constexpr int kDr[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
  static constexpr int kDc[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
  const double diag = std::sqrt(2.0) * cs;
  OpenSet open;
  dist[static_cast<std::size_t>(s)] = 0.0;
  open.push({h(s), 0.0, s});
  while (!open.empty()) {
    const QueueEntry top = open.top();
    open.pop();
    if (top.g > dist[static_cast<std::size_t>(top.v)]) continue;
    ++out.expanded_nodes;
    if (top.v == g) break;
    const int r = top.v / field.width, c = top.v % field.width;
    const CostNode& from = field.nodes[static_cast<std::size_t>(top.v)];
    for (int k = 0; k < 8; ++k) {
      const int nr = r + kDr[k], nc = c + kDc[k];
      if (nr < 0 || nc < 0 || nr >= field.height || nc >= field.width) continue;
      const int u = nr * field.width + nc;
      if (!field.traversable[static_cast<std::size_t>(u)]) continue;
      const CostNode& to = field.nodes[static_cast<std::size_t>(u)];
      const double d = (kDr[k] != 0 && kDc[k] != 0) ? diag : cs;
      const double cost =
          transfer_cost(from, to, d, compass_bearing(from.position, to.position), query.weights);
      const double cand = top.g + cost;
      if (cand < dist[static_cast<std::size_t>(u)]) {
        dist[static_cast<std::size_t>(u)] = cand;
        parent[static_cast<std::size_t>(u)] = top.v;
        open.push({cand + h(u), cand, u});
      }
    }
  }
  if (std::isfinite(dist[static_cast<std::size_t>(g)])) {
    out.reachable = true;
    std::vector<int> cells;
    for (int v = g; v != -1; v = parent[static_cast<std::size_t>(v)]) cells.push_back(v);
    std::reverse(cells.begin(), cells.end());
    out.path.push_back(query.start);
    for (int v : cells) out.path.push_back(field.nodes[static_cast<std::size_t>(v)].position);
    out.path.push_back(query.goal);
    out.visited_region_ids = std::move(cells);
    out.total_cost = distance(query.start, field.nodes[static_cast<std::size_t>(s)].position) +
                     dist[static_cast<std::size_t>(g)] +
                     distance(target, query.goal);
  } else {
    out.reason = "no path between the start and goal pixels";
  }
  out.plan_time_s = std::chrono::duration<double>(Clock::now() - start_time).count();
  out.length_m = polyline_length(out.path);
  return out;
}

PlanResult plan_grid(const TerrainTile& tile, const PlanQuery& query) {
  return plan_grid(grid_cost_field(tile, query.weights.s_max), query);
}

}  // namespace clear
