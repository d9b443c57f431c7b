#include "clear/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <functional>

#include "clear/error.hpp"

namespace clear {

std::vector<ConvexCell> grid_decompose_side(const TerrainTile& tile, int side_px) {
  if (side_px < 1) throw ConfigError("grid cell side must be >= 1 pixel");
  const double cs = tile.cell_size;
  std::vector<ConvexCell> cells;
  for (int r0 = 0; r0 < tile.height; r0 += side_px) {
    const int r1 = std::min(tile.height, r0 + side_px);
    for (int c0 = 0; c0 < tile.width; c0 += side_px) {
      const int c1 = std::min(tile.width, c0 + side_px);
      ConvexCell cell;
      cell.id = static_cast<int>(cells.size());
      cell.vertices = rectangle(c0 * cs, r0 * cs, c1 * cs, r1 * cs);
      cell.seed = {(r0 + r1 - 1) / 2, (c0 + c1 - 1) / 2};
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

int grid_side_for_budget(const TerrainTile& tile, int target_regions) {
  if (target_regions < 1) throw ConfigError("target region count must be >= 1");
  // Nominal side ceil(sqrt(W*H / target)); among sides whose cell count is equally close to
  // the target, the one nearest the nominal side wins (then the smaller).
  const int nominal = static_cast<int>(
      std::ceil(std::sqrt(static_cast<double>(tile.width) * tile.height / target_regions)));
  int best_side = 1;
  long long best_diff = -1;
  for (int s = 1; s <= std::max(tile.width, tile.height); ++s) {
    const long long count = static_cast<long long>((tile.width + s - 1) / s) *
                            ((tile.height + s - 1) / s);
    const long long diff = std::llabs(count - target_regions);
    const bool closer_side = std::abs(s - nominal) < std::abs(best_side - nominal);
    if (best_diff < 0 || diff < best_diff || (diff == best_diff && closer_side)) {
      best_diff = diff;
      best_side = s;
    }
  }
  return best_side;
}

std::vector<ConvexCell> grid_decompose(const TerrainTile& tile, int target_regions) {
  return grid_decompose_side(tile, grid_side_for_budget(tile, target_regions));
}

std::vector<ConvexCell> hex_decompose_side(const TerrainTile& tile, double side_m) {
  if (!(side_m > 0.0)) throw ConfigError("hexagon side must be positive");
  const double W = tile.width_m(), H = tile.height_m(), cs = tile.cell_size;
  const Ring bounds = rectangle(0.0, 0.0, W, H);
  const double cx = 0.5 * W, cy = 0.5 * H;
  const double dx = std::sqrt(3.0) * side_m, dy = 1.5 * side_m;
  const int jmax = static_cast<int>(std::ceil((0.5 * H + side_m) / dy)) + 1;
  const int imax = static_cast<int>(std::ceil((0.5 * W + dx) / dx)) + 1;

  Ring hex(6);
  std::vector<ConvexCell> cells;
  for (int j = -jmax; j <= jmax; ++j) {
    const double y = cy + j * dy;
    const double shift = (j & 1) ? 0.5 * dx : 0.0;
    for (int i = -imax; i <= imax; ++i) {
      const double x = cx + i * dx + shift;
      if (x < -dx || x > W + dx || y < -2 * side_m || y > H + 2 * side_m) continue;
      for (int v = 0; v < 6; ++v) {
        const double ang = (30.0 + 60.0 * v) * std::acos(-1.0) / 180.0;
        hex[static_cast<std::size_t>(v)] = {x + side_m * std::cos(ang), y + side_m * std::sin(ang)};
      }
      Ring clipped = normalize_ring(intersect_convex(hex, bounds), std::max(W, H));
      if (clipped.empty() || area(clipped) <= 1e-9 * cs * cs) continue;
      ConvexCell cell;
      cell.id = static_cast<int>(cells.size());
      const Vec2 c = area_centroid(clipped);
      cell.seed = {std::clamp(static_cast<int>(c.y / cs), 0, tile.height - 1),
                   std::clamp(static_cast<int>(c.x / cs), 0, tile.width - 1)};
      cell.vertices = std::move(clipped);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

double hex_side_for_budget(const TerrainTile& tile, int target_regions) {
  if (target_regions < 1) throw ConfigError("target region count must be >= 1");
  // Count falls (not strictly) with side length; bisect in log space, keep the closest.
  double lo = 0.25 * tile.cell_size;
  double hi = 2.0 * std::max(tile.width_m(), tile.height_m());
  double best_side = hi;
  long long best_diff = -1;
  auto consider = [&](double side) {
    const auto count = static_cast<long long>(hex_decompose_side(tile, side).size());
    const long long diff = std::llabs(count - target_regions);
    if (best_diff < 0 || diff < best_diff || (diff == best_diff && side > best_side)) {
      best_diff = diff;
      best_side = side;
    }
    return count;
  };
  consider(hi);
  for (int it = 0; it < 60 && best_diff != 0; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (consider(mid) > target_regions) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return best_side;
}

std::vector<ConvexCell> hex_decompose(const TerrainTile& tile, int target_regions) {
  return hex_decompose_side(tile, hex_side_for_budget(tile, target_regions));
}

namespace {

struct QuadNode {
  int row = 0, col = 0, size = 0;
};

// Breadth-first traversal; `on_leaf` receives each surviving leaf with its points.
void quadtree_traverse(const TerrainTile& tile, const QuadtreeParams& params,
                       const std::function<void(const QuadNode&, const PointSet&,
                                                const PlaneFit&)>& on_leaf) {
  if (!(params.epsilon > 0.0)) throw ConfigError("quadtree epsilon must be positive");
  if (params.min_area < 1) throw ConfigError("quadtree min_area must be >= 1");
  int side = 1;
  while (side < std::max(tile.width, tile.height)) side *= 2;
  const double cs = tile.cell_size;

  std::deque<QuadNode> queue{{0, 0, side}};
  PointSet set;
  while (!queue.empty()) {
    const QuadNode node = queue.front();
    queue.pop_front();
    if (node.row >= tile.height || node.col >= tile.width) continue;
    const int r1 = std::min(tile.height, node.row + node.size);
    const int c1 = std::min(tile.width, node.col + node.size);
    set.points.clear();
    set.labels.clear();
    set.pixels.clear();
    for (int r = node.row; r < r1; ++r) {
      for (int c = node.col; c < c1; ++c) {
        set.points.push_back({(c + 0.5) * cs, (r + 0.5) * cs, tile.elevation(r, c)});
        set.labels.push_back(tile.landcover(r, c));
        set.pixels.push_back(static_cast<int>(tile.elevation.index(r, c)));
      }
    }
    const PlaneFit fit = fit_plane(set.points);
    const long long node_area = static_cast<long long>(node.size) * node.size;
    if (fit.rmse > params.epsilon && node_area > params.min_area && node.size > 1) {
      const int h = node.size / 2;
      queue.push_back({node.row, node.col, h});
      queue.push_back({node.row, node.col + h, h});
      queue.push_back({node.row + h, node.col, h});
      queue.push_back({node.row + h, node.col + h, h});
      continue;
    }
    on_leaf(node, set, fit);
  }
}

}  // namespace

QuadtreeResult quadtree_decompose(const TerrainTile& tile, const QuadtreeParams& params,
                                  double s_max) {
  QuadtreeResult out;
  out.membership = Grid<int>(tile.width, tile.height, -1);
  const double cs = tile.cell_size;
  quadtree_traverse(tile, params, [&](const QuadNode& node, const PointSet& set, const PlaneFit&) {
    const int r1 = std::min(tile.height, node.row + node.size);
    const int c1 = std::min(tile.width, node.col + node.size);
    RegionContext ctx{cs, &tile.classes, s_max, static_cast<int>(out.regions.size()), -1};
    Region region =
        fit_single_region(set, rectangle(node.col * cs, node.row * cs, c1 * cs, r1 * cs), ctx);
    for (int px : set.pixels) out.membership[static_cast<std::size_t>(px)] = region.id;
    out.regions.push_back(std::move(region));
  });
  return out;
}

int quadtree_leaf_count(const TerrainTile& tile, const QuadtreeParams& params) {
  int count = 0;
  quadtree_traverse(tile, params, [&](const QuadNode&, const PointSet&, const PlaneFit&) { ++count; });
  return count;
}

}  // namespace clear
