#include "clear/decompose.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>

#include "clear/error.hpp"
#include "clear/kernels.hpp"

namespace clear {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int clamp_window(int k, const TerrainTile& tile) {
  int limit = std::min(tile.width, tile.height);
  if (limit % 2 == 0) --limit;
  return std::min(k, limit);
}

// Pixel -> cell by centre-in-polygon, lowest cell id winning on shared edges; pixels in no
// polygon (numerical slivers) go to the nearest cell.
Grid<int> label_pixels(const TerrainTile& tile, const std::vector<ConvexCell>& cells) {
  const double cs = tile.cell_size;
  const double tol = 1e-9 * cs;
  Grid<int> labels(tile.width, tile.height, -1);
  for (const auto& cell : cells) {
    const Box box = bounding_box(cell.vertices);
    const int r0 = std::max(0, static_cast<int>(std::floor(box.y0 / cs - 0.5)));
    const int r1 = std::min(tile.height - 1, static_cast<int>(std::ceil(box.y1 / cs - 0.5)));
    const int c0 = std::max(0, static_cast<int>(std::floor(box.x0 / cs - 0.5)));
    const int c1 = std::min(tile.width - 1, static_cast<int>(std::ceil(box.x1 / cs - 0.5)));
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        if (labels(r, c) >= 0) continue;
        if (contains_convex(cell.vertices, pixel_center({r, c}, cs), tol)) labels(r, c) = cell.id;
      }
    }
  }
  for (int r = 0; r < tile.height; ++r) {
    for (int c = 0; c < tile.width; ++c) {
      if (labels(r, c) >= 0) continue;
      const Vec2 p = pixel_center({r, c}, cs);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& cell : cells) {
        const double d = distance_to_convex(cell.vertices, p);
        if (d < best) {
          best = d;
          labels(r, c) = cell.id;
        }
      }
    }
  }
  return labels;
}

}  // namespace

std::vector<PointSet> gather_cell_points(const TerrainTile& tile, const Grid<int>& cell_of_pixel,
                                         int cell_count) {
  std::vector<PointSet> sets(static_cast<std::size_t>(cell_count));
  const double cs = tile.cell_size;
  for (int r = 0; r < tile.height; ++r) {
    for (int c = 0; c < tile.width; ++c) {
      const int id = cell_of_pixel(r, c);
      if (id < 0 || id >= cell_count) continue;
      auto& set = sets[static_cast<std::size_t>(id)];
      set.points.push_back({(c + 0.5) * cs, (r + 0.5) * cs, tile.elevation(r, c)});
      set.labels.push_back(tile.landcover(r, c));
      set.pixels.push_back(static_cast<int>(tile.elevation.index(r, c)));
    }
  }
  return sets;
}

Decomposition decompose_clear(const TerrainTile& tile, const ClearParams& params) {
  const auto start = Clock::now();
  Decomposition out;
  out.method = "clear";

  const int sigma_k = clamp_window(params.sigma_window, tile);
  const StatGrid sigma =
      sigma_k >= 3 ? local_std(tile, sigma_k) : StatGrid(tile.width, tile.height, 0.0);
  BsdParams bsd = params.bsd;
  bsd.k = std::max(1, clamp_window(bsd.k, tile));
  out.seeds = select_seeds(tile, sigma, bsd);
  out.cells = voronoi_partition(out.seeds, tile);
  const Grid<int> cell_labels = voronoi_labels(out.seeds, tile.width, tile.height);
  const auto sets = gather_cell_points(tile, cell_labels, static_cast<int>(out.cells.size()));

  std::vector<Ring> polygons;
  polygons.reserve(out.cells.size());
  for (const auto& cell : out.cells) polygons.push_back(cell.vertices);
  RegionContext ctx{tile.cell_size, &tile.classes, params.s_max, 0, -1};
  auto fits = kernels::omp::fit_cells(sets, polygons, params.fit, ctx);

  out.membership = Grid<int>(tile.width, tile.height, -1);
  int next_id = 0;
  for (auto& fit : fits) {
    const int offset = next_id;
    for (auto& region : fit.regions) {
      region.id += offset;
      out.regions.push_back(std::move(region));
    }
    for (const auto& [pixel, local] : fit.membership)
      out.membership[static_cast<std::size_t>(pixel)] = local + offset;
    next_id = static_cast<int>(out.regions.size());
  }
  out.seconds = seconds_since(start);
  out.resolution = params.bsd.n;
  return out;
}

Decomposition regions_from_cells(const TerrainTile& tile, std::vector<ConvexCell> cells,
                                 double s_max, std::string method) {
  const auto start = Clock::now();
  Decomposition out;
  out.method = std::move(method);
  const Grid<int> labels = label_pixels(tile, cells);
  const auto sets = gather_cell_points(tile, labels, static_cast<int>(cells.size()));
  out.membership = Grid<int>(tile.width, tile.height, -1);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (sets[i].empty()) continue;  // sliver without pixel centres
    RegionContext ctx{tile.cell_size, &tile.classes, s_max, static_cast<int>(out.regions.size()),
                      cells[i].id};
    Region region = fit_single_region(sets[i], cells[i].vertices, ctx);
    for (int px : sets[i].pixels) out.membership[static_cast<std::size_t>(px)] = region.id;
    out.regions.push_back(std::move(region));
  }
  out.cells = std::move(cells);
  out.seconds = seconds_since(start);
  return out;
}

Method parse_method(const std::string& name) {
  if (name == "clear") return Method::clear;
  if (name == "grid") return Method::grid;
  if (name == "hex") return Method::hex;
  if (name == "quadtree") return Method::quadtree;
  throw ConfigError("unknown decomposition method '" + name +
                    "' (expected clear, grid, hex or quadtree)");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::clear: return "clear";
    case Method::grid: return "grid";
    case Method::hex: return "hex";
    case Method::quadtree: return "quadtree";
  }
  return "unknown";
}

namespace {

Decomposition quadtree_decomposition(const TerrainTile& tile, const QuadtreeParams& qp,
                                     double s_max) {
  const auto start = Clock::now();
  auto qt = quadtree_decompose(tile, qp, s_max);
  Decomposition out;
  out.method = "quadtree";
  out.regions = std::move(qt.regions);
  out.membership = std::move(qt.membership);
  out.seconds = seconds_since(start);
  out.resolution = qp.epsilon;
  return out;
}

}  // namespace

Decomposition decompose_to_budget(const TerrainTile& tile, Method method, int budget,
                                  const BudgetOptions& options) {
  if (budget < 1) throw ConfigError("region budget must be >= 1");
  const double s_max = options.clear.s_max;
  switch (method) {
    case Method::grid: {
      const auto start = Clock::now();
      const int side = grid_side_for_budget(tile, budget);
      auto d = regions_from_cells(tile, grid_decompose_side(tile, side), s_max, "grid");
      d.seconds = seconds_since(start);
      d.resolution = side;
      return d;
    }
    case Method::hex: {
      const auto start = Clock::now();
      const double side = hex_side_for_budget(tile, budget);
      auto d = regions_from_cells(tile, hex_decompose_side(tile, side), s_max, "hex");
      d.seconds = seconds_since(start);
      d.resolution = side;
      return d;
    }
    case Method::quadtree: {
      QuadtreeParams qp;
      qp.min_area = static_cast<int>(options.quadtree_min_area);
      // Leaf count is non-increasing in epsilon: bisect in log space.
      double lo = 1e-9, hi = 1.0;
      qp.epsilon = hi;
      while (quadtree_leaf_count(tile, qp) > 1 && hi < 1e9) {
        hi *= 4.0;
        qp.epsilon = hi;
      }
      double best_eps = hi;
      long long best_diff = std::llabs(quadtree_leaf_count(tile, qp) - budget);
      for (int it = 0; it < 80 && best_diff != 0; ++it) {
        const double mid = std::sqrt(lo * hi);
        qp.epsilon = mid;
        const int count = quadtree_leaf_count(tile, qp);
        const long long diff = std::llabs(static_cast<long long>(count) - budget);
        if (diff < best_diff || (diff == best_diff && mid > best_eps)) {
          best_diff = diff;
          best_eps = mid;
        }
        if (count > budget) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      qp.epsilon = best_eps;
      return quadtree_decomposition(tile, qp, s_max);
    }
    case Method::clear: {
      std::map<int, Decomposition> cache;
      auto run = [&](int n) -> const Decomposition& {
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        ClearParams p = options.clear;
        p.bsd.n = n;
        return cache.emplace(n, decompose_clear(tile, p)).first->second;
      };
      auto count = [&](int n) { return static_cast<int>(run(n).regions.size()); };
      // Smallest n reaching the budget; every cell yields at least one region.
      int lo = 1, hi = std::max(1, std::min(budget, tile.width * tile.height));
      if (count(hi) < budget) lo = hi;
      while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (count(mid) >= budget) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      int best = lo;
      if (lo > 1 && std::abs(count(lo - 1) - budget) <= std::abs(count(lo) - budget)) best = lo - 1;
      return run(best);
    }
  }
  throw ConfigError("unsupported method");
}

}  // namespace clear
