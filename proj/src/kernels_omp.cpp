#include <algorithm>

#include "clear/kernels.hpp"
#include "clear/planner.hpp"

namespace clear::kernels::omp {

StatGrid local_std(const Grid<double>& elevation, int k) {
  StatGrid out(elevation.width(), elevation.height());
  const int h = elevation.height(), w = elevation.width();
#pragma omp parallel for schedule(static)
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) out(r, c) = detail::window_std(elevation, r, c, k / 2);
  return out;
}

StatGrid local_entropy(const Grid<int>& landcover, int k) {
  StatGrid out(landcover.width(), landcover.height());
  const int h = landcover.height(), w = landcover.width();
  const int max_label = landcover.empty() ? 0 : *std::max_element(landcover.values().begin(),
                                                                   landcover.values().end());
#pragma omp parallel
  {
    std::vector<int> counts(static_cast<std::size_t>(max_label) + 1, 0);
#pragma omp for schedule(static)
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) out(r, c) = detail::window_entropy(landcover, r, c, k / 2, counts);
  }
  return out;
}

Grid<int> nearest_seed_labels(std::span<const PixelCoord> seeds, int width, int height) {
  Grid<int> labels(width, height, -1);
  if (seeds.empty()) return labels;
  const int bs = detail::seed_bucket_size(seeds.size(), width, height);
  const auto buckets = detail::bucket_seeds(seeds, width, height, bs);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) labels(r, c) = detail::nearest_seed(seeds, buckets, bs, r, c);
  return labels;
}

std::vector<Ring> voronoi_cells(std::span<const PixelCoord> seeds, int width, int height,
                                double cell_size) {
  std::vector<Ring> cells(seeds.size());
  if (seeds.empty()) return cells;
  const int bs = detail::seed_bucket_size(seeds.size(), width, height);
  const auto buckets = detail::bucket_seeds(seeds, width, height, bs);
  const auto n = static_cast<std::ptrdiff_t>(seeds.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    cells[static_cast<std::size_t>(i)] = detail::voronoi_cell(
        seeds, buckets, bs, static_cast<std::size_t>(i), width, height, cell_size);
  return cells;
}

std::vector<CellFit> fit_cells(std::span<const PointSet> cells, std::span<const Ring> polygons,
                               const FitParams& params, const RegionContext& ctx) {
  std::vector<CellFit> out(cells.size());
  const auto n = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    RegionContext local = ctx;
    local.cell_id = static_cast<int>(i);
    out[static_cast<std::size_t>(i)] = detail::fit_cell(
        cells[static_cast<std::size_t>(i)], polygons[static_cast<std::size_t>(i)], params, local);
  }
  return out;
}

Reconstruction rasterize(std::span<const Region> regions, int width, int height,
                         double cell_size) {
  Reconstruction rec{Grid<double>(width, height), Grid<int>(width, height),
                     Grid<int>(width, height, -1), 0.0};
  if (regions.empty()) return rec;
  const RegionLocator locator(regions, cell_size);
  long long gaps = 0;
#pragma omp parallel for schedule(static) reduction(+ : gaps)
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const Vec2 p = pixel_center({r, c}, cell_size);
      auto idx = locator.find_index(p);
      if (idx < 0) {
        ++gaps;
        idx = static_cast<std::ptrdiff_t>(locator.nearest_index(p));
      }
      const Region& region = regions[static_cast<std::size_t>(idx)];
      rec.region(r, c) = static_cast<int>(idx);
      rec.elevation(r, c) = region.plane(p.x, p.y);
      rec.landcover(r, c) = region.landcover;
    }
  }
  rec.gap_fraction = static_cast<double>(gaps) / (static_cast<double>(width) * height);
  return rec;
}

}  // namespace clear::kernels::omp
