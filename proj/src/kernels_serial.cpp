#include <algorithm>
#include <cmath>
#include <limits>

#include "clear/kernels.hpp"
#include "clear/planner.hpp"

namespace clear::kernels {

namespace detail {

double window_std(const Grid<double>& elev, int row, int col, int half) {
  const int r0 = std::max(0, row - half), r1 = std::min(elev.height() - 1, row + half);
  const int c0 = std::max(0, col - half), c1 = std::min(elev.width() - 1, col + half);
  // Two passes over values shifted by the first sample: exact zero on constant windows.
  const double ref = elev(r0, c0);
  double sum = 0.0;
  for (int r = r0; r <= r1; ++r)
    for (int c = c0; c <= c1; ++c) sum += elev(r, c) - ref;
  const double n = static_cast<double>((r1 - r0 + 1) * (c1 - c0 + 1));
  const double mean = sum / n;
  double ss = 0.0;
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      const double d = elev(r, c) - ref - mean;
      ss += d * d;
    }
  }
  return std::sqrt(ss / n);
}

double window_entropy(const Grid<int>& labels, int row, int col, int half,
                      std::vector<int>& counts) {
  const int r0 = std::max(0, row - half), r1 = std::min(labels.height() - 1, row + half);
  const int c0 = std::max(0, col - half), c1 = std::min(labels.width() - 1, col + half);
  for (int r = r0; r <= r1; ++r)
    for (int c = c0; c <= c1; ++c) ++counts[static_cast<std::size_t>(labels(r, c))];
  const double n = static_cast<double>((r1 - r0 + 1) * (c1 - c0 + 1));
  double h = 0.0;
  for (auto& count : counts) {
    if (count > 0 && count < n) {
      const double p = count / n;
      h -= p * std::log(p);
    }
    count = 0;
  }
  return h;
}

int seed_bucket_size(std::size_t seed_count, int width, int height) {
  const double per_seed = static_cast<double>(width) * height / std::max<std::size_t>(1, seed_count);
  return std::max(1, static_cast<int>(std::ceil(std::sqrt(per_seed))));
}

Grid<std::vector<int>> bucket_seeds(std::span<const PixelCoord> seeds, int width, int height,
                                    int bucket_size) {
  Grid<std::vector<int>> buckets((width + bucket_size - 1) / bucket_size,
                                 (height + bucket_size - 1) / bucket_size);
  for (std::size_t i = 0; i < seeds.size(); ++i)
    buckets(seeds[i].row / bucket_size, seeds[i].col / bucket_size).push_back(static_cast<int>(i));
  return buckets;
}

namespace {

// Visits buckets on Chebyshev ring `ring` around (br, bc); returns false if the ring lies
// entirely outside the bucket grid.
template <typename F>
bool for_ring(const Grid<std::vector<int>>& buckets, int br, int bc, int ring, F&& f) {
  bool any = false;
  for (int r = br - ring; r <= br + ring; ++r) {
    for (int c = bc - ring; c <= bc + ring; ++c) {
      if (std::max(std::abs(r - br), std::abs(c - bc)) != ring) continue;
      if (!buckets.in_bounds(r, c)) continue;
      any = true;
      for (int s : buckets(r, c)) f(s);
    }
  }
  return any || ring == 0;
}

bool ring_in_grid(const Grid<std::vector<int>>& buckets, int br, int bc, int ring) {
  return br - ring >= 0 || bc - ring >= 0 || br + ring < buckets.height() ||
         bc + ring < buckets.width();
}

}  // namespace

int nearest_seed(std::span<const PixelCoord> seeds, const Grid<std::vector<int>>& buckets,
                 int bucket_size, int row, int col) {
  const int br = row / bucket_size, bc = col / bucket_size;
  long long best = std::numeric_limits<long long>::max();
  int best_index = -1;
  for (int ring = 0; ring_in_grid(buckets, br, bc, ring); ++ring) {
    if (best_index >= 0) {
      const long long lb = ring == 0 ? 0 : static_cast<long long>(ring - 1) * bucket_size + 1;
      if (lb * lb > best) break;
    }
    for_ring(buckets, br, bc, ring, [&](int s) {
      const long long dr = seeds[static_cast<std::size_t>(s)].row - row;
      const long long dc = seeds[static_cast<std::size_t>(s)].col - col;
      const long long d2 = dr * dr + dc * dc;
      if (d2 < best || (d2 == best && s < best_index)) {
        best = d2;
        best_index = s;
      }
    });
  }
  return best_index;
}

Ring voronoi_cell(std::span<const PixelCoord> seeds, const Grid<std::vector<int>>& buckets,
                  int bucket_size, std::size_t index, int width, int height, double cell_size) {
  const PixelCoord seed = seeds[index];
  const Vec2 s{seed.col + 0.5, seed.row + 0.5};
  Ring cell = rectangle(0.0, 0.0, width, height);
  const int br = seed.row / bucket_size, bc = seed.col / bucket_size;
  std::vector<std::pair<long long, int>> ring_seeds;
  for (int ring = 0; ring_in_grid(buckets, br, bc, ring); ++ring) {
    if (ring > 0) {
      double reach = 0.0;
      for (const auto& v : cell) reach = std::max(reach, distance(v, s));
      const double lb = static_cast<double>(ring - 1) * bucket_size + 1.0;
      if (lb > 2.0 * reach) break;
    }
    ring_seeds.clear();
    for_ring(buckets, br, bc, ring, [&](int q) {
      if (static_cast<std::size_t>(q) == index) return;
      const long long dr = seeds[static_cast<std::size_t>(q)].row - seed.row;
      const long long dc = seeds[static_cast<std::size_t>(q)].col - seed.col;
      ring_seeds.emplace_back(dr * dr + dc * dc, q);
    });
    std::sort(ring_seeds.begin(), ring_seeds.end());
    for (const auto& [d2, q] : ring_seeds) {
      const Vec2 o{seeds[static_cast<std::size_t>(q)].col + 0.5,
                   seeds[static_cast<std::size_t>(q)].row + 0.5};
      const Vec2 normal = o - s;
      const double offset = 0.5 * (dot(o, o) - dot(s, s));
      cell = clip_halfplane(cell, normal, offset);
    }
  }
  cell = normalize_ring(std::move(cell), std::max(width, height));
  for (auto& v : cell) v = cell_size * v;
  return cell;
}

CellFit fit_cell(const PointSet& points, std::span<const Vec2> polygon, const FitParams& params,
                 const RegionContext& ctx) {
  CellFit out;
  RegionContext local = ctx;
  local.first_id = 0;
  out.regions = recursive_fit(points, polygon, params, local, &out.membership);
  return out;
}

}  // namespace detail

namespace serial {

StatGrid local_std(const Grid<double>& elevation, int k) {
  StatGrid out(elevation.width(), elevation.height());
  for (int r = 0; r < elevation.height(); ++r)
    for (int c = 0; c < elevation.width(); ++c) out(r, c) = detail::window_std(elevation, r, c, k / 2);
  return out;
}

StatGrid local_entropy(const Grid<int>& landcover, int k) {
  StatGrid out(landcover.width(), landcover.height());
  const int max_label = landcover.empty() ? 0 : *std::max_element(landcover.values().begin(),
                                                                   landcover.values().end());
  std::vector<int> counts(static_cast<std::size_t>(max_label) + 1, 0);
  for (int r = 0; r < landcover.height(); ++r)
    for (int c = 0; c < landcover.width(); ++c)
      out(r, c) = detail::window_entropy(landcover, r, c, k / 2, counts);
  return out;
}

Grid<int> nearest_seed_labels(std::span<const PixelCoord> seeds, int width, int height) {
  Grid<int> labels(width, height, -1);
  if (seeds.empty()) return labels;
  const int bs = detail::seed_bucket_size(seeds.size(), width, height);
  const auto buckets = detail::bucket_seeds(seeds, width, height, bs);
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
  for (std::size_t i = 0; i < seeds.size(); ++i)
    cells[i] = detail::voronoi_cell(seeds, buckets, bs, i, width, height, cell_size);
  return cells;
}

std::vector<CellFit> fit_cells(std::span<const PointSet> cells, std::span<const Ring> polygons,
                               const FitParams& params, const RegionContext& ctx) {
  std::vector<CellFit> out(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    RegionContext local = ctx;
    local.cell_id = static_cast<int>(i);
    out[i] = detail::fit_cell(cells[i], polygons[i], params, local);
  }
  return out;
}

Reconstruction rasterize(std::span<const Region> regions, int width, int height,
                         double cell_size) {
  Reconstruction rec{Grid<double>(width, height), Grid<int>(width, height),
                     Grid<int>(width, height, -1), 0.0};
  if (regions.empty()) return rec;
  const RegionLocator locator(regions, cell_size);
  std::size_t gaps = 0;
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

}  // namespace serial

}  // namespace clear::kernels
