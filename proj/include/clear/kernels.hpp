#pragma once

// Data-parallel kernels behind the public API. Every kernel has a sequential reference in
// kernels::serial and an OpenMP version in kernels::omp; both evaluate each output element
// with identical arithmetic, so results are bit-identical regardless of thread count.

#include <span>
#include <vector>

#include "clear/bsd.hpp"
#include "clear/geometry.hpp"
#include "clear/grid.hpp"
#include "clear/planefit.hpp"

namespace clear {

struct Reconstruction {
  Grid<double> elevation;
  Grid<int> landcover;
  Grid<int> region;      // region index per pixel
  double gap_fraction = 0.0;  // pixels not inside any polygon, filled from the nearest one
};

struct CellFit {
  std::vector<Region> regions;                    // ids local to the cell, from 0
  std::vector<std::pair<int, int>> membership;    // (pixel index, local id)
};

namespace kernels {

namespace detail {
// Per-element bodies shared by both drivers.
double window_std(const Grid<double>& elev, int row, int col, int half);
double window_entropy(const Grid<int>& labels, int row, int col, int half,
                      std::vector<int>& counts);
int nearest_seed(std::span<const PixelCoord> seeds, const Grid<std::vector<int>>& buckets,
                 int bucket_size, int row, int col);
Grid<std::vector<int>> bucket_seeds(std::span<const PixelCoord> seeds, int width, int height,
                                    int bucket_size);
int seed_bucket_size(std::size_t seed_count, int width, int height);
Ring voronoi_cell(std::span<const PixelCoord> seeds, const Grid<std::vector<int>>& buckets,
                  int bucket_size, std::size_t index, int width, int height, double cell_size);
CellFit fit_cell(const PointSet& points, std::span<const Vec2> polygon, const FitParams& params,
                 const RegionContext& ctx);
}  // namespace detail

namespace serial {
StatGrid local_std(const Grid<double>& elevation, int k);
StatGrid local_entropy(const Grid<int>& landcover, int k);
Grid<int> nearest_seed_labels(std::span<const PixelCoord> seeds, int width, int height);
std::vector<Ring> voronoi_cells(std::span<const PixelCoord> seeds, int width, int height,
                                double cell_size);
std::vector<CellFit> fit_cells(std::span<const PointSet> cells, std::span<const Ring> polygons,
                               const FitParams& params, const RegionContext& ctx);
Reconstruction rasterize(std::span<const Region> regions, int width, int height,
                         double cell_size);
}  // namespace serial

namespace omp {
StatGrid local_std(const Grid<double>& elevation, int k);
StatGrid local_entropy(const Grid<int>& landcover, int k);
Grid<int> nearest_seed_labels(std::span<const PixelCoord> seeds, int width, int height);
std::vector<Ring> voronoi_cells(std::span<const PixelCoord> seeds, int width, int height,
                                double cell_size);
std::vector<CellFit> fit_cells(std::span<const PointSet> cells, std::span<const Ring> polygons,
                               const FitParams& params, const RegionContext& ctx);
Reconstruction rasterize(std::span<const Region> regions, int width, int height,
                         double cell_size);
}  // namespace omp

}  // namespace kernels
}  // namespace clear
