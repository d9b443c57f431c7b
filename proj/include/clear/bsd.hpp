#pragma once

#include <vector>

#include "clear/geometry.hpp"
#include "clear/raster.hpp"

namespace clear {

struct PixelCoord {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const PixelCoord&, const PixelCoord&) = default;
};

/// Map-frame centre of a pixel: ((col + 0.5) * cell, (row + 0.5) * cell).
inline Vec2 pixel_center(PixelCoord p, double cell_size) {
  return {(p.col + 0.5) * cell_size, (p.row + 0.5) * cell_size};
}

struct BsdParams {
  int n = 100;             // requested seed count
  double alpha_bdy = 1.0;  // share of seeds reserved for landcover boundaries
  double r_min = 3.0;      // minimum spacing of flat-phase seeds (pixels)
  int k = 3;               // entropy window
};

struct SeedSet {
  std::vector<PixelCoord> seeds;
  int n_requested = 0;
  int n_flat = 0;  // seeds placed by the flat-sampling and centroid phases
  double alpha_bdy = 0.0;
  double r_min = 0.0;
  int k = 3;
  bool underfilled = false;
};

struct ConvexCell {
  int id = 0;
  Ring vertices;  // map metres, CCW
  PixelCoord seed;
};

/// Boundary-seeded selection.
///
/// Phases, in order:
///  1. flat sampling: pixels by ascending local std, accepted when at least r_min
///     pixels from every accepted seed, until n - round(alpha_bdy * n) seeds;
///  2. flat-region centroids: per class (ascending id), 4-connected components of
///     {sigma <= tau_flat, L = c} in scan order contribute the member pixel closest to
///     their centroid, until the flat quota is met;
///  3. boundary pixels by descending local entropy fill the remaining slots;
///  4. if the boundary is exhausted, flat sampling resumes with the same spacing rule
///     and then drops it, so the result is short only when the tile has fewer than n
///     pixels (`underfilled`).
/// Ties in every ordering break on (row, col).
SeedSet select_seeds(const TerrainTile& tile, const StatGrid& sigma, const BsdParams& params);

/// Voronoi cells of the seeds clipped to the tile rectangle, one per seed, in seed order.
std::vector<ConvexCell> voronoi_partition(const SeedSet& seeds, const TerrainTile& tile);

/// Pixel -> index of the nearest seed (squared distance in pixel units, ties to the lower
/// index). Consistent with voronoi_partition.
Grid<int> voronoi_labels(const SeedSet& seeds, int width, int height);

/// Geometric tolerance for convexity checks: 1e-9 * cell_size^2.
inline double geom_eps(double cell_size) { return 1e-9 * cell_size * cell_size; }

}  // namespace clear
