#pragma once

#include <map>
#include <span>
#include <vector>

#include "clear/geometry.hpp"
#include "clear/grid.hpp"
#include "clear/kernels.hpp"
#include "clear/planefit.hpp"
#include "clear/raster.hpp"

namespace clear {

/// Per-pixel plane evaluation and dominant class of the containing region. Pixels outside
/// every polygon take the nearest region; more than 0.1% of such pixels is a DataError.
Reconstruction rasterize(std::span<const Region> regions, int width, int height,
                         double cell_size);

double rmse(const Grid<double>& truth, const Grid<double>& estimate);

struct IouResult {
  double miou = 0.0;
  std::map<int, double> per_class;  // classes present in the truth map
};
IouResult miou(const Grid<int>& truth, const Grid<int>& estimate);

/// Jensen-Shannon divergence in bits (so in [0, 1]). Inputs need not be normalised.
double jsd(std::span<const double> p, std::span<const double> q);

/// 1 - JSD between the class distributions of two label maps.
double jsd_retention(const Grid<int>& truth, const Grid<int>& estimate);

struct ComplexityParts {
  double jsd_norm = 0.0;       // sqrt(JSD(p || uniform over the legend))
  double heterogeneity = 0.0;  // F: mean share of differing neighbours in k x k windows
  double psi = 0.0;
};
ComplexityParts complexity_parts(const TerrainTile& tile, double alpha, int k);
double complexity_psi(const TerrainTile& tile, double alpha = 0.5, int k = 5);

// Placement of patch B relative to patch A: B's pixel (r, c) is A's (r + row, c + col).
struct RepeatFrame {
  int row = 0;
  int col = 0;
  int width_a = 0, height_a = 0;
  int width_b = 0, height_b = 0;
  double cell_size = 1.0;
};

struct RepeatResult {
  double mean_best_iou = 0.0;
  double repeat_ratio = 0.0;
  std::size_t compared = 0;  // polygons of A with area inside the overlap
};

/// Both sets are clipped to the overlap window (in A's frame); each A polygon is matched to
/// its best-IoU B polygon by exact convex intersection.
RepeatResult repeatability(std::span<const Ring> a, std::span<const Ring> b,
                           const RepeatFrame& frame, double iou_threshold = 0.5);

/// IoU of two convex rings.
double polygon_iou(std::span<const Vec2> a, std::span<const Vec2> b);

struct EvalReport {
  double rmse_m = 0.0;
  double miou = 0.0;
  std::map<int, double> per_class_iou;
  double jsd_retention = 0.0;
  double complexity_psi = 0.0;
  int region_count = 0;
  double abstraction_time_s = 0.0;
};

EvalReport evaluate(const TerrainTile& tile, std::span<const Region> regions,
                    double abstraction_time_s);

}  // namespace clear
