#pragma once

#include <string>
#include <vector>

#include "clear/baselines.hpp"
#include "clear/bsd.hpp"
#include "clear/planefit.hpp"
#include "clear/raster.hpp"

namespace clear {

struct ClearParams {
  BsdParams bsd;
  int sigma_window = 5;  // window for the local elevation std
  FitParams fit;
  double s_max = 0.35;
};

// Output of any decomposition method in a common shape.
struct Decomposition {
  std::string method;
  std::vector<ConvexCell> cells;  // first-stage cells (Voronoi, grid, hex); empty for quadtree
  SeedSet seeds;                  // CLEAR only
  std::vector<Region> regions;
  Grid<int> membership;  // pixel -> region id
  double seconds = 0.0;  // abstraction wall time
  // Resolution parameter that produced this result: seed count (clear), cell side in pixels
  // (grid), hexagon side in metres (hex) or RMSE threshold (quadtree).
  double resolution = 0.0;
};

/// Pixel centres (map metres), elevations, labels and raster indices of every pixel whose
/// label in `cell_of_pixel` is c, for all c.
std::vector<PointSet> gather_cell_points(const TerrainTile& tile, const Grid<int>& cell_of_pixel,
                                         int cell_count);

/// Seeds -> Voronoi cells -> recursive plane fitting.
Decomposition decompose_clear(const TerrainTile& tile, const ClearParams& params);

/// Fits one region per first-stage cell, with pixels assigned by centre-in-polygon
/// (lowest cell id on shared edges).
Decomposition regions_from_cells(const TerrainTile& tile, std::vector<ConvexCell> cells,
                                 double s_max, std::string method);

enum class Method { clear, grid, hex, quadtree };

Method parse_method(const std::string& name);  // ConfigError on unknown names
std::string method_name(Method m);

struct BudgetOptions {
  ClearParams clear;               // template; n is searched
  double quadtree_min_area = 4;    // quadtree searches epsilon at this min_area
};

/// Chooses the method's resolution parameter so the region count is nearest `budget`.
Decomposition decompose_to_budget(const TerrainTile& tile, Method method, int budget,
                                  const BudgetOptions& options);

}  // namespace clear
