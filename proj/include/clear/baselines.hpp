#pragma once

#include <vector>

#include "clear/bsd.hpp"
#include "clear/planefit.hpp"
#include "clear/raster.hpp"

namespace clear {

/// Square cells, row-major, edge cells truncated. The side (pixels) is the one whose cell
/// count is nearest `target_regions`; ties go to the side nearest ceil(sqrt(W*H/target)).
std::vector<ConvexCell> grid_decompose(const TerrainTile& tile, int target_regions);
std::vector<ConvexCell> grid_decompose_side(const TerrainTile& tile, int side_px);
int grid_side_for_budget(const TerrainTile& tile, int target_regions);

/// Pointy-top hexagonal lattice, one hexagon centred on the tile centre, cells clipped to
/// the tile. The hexagon side is searched so the clipped-cell count is nearest the target.
std::vector<ConvexCell> hex_decompose(const TerrainTile& tile, int target_regions);
std::vector<ConvexCell> hex_decompose_side(const TerrainTile& tile, double side_m);
double hex_side_for_budget(const TerrainTile& tile, int target_regions);

struct QuadtreeParams {
  double epsilon = 10.0;  // split while plane-fit RMSE exceeds this ...
  int min_area = 4;       // ... and the node area (pixels^2) exceeds this
};

struct QuadtreeResult {
  std::vector<Region> regions;
  Grid<int> membership;  // pixel -> region id
};

/// Quadtree over the enclosing power-of-two square; out-of-bounds leaves are dropped and
/// straddling leaves clipped to the tile.
QuadtreeResult quadtree_decompose(const TerrainTile& tile, const QuadtreeParams& params,
                                  double s_max = 0.35);

/// Leaf count only (cheap, no region construction); used for budget matching.
int quadtree_leaf_count(const TerrainTile& tile, const QuadtreeParams& params);

}  // namespace clear
