#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clear/grid.hpp"

namespace clear {

struct LandcoverClass {
  int id = 0;
  std::string name;
  double friction = 0.0;   // dimensionless, >= 0
  double roughness = 0.0;  // dimensionless, >= 0
  bool traversable = true;

  friend bool operator==(const LandcoverClass&, const LandcoverClass&) = default;
};

/// Legend of landcover classes, kept sorted by id.
class ClassTable {
 public:
  ClassTable() = default;
  /// Throws DataError on duplicate ids or negative/non-finite coefficients.
  explicit ClassTable(std::vector<LandcoverClass> classes);

  const LandcoverClass* find(int id) const noexcept;
  const LandcoverClass& at(int id) const;  // DataError if absent
  bool contains(int id) const noexcept { return find(id) != nullptr; }

  const std::vector<LandcoverClass>& classes() const noexcept { return classes_; }
  std::size_t size() const noexcept { return classes_.size(); }
  int max_id() const noexcept { return classes_.empty() ? -1 : classes_.back().id; }

  friend bool operator==(const ClassTable&, const ClassTable&) = default;

 private:
  std::vector<LandcoverClass> classes_;
};

// Co-registered elevation and landcover rasters on a square-pixel lattice.
// Pixel (row, col) covers map x in [col, col+1)*cell_size and map y in
// [row, row+1)*cell_size; map y grows with the row index (southwards).
struct TerrainTile {
  int width = 0;
  int height = 0;
  double cell_size = 1.0;
  Grid<double> elevation;
  Grid<int> landcover;
  ClassTable classes;

  double width_m() const noexcept { return width * cell_size; }
  double height_m() const noexcept { return height * cell_size; }

  friend bool operator==(const TerrainTile&, const TerrainTile&) = default;
};

/// Builds a tile and checks every invariant; throws DataError naming the offending value.
TerrainTile make_tile(Grid<double> elevation, Grid<int> landcover, ClassTable classes,
                      double cell_size);

/// Re-checks the invariants of an already-built tile.
void validate_tile(const TerrainTile& tile);

/// Population standard deviation of elevation over a k x k window clamped to the raster.
StatGrid local_std(const TerrainTile& tile, int k);

/// Shannon entropy (nats) of the landcover histogram over a clamped k x k window.
StatGrid local_entropy(const TerrainTile& tile, int k);

/// 25th percentile of all values, type-7 (linear interpolation between order statistics).
double flat_threshold(const StatGrid& sigma);

/// Type-7 sample quantile, q in [0,1]. Values need not be sorted.
double quantile(std::vector<double> values, double q);

/// True where any in-bounds 4-neighbour carries a different landcover class.
Mask boundary_mask(const TerrainTile& tile);

}  // namespace clear
