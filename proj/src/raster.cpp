#include "clear/raster.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "clear/error.hpp"
#include "clear/kernels.hpp"

namespace clear {

ClassTable::ClassTable(std::vector<LandcoverClass> classes) : classes_(std::move(classes)) {
  std::sort(classes_.begin(), classes_.end(),
            [](const LandcoverClass& a, const LandcoverClass& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const auto& c = classes_[i];
    if (c.id < 0) throw DataError("class id " + std::to_string(c.id) + " is negative");
    if (i > 0 && classes_[i - 1].id == c.id)
      throw DataError("duplicate class id " + std::to_string(c.id));
    if (!std::isfinite(c.friction) || c.friction < 0.0)
      throw DataError("class " + std::to_string(c.id) + ": friction must be finite and >= 0");
    if (!std::isfinite(c.roughness) || c.roughness < 0.0)
      throw DataError("class " + std::to_string(c.id) + ": roughness must be finite and >= 0");
  }
}

const LandcoverClass* ClassTable::find(int id) const noexcept {
  auto it = std::lower_bound(classes_.begin(), classes_.end(), id,
                             [](const LandcoverClass& c, int v) { return c.id < v; });
  return it != classes_.end() && it->id == id ? &*it : nullptr;
}

const LandcoverClass& ClassTable::at(int id) const {
  if (const auto* c = find(id)) return *c;
  throw DataError("unknown landcover class id " + std::to_string(id));
}

void validate_tile(const TerrainTile& tile) {
  if (!(tile.cell_size > 0.0) || !std::isfinite(tile.cell_size))
    throw DataError("cell size must be positive and finite");
  if (!tile.elevation.same_shape(tile.landcover)) {
    std::ostringstream msg;
    msg << "dimension mismatch: elevation is " << tile.elevation.height() << "x"
        << tile.elevation.width() << " (rows x cols), landcover is " << tile.landcover.height()
        << "x" << tile.landcover.width();
    throw DataError(msg.str());
  }
  if (tile.width != tile.elevation.width() || tile.height != tile.elevation.height())
    throw DataError("tile dimensions disagree with raster dimensions");
  if (tile.width <= 0 || tile.height <= 0) throw DataError("tile is empty");
  for (int r = 0; r < tile.height; ++r) {
    for (int c = 0; c < tile.width; ++c) {
      if (!std::isfinite(tile.elevation(r, c))) {
        std::ostringstream msg;
        msg << "non-finite elevation at pixel (row " << r << ", col " << c << ")";
        throw DataError(msg.str());
      }
      const int id = tile.landcover(r, c);
      if (!tile.classes.contains(id)) {
        std::ostringstream msg;
        msg << "unknown landcover class id " << id << " at pixel (row " << r << ", col " << c
            << ")";
        throw DataError(msg.str());
      }
    }
  }
}

TerrainTile make_tile(Grid<double> elevation, Grid<int> landcover, ClassTable classes,
                      double cell_size) {
  TerrainTile tile;
  tile.width = elevation.width();
  tile.height = elevation.height();
  tile.cell_size = cell_size;
  tile.elevation = std::move(elevation);
  tile.landcover = std::move(landcover);
  tile.classes = std::move(classes);
  validate_tile(tile);
  return tile;
}

namespace {

void check_window(const TerrainTile& tile, int k, int min_k) {
  if (k % 2 == 0) throw ConfigError("window size k must be odd, got " + std::to_string(k));
  if (k < min_k)
    throw ConfigError("window size k must be >= " + std::to_string(min_k) + ", got " +
                      std::to_string(k));
  if (k > std::min(tile.width, tile.height))
    throw ConfigError("window size k=" + std::to_string(k) + " exceeds the tile's smaller side");
}

}  // namespace

StatGrid local_std(const TerrainTile& tile, int k) {
  check_window(tile, k, 3);
  return kernels::omp::local_std(tile.elevation, k);
}

StatGrid local_entropy(const TerrainTile& tile, int k) {
  check_window(tile, k, 1);
  return kernels::omp::local_entropy(tile.landcover, k);
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw DataError("quantile of an empty set");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return values[lo];
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

double flat_threshold(const StatGrid& sigma) {
  if (sigma.empty()) throw DataError("flat threshold of an empty grid");
  return quantile(sigma.values(), 0.25);
}

Mask boundary_mask(const TerrainTile& tile) {
  const auto& L = tile.landcover;
  Mask mask(tile.width, tile.height, 0);
  for (int r = 0; r < tile.height; ++r) {
    for (int c = 0; c < tile.width; ++c) {
      const int v = L(r, c);
      const bool differs = (r > 0 && L(r - 1, c) != v) || (r + 1 < tile.height && L(r + 1, c) != v) ||
                           (c > 0 && L(r, c - 1) != v) || (c + 1 < tile.width && L(r, c + 1) != v);
      mask(r, c) = differs ? 1 : 0;
    }
  }
  return mask;
}

}  // namespace clear
