#pragma once

#include <filesystem>
#include <string>

#include "clear/raster.hpp"

namespace clear {

// ESRI ASCII grid: ncols/nrows/xllcorner/yllcorner/cellsize/NODATA_value
// header followed by nrows lines of ncols values, northernmost row first.
struct AsciiGrid {
  Grid<double> values;
  double xll = 0.0;
  double yll = 0.0;
  double cell_size = 1.0;
  std::optional<double> nodata;
};

AsciiGrid read_ascii_grid(const std::filesystem::path& path);

/// Values are written in shortest round-trip form, so read(write(g)) is bit-exact.
void write_ascii_grid(const std::filesystem::path& path, const Grid<double>& values,
                      double cell_size, std::optional<double> nodata = -9999.0);
void write_ascii_grid(const std::filesystem::path& path, const Grid<int>& values,
                      double cell_size, std::optional<double> nodata = -9999.0);

/// Class table as JSON: {"classes": [{"id", "name", "friction", "roughness", "traversable"}]}.
ClassTable load_class_table(const std::filesystem::path& path);
void save_class_table(const std::filesystem::path& path, const ClassTable& table);

/// Loads both layers and the legend, enforcing every TerrainTile invariant.
TerrainTile load_tile(const std::filesystem::path& elevation_path,
                      const std::filesystem::path& landcover_path,
                      const std::filesystem::path& class_table_path);

/// Writes <dir>/elevation.asc, <dir>/landcover.asc and <dir>/classes.json.
void save_tile(const std::filesystem::path& dir, const TerrainTile& tile);

}  // namespace clear
