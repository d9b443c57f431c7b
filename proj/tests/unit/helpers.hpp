#pragma once

#include <filesystem>
#include <string>

#include "clear/raster.hpp"

namespace clear::testing {

inline ClassTable two_class_legend() {
  return ClassTable({{0, "grass", 0.2, 0.05, true}, {1, "forest", 0.5, 0.3, true}});
}

inline ClassTable legend_with_water() {
  return ClassTable({{0, "grass", 0.2, 0.05, true},
                     {1, "forest", 0.5, 0.3, true},
                     {6, "water", 0.0, 0.0, false}});
}

inline TerrainTile flat_tile(int w, int h, double cell = 1.0, double z = 0.0) {
  return make_tile(Grid<double>(w, h, z), Grid<int>(w, h, 0), two_class_legend(), cell);
}

// A fresh directory under the system temp dir, emptied on construction.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("clear_unit_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace clear::testing
