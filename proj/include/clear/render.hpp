#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "clear/geometry.hpp"
#include "clear/grid.hpp"
#include "clear/planefit.hpp"
#include "clear/raster.hpp"

namespace clear {

struct RenderOptions {
  double pixels_per_meter = 4.0;  // SVG user units per map metre, before cell scaling
  bool outline = true;
};

/// Regions filled by landcover class (non-traversable hatched dark), optional path overlay.
std::string render_svg(std::span<const Region> regions, double width_m, double height_m,
                       std::span<const Vec2> path = {}, const RenderOptions& options = {});

/// Binary PPM of a label raster with an optional path (map metres) drawn in red.
void write_ppm(const std::filesystem::path& path, const Grid<int>& labels, double cell_size,
               std::span<const Vec2> polyline = {});

/// Fixed palette colour for a class id, "#rrggbb".
std::string class_color(int class_id);

}  // namespace clear
