#include "clear/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include "clear/error.hpp"
#include "clear/io.hpp"

namespace clear {

namespace {

constexpr std::array<const char*, 12> kPalette = {
    "#9ccc65", "#2e7d32", "#c5b358", "#f0e68c", "#bcaaa4", "#9e9e9e",
    "#1e88e5", "#e3f2fd", "#ff8a65", "#ba68c8", "#4db6ac", "#7986cb"};

std::array<unsigned char, 3> rgb(const std::string& hex) {
  auto byte = [&](std::size_t at) {
    return static_cast<unsigned char>(std::stoi(hex.substr(at, 2), nullptr, 16));
  };
  return {byte(1), byte(3), byte(5)};
}

}  // namespace

std::string class_color(int class_id) {
  const std::size_t slot = static_cast<std::size_t>(class_id < 0 ? -class_id : class_id);
  return kPalette[slot % kPalette.size()];
}

std::string render_svg(std::span<const Region> regions, double width_m, double height_m,
                       std::span<const Vec2> path, const RenderOptions& options) {
  const double longest = std::max(width_m, height_m);
  const double scale =
      longest > 0.0 ? std::min(options.pixels_per_meter, 1600.0 / longest) : 1.0;
  auto fmt = [&](double v) { return format_double(std::round(v * scale * 100.0) / 100.0); };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width_m) +
                    "\" height=\"" + fmt(height_m) + "\">\n";
  for (const Region& r : regions) {
    if (r.polygon.size() < 3) continue;
    std::string points;
    for (const Vec2& v : r.polygon) {
      if (!points.empty()) points += ' ';
      points += fmt(v.x) + ',' + fmt(v.y);
    }
    svg += "  <polygon points=\"" + points + "\" fill=\"" +
           (r.traversable ? class_color(r.landcover) : std::string("#37474f")) + "\"";
    if (options.outline) svg += " stroke=\"#333\" stroke-width=\"0.5\"";
    svg += "><title>region " + std::to_string(r.id) + "</title></polygon>\n";
  }
  if (path.size() >= 2) {
    std::string points;
    for (const Vec2& v : path) {
      if (!points.empty()) points += ' ';
      points += fmt(v.x) + ',' + fmt(v.y);
    }
    svg += "  <polyline points=\"" + points +
           "\" fill=\"none\" stroke=\"#d32f2f\" stroke-width=\"2\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_ppm(const std::filesystem::path& path, const Grid<int>& labels, double cell_size,
               std::span<const Vec2> polyline) {
  const int w = labels.width(), h = labels.height();
  std::vector<unsigned char> pixels(static_cast<std::size_t>(w) * h * 3);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const auto col = rgb(class_color(labels(r, c)));
      std::copy(col.begin(), col.end(), pixels.begin() + (static_cast<std::ptrdiff_t>(r) * w + c) * 3);
    }
  }
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    const Vec2 a = polyline[i - 1], b = polyline[i];
    const int steps = std::max(1, static_cast<int>(std::ceil(4.0 * distance(a, b) / cell_size)));
    for (int s = 0; s <= steps; ++s) {
      const Vec2 p = a + (static_cast<double>(s) / steps) * (b - a);
      const int c = static_cast<int>(std::floor(p.x / cell_size));
      const int r = static_cast<int>(std::floor(p.y / cell_size));
      if (r < 0 || c < 0 || r >= h || c >= w) continue;
      auto* px = &pixels[(static_cast<std::size_t>(r) * w + c) * 3];
      px[0] = 211;
      px[1] = 47;
      px[2] = 47;
    }
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "P6\n" << w << ' ' << h << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

}  // namespace clear
