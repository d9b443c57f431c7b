#include "clear/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "clear/error.hpp"

namespace clear {

double SynthSpec::param(const std::string& name, double fallback) const {
  auto it = params.find(name);
  return it == params.end() ? fallback : it->second;
}

ClassTable default_class_table() {
  return ClassTable({
      {0, "grassland", 0.20, 0.10, true},
      {1, "forest", 0.60, 0.40, true},
      {2, "shrubland", 0.40, 0.30, true},
      {3, "cropland", 0.25, 0.15, true},
      {4, "barren", 0.15, 0.20, true},
      {5, "urban", 0.05, 0.05, true},
      {6, "water", 1.00, 0.00, false},
      {7, "snow_ice", 1.00, 0.50, false},
  });
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; avoids implementation-defined
// distributions so tiles are identical across standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ClassTable two_class_table() {
  const auto full = default_class_table();
  return ClassTable({full.at(0), full.at(1)});
}

// Multi-octave value noise normalised to [0, 1].
Grid<double> value_noise(int width, int height, int octaves, std::mt19937_64& rng) {
  Grid<double> out(width, height, 0.0);
  double amplitude = 1.0;
  int spacing = std::max(2, std::max(width, height) / 2);
  for (int o = 0; o < octaves; ++o) {
    const int gw = width / spacing + 2;
    const int gh = height / spacing + 2;
    Grid<double> lattice(gw, gh);
    for (auto& v : lattice.values()) v = uniform01(rng);
    for (int r = 0; r < height; ++r) {
      const double fy = static_cast<double>(r) / spacing;
      const int y0 = static_cast<int>(fy);
      double ty = fy - y0;
      ty = ty * ty * (3.0 - 2.0 * ty);
      for (int c = 0; c < width; ++c) {
        const double fx = static_cast<double>(c) / spacing;
        const int x0 = static_cast<int>(fx);
        double tx = fx - x0;
        tx = tx * tx * (3.0 - 2.0 * tx);
        const double top = lattice(y0, x0) * (1 - tx) + lattice(y0, x0 + 1) * tx;
        const double bottom = lattice(y0 + 1, x0) * (1 - tx) + lattice(y0 + 1, x0 + 1) * tx;
        out(r, c) += amplitude * (top * (1 - ty) + bottom * ty);
      }
    }
    amplitude *= 0.5;
    spacing = std::max(1, spacing / 2);
  }
  const auto [lo, hi] = std::minmax_element(out.values().begin(), out.values().end());
  const double low = *lo;
  const double span = *hi - *lo;
  for (auto& v : out.values()) v = span > 0 ? (v - low) / span : 0.0;
  return out;
}

TerrainTile fractal_tile(const SynthSpec& spec, std::mt19937_64& rng) {
  const int w = spec.width, h = spec.height;
  const int octaves = static_cast<int>(spec.param("octaves", 5));
  const double relief = spec.param("relief", 40.0);
  const double water = spec.param("water", 0.12);

  Grid<double> height = value_noise(w, h, octaves, rng);
  Grid<double> moisture = value_noise(w, h, std::max(1, octaves - 2), rng);

  Grid<double> elev(w, h);
  for (std::size_t i = 0; i < elev.size(); ++i) elev[i] = relief * height[i];

  std::vector<double> sorted = height.values();
  std::sort(sorted.begin(), sorted.end());
  const double water_level =
      water > 0 ? sorted[std::min(sorted.size() - 1,
                                  static_cast<std::size_t>(water * static_cast<double>(sorted.size())))]
                : -1.0;

  Grid<int> land(w, h);
  for (std::size_t i = 0; i < land.size(); ++i) {
    const double m = moisture[i];
    int cls = 0;
    if (height[i] < water_level) {
      cls = 6;
    } else if (m < 0.2) {
      cls = 4;
    } else if (m < 0.4) {
      cls = 0;
    } else if (m < 0.6) {
      cls = 3;
    } else if (m < 0.8) {
      cls = 2;
    } else {
      cls = 1;
    }
    land[i] = cls;
  }
  return make_tile(std::move(elev), std::move(land), default_class_table(), spec.cell_size);
}

}  // namespace

TerrainTile synth_tile(const SynthSpec& spec, std::uint64_t rng_seed) {
  if (spec.width <= 0 || spec.height <= 0) throw ConfigError("synthetic tile must be non-empty");
  if (!(spec.cell_size > 0.0)) throw ConfigError("cell size must be positive");

  std::mt19937_64 rng(rng_seed);
  const int w = spec.width, h = spec.height;
  const double cs = spec.cell_size;
  Grid<double> elev(w, h, 0.0);
  Grid<int> land(w, h, 0);

  if (spec.kind == "ramp") {
    const double a = spec.param("a", 0.1), b = spec.param("b", 0.0), c0 = spec.param("c", 0.0);
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) elev(r, c) = a * (c * cs) + b * (r * cs) + c0;
    return make_tile(std::move(elev), std::move(land), two_class_table(), cs);
  }
  if (spec.kind == "hill" || spec.kind == "hills") {
    const bool single = spec.kind == "hill";
    const int count = single ? 1 : static_cast<int>(spec.param("count", 3));
    const double height = spec.param("height", single ? 100.0 : 50.0);
    const double sigma_frac = spec.param("sigma_frac", single ? 0.2 : 0.15);
    const double extent = std::min(w, h) * cs;
    for (int i = 0; i < count; ++i) {
      double cx = 0.5 * w * cs, cy = 0.5 * h * cs, amp = height, sigma = sigma_frac * extent;
      if (!single) {
        cx = uniform01(rng) * w * cs;
        cy = uniform01(rng) * h * cs;
        amp = height * (0.5 + 0.5 * uniform01(rng));
        sigma *= 0.7 + 0.6 * uniform01(rng);
      }
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
          const double dx = (c + 0.5) * cs - cx, dy = (r + 0.5) * cs - cy;
          elev(r, c) += amp * std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
        }
      }
    }
    return make_tile(std::move(elev), std::move(land), two_class_table(), cs);
  }
  if (spec.kind == "step") {
    const double low = spec.param("low", 0.0), high = spec.param("high", 10.0);
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) elev(r, c) = c < w / 2 ? low : high;
    return make_tile(std::move(elev), std::move(land), two_class_table(), cs);
  }
  if (spec.kind == "diagonal") {
    const double slope = spec.param("slope", 0.0);
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        land(r, c) = r < c ? 0 : 1;
        elev(r, c) = slope * (c * cs);
      }
    }
    return make_tile(std::move(elev), std::move(land), two_class_table(), cs);
  }
  if (spec.kind == "checkerboard") {
    const int block = std::max(1, static_cast<int>(spec.param("block", 1)));
    const int classes = std::clamp(static_cast<int>(spec.param("classes", 2)), 1, 6);
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) land(r, c) = (r / block + c / block) % classes;
    std::vector<LandcoverClass> legend;
    const auto full = default_class_table();
    for (int i = 0; i < classes; ++i) legend.push_back(full.at(i));
    return make_tile(std::move(elev), std::move(land), ClassTable(std::move(legend)), cs);
  }
  if (spec.kind == "fractal") return fractal_tile(spec, rng);

  throw ConfigError("unknown synthetic terrain '" + spec.kind +
                    "' (expected ramp, hill, hills, step, diagonal, checkerboard or fractal)");
}

}  // namespace clear
