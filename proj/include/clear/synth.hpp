#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "clear/raster.hpp"

namespace clear {

/// Named generator plus free-form numeric parameters, e.g. kind "ramp" with {a, b, c}.
///
/// Kinds and their parameters (defaults in brackets):
///   ramp          a [0.1], b [0], c [0]           z = a*x + b*y + c, x = col*cell, y = row*cell
///   hills         count [3], height [50], sigma_frac [0.15]    random Gaussian bumps
///   hill          height [100], sigma_frac [0.2]  single Gaussian centred on the tile
///   step          low [0], high [10]              elevation jumps at the middle column
///   diagonal      slope [0]                       class 0 where row < col, class 1 elsewhere
///   checkerboard  block [1], classes [2]          block checkerboard landcover on flat ground
///   fractal       relief [40], octaves [5], water [0.12]       value-noise terrain with
///                 mixed landcover; the lowest `water` fraction of pixels becomes water
struct SynthSpec {
  std::string kind;
  int width = 100;
  int height = 100;
  double cell_size = 1.0;
  std::map<std::string, double> params;

  double param(const std::string& name, double fallback) const;
};

/// Deterministic for a fixed (spec, rng_seed). Throws ConfigError on an unknown kind.
TerrainTile synth_tile(const SynthSpec& spec, std::uint64_t rng_seed);

/// Eight-class legend used by the generators (ids 0..7; 6 = water and 7 = snow/ice are
/// non-traversable).
ClassTable default_class_table();

}  // namespace clear
