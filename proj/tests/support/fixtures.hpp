#pragma once

// Shared helpers for the unit and acceptance tests: deterministic random draws and a few
// small brute-force oracles that deliberately avoid the library's own fast paths.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "clear/graph.hpp"
#include "clear/planefit.hpp"
#include "clear/synth.hpp"

namespace clear::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  double normal(double sd) { return std::normal_distribution<double>(0.0, sd)(gen_); }
  std::uint64_t bits() { return gen_(); }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline TerrainTile fractal(int w, int h, double cell, double relief, std::uint64_t seed,
                           double water = 0.12) {
  SynthSpec spec;
  spec.kind = "fractal";
  spec.width = w;
  spec.height = h;
  spec.cell_size = cell;
  spec.params = {{"relief", relief}, {"water", water}};
  return synth_tile(spec, seed);
}

// Single-source shortest costs by plain Bellman-Ford relaxation over the edge list.
inline std::vector<double> bellman_ford(const RegionGraph& g, int src) {
  std::vector<double> dist(g.vertex_count(), std::numeric_limits<double>::infinity());
  dist[static_cast<std::size_t>(src)] = 0.0;
  for (std::size_t round = 0; round + 1 < g.vertex_count(); ++round) {
    bool changed = false;
    for (const GraphEdge& e : g.edges) {
      const double cand = dist[static_cast<std::size_t>(e.from)] + e.cost;
      if (cand < dist[static_cast<std::size_t>(e.to)]) {
        dist[static_cast<std::size_t>(e.to)] = cand;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return dist;
}

// Least-squares plane by the uncentred 3x3 normal equations, Gaussian elimination with
// partial pivoting. Independent of the library's centred Cramer solve.
inline Plane normal_equation_plane(const std::vector<Point3>& pts) {
  double m[3][4] = {};
  for (const auto& p : pts) {
    const double row[3] = {p.x, p.y, 1.0};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
      m[i][3] += row[i] * p.z;
    }
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    for (int j = 0; j < 4; ++j) std::swap(m[col][j], m[piv][j]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int j = col; j < 4; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

}  // namespace clear::testing
