#include "clear/bsd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "clear/error.hpp"
#include "clear/kernels.hpp"

namespace clear {

namespace {

// Greedy seed accumulator with an occupancy raster for spacing queries.
class SeedPicker {
 public:
  SeedPicker(int width, int height, int limit)
      : width_(width), height_(height), limit_(limit), taken_(width, height, 0) {}

  bool full() const { return static_cast<int>(seeds_.size()) >= limit_; }
  std::size_t size() const { return seeds_.size(); }
  bool taken(int idx) const { return taken_[static_cast<std::size_t>(idx)] != 0; }
  const std::vector<PixelCoord>& seeds() const { return seeds_; }

  // True if no chosen seed is strictly closer than r_min (pixels).
  bool spaced(int idx, double r_min) const {
    if (r_min <= 0.0) return true;
    const int row = idx / width_, col = idx % width_;
    const int reach = static_cast<int>(std::ceil(r_min));
    const double limit2 = r_min * r_min;
    for (int r = std::max(0, row - reach); r <= std::min(height_ - 1, row + reach); ++r) {
      for (int c = std::max(0, col - reach); c <= std::min(width_ - 1, col + reach); ++c) {
        if (!taken_(r, c)) continue;
        const double dr = r - row, dc = c - col;
        if (dr * dr + dc * dc < limit2) return false;
      }
    }
    return true;
  }

  void add(int idx) {
    taken_[static_cast<std::size_t>(idx)] = 1;
    seeds_.push_back({idx / width_, idx % width_});
  }

 private:
  int width_, height_, limit_;
  Grid<unsigned char> taken_;
  std::vector<PixelCoord> seeds_;
};

// Flat sampling over `order` until the picker holds `quota` seeds.
void flat_sampling(SeedPicker& picker, const std::vector<int>& order, std::size_t quota,
                   double r_min) {
  for (int idx : order) {
    if (picker.size() >= quota) return;
    if (picker.taken(idx) || !picker.spaced(idx, r_min)) continue;
    picker.add(idx);
  }
}

// One representative pixel per 4-connected component of {sigma <= tau, L = c}, grouped by
// class id ascending, components in scan order of their first pixel.
std::vector<int> flat_component_centroids(const TerrainTile& tile, const StatGrid& sigma,
                                          double tau) {
  const int w = tile.width, h = tile.height;
  Grid<int> component(w, h, -1);
  struct Component {
    int label;
    int first;
    std::vector<int> pixels;
  };
  std::vector<Component> comps;
  std::vector<int> stack;
  for (int start = 0; start < w * h; ++start) {
    if (component[static_cast<std::size_t>(start)] >= 0 || !(sigma[static_cast<std::size_t>(start)] <= tau))
      continue;
    const int label = tile.landcover[static_cast<std::size_t>(start)];
    const int id = static_cast<int>(comps.size());
    comps.push_back({label, start, {}});
    stack.assign(1, start);
    component[static_cast<std::size_t>(start)] = id;
    while (!stack.empty()) {
      const int p = stack.back();
      stack.pop_back();
      comps.back().pixels.push_back(p);
      const int r = p / w, c = p % w;
      const int nbr[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
      for (const auto& n : nbr) {
        if (!component.in_bounds(n[0], n[1])) continue;
        const auto q = component.index(n[0], n[1]);
        if (component[q] >= 0 || !(sigma[q] <= tau) || tile.landcover[q] != label) continue;
        component[q] = id;
        stack.push_back(static_cast<int>(q));
      }
    }
  }
  std::stable_sort(comps.begin(), comps.end(),
                   [](const Component& a, const Component& b) { return a.label < b.label; });

  std::vector<int> reps;
  reps.reserve(comps.size());
  for (auto& comp : comps) {
    std::sort(comp.pixels.begin(), comp.pixels.end());
    double mr = 0.0, mc = 0.0;
    for (int p : comp.pixels) {
      mr += p / w;
      mc += p % w;
    }
    mr /= static_cast<double>(comp.pixels.size());
    mc /= static_cast<double>(comp.pixels.size());
    // Nearest member pixel to the centroid; scan order breaks ties.
    int best = comp.pixels.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (int p : comp.pixels) {
      const double dr = p / w - mr, dc = p % w - mc;
      const double d = dr * dr + dc * dc;
      if (d < best_d) {
        best_d = d;
        best = p;
      }
    }
    reps.push_back(best);
  }
  return reps;
}

}  // namespace

SeedSet select_seeds(const TerrainTile& tile, const StatGrid& sigma, const BsdParams& params) {
  if (params.n < 1) throw ConfigError("seed count n must be >= 1");
  if (!(params.alpha_bdy >= 0.0 && params.alpha_bdy <= 1.0))
    throw ConfigError("alpha_bdy must lie in [0, 1]");
  if (!(params.r_min >= 0.0)) throw ConfigError("r_min must be >= 0");
  if (!sigma.same_shape(tile.elevation))
    throw DataError("sigma grid does not match the tile dimensions");

  const int w = tile.width, h = tile.height;
  const int npix = w * h;
  const double tau = flat_threshold(sigma);
  const Mask boundary = boundary_mask(tile);
  const StatGrid entropy = local_entropy(tile, params.k);

  // Ascending sigma; stable on the row-major index, i.e. (row, col) ties.
  std::vector<int> flat_order(static_cast<std::size_t>(npix));
  std::iota(flat_order.begin(), flat_order.end(), 0);
  std::stable_sort(flat_order.begin(), flat_order.end(), [&](int a, int b) {
    return sigma[static_cast<std::size_t>(a)] < sigma[static_cast<std::size_t>(b)];
  });

  std::vector<int> boundary_order;
  for (int i = 0; i < npix; ++i)
    if (boundary[static_cast<std::size_t>(i)]) boundary_order.push_back(i);
  std::stable_sort(boundary_order.begin(), boundary_order.end(), [&](int a, int b) {
    return entropy[static_cast<std::size_t>(a)] > entropy[static_cast<std::size_t>(b)];
  });

  const int n = params.n;
  const int n_bdy = static_cast<int>(std::floor(params.alpha_bdy * n + 0.5));
  const auto n_f = static_cast<std::size_t>(n - n_bdy);

  SeedPicker picker(w, h, n);
  flat_sampling(picker, flat_order, n_f, params.r_min);

  if (picker.size() < n_f) {
    for (int rep : flat_component_centroids(tile, sigma, tau)) {
      if (picker.size() >= n_f) break;
      if (!picker.taken(rep)) picker.add(rep);
    }
  }
  const int n_flat = static_cast<int>(picker.size());

  for (int idx : boundary_order) {
    if (picker.full()) break;
    if (!picker.taken(idx)) picker.add(idx);
  }

  // Boundary exhausted: resume spaced flat sampling, then drop the spacing.
  const auto target = static_cast<std::size_t>(n);
  if (picker.size() < target) flat_sampling(picker, flat_order, target, params.r_min);
  if (picker.size() < target) flat_sampling(picker, flat_order, target, 0.0);

  SeedSet out;
  out.seeds = picker.seeds();
  out.n_requested = n;
  out.n_flat = n_flat;
  out.alpha_bdy = params.alpha_bdy;
  out.r_min = params.r_min;
  out.k = params.k;
  out.underfilled = out.seeds.size() < target;
  return out;
}

std::vector<ConvexCell> voronoi_partition(const SeedSet& seeds, const TerrainTile& tile) {
  if (seeds.seeds.empty()) throw DataError("voronoi partition needs at least one seed");
  std::set<PixelCoord> seen;
  for (const auto& s : seeds.seeds) {
    if (!tile.elevation.in_bounds(s.row, s.col))
      throw DataError("seed (" + std::to_string(s.row) + ", " + std::to_string(s.col) +
                      ") lies outside the tile");
    if (!seen.insert(s).second)
      throw DataError("duplicate seed (" + std::to_string(s.row) + ", " + std::to_string(s.col) +
                      ")");
  }
  auto rings = kernels::omp::voronoi_cells(seeds.seeds, tile.width, tile.height, tile.cell_size);
  std::vector<ConvexCell> cells(rings.size());
  for (std::size_t i = 0; i < rings.size(); ++i)
    cells[i] = {static_cast<int>(i), std::move(rings[i]), seeds.seeds[i]};
  return cells;
}

Grid<int> voronoi_labels(const SeedSet& seeds, int width, int height) {
  return kernels::omp::nearest_seed_labels(seeds.seeds, width, height);
}

}  // namespace clear
