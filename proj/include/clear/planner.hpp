#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "clear/error.hpp"
#include "clear/graph.hpp"
#include "clear/planefit.hpp"
#include "clear/raster.hpp"

namespace clear {

struct PlanQuery {
  Vec2 start;
  Vec2 goal;
  CostWeights weights;
};

struct PlanResult {
  bool reachable = false;
  std::vector<Vec2> path;             // waypoints, map metres
  std::vector<int> visited_region_ids;  // region ids (graph plans) or pixel indices (grid plans)
  double total_cost = 0.0;
  double length_m = 0.0;
  std::size_t expanded_nodes = 0;
  double plan_time_s = 0.0;
  std::string reason;  // why the plan is unreachable, empty otherwise
};

/// Start or goal lies in a non-traversable region or pixel.
class PreconditionError : public DataError {
 public:
  PreconditionError(const std::string& what, int region) : DataError(what), region_(region) {}
  int region() const noexcept { return region_; }

 private:
  int region_;
};

// Point location over region polygons with a uniform bucket index.
class RegionLocator {
 public:
  RegionLocator(std::span<const Region> regions, double cell_size);

  /// Lowest id among regions containing p (boundary inclusive); else the nearest region if
  /// within 1e-6 * cell_size; else -1.
  int find(Vec2 p) const;
  /// As find(), but throws DataError instead of returning -1.
  int locate(Vec2 p) const;
  /// Index form of find(): position in the construction span, or -1.
  std::ptrdiff_t find_index(Vec2 p) const;
  /// Index (into the span given at construction) of the nearest region, any distance.
  std::size_t nearest_index(Vec2 p) const;
  std::size_t index_of(int region_id) const;

 private:
  std::span<const Region> regions_;
  double cell_size_;
  Box extent_;
  double bucket_;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<std::size_t>> buckets_;
  std::vector<std::pair<int, std::size_t>> id_to_index_;
};

/// Region id containing `point` (boundary ties to the lowest id).
int locate(Vec2 point, std::span<const Region> regions, double cell_size);

enum class SearchAlgorithm { astar, dijkstra };

struct SearchResult {
  bool found = false;
  std::vector<int> vertices;  // src .. dst
  double cost = 0.0;
  std::size_t expanded = 0;
};

/// Shortest vertex path under `weights`. A* uses the straight-line centroid distance to the
/// destination, admissible because every edge costs at least its centroid distance.
SearchResult graph_search(const RegionGraph& graph, int src, int dst, const CostWeights& weights,
                          SearchAlgorithm algorithm);

/// Point-to-point plan on the region graph. Start and goal attach to the centroids of their
/// regions at flat-rate distance; both in one region gives the direct segment.
/// Throws PreconditionError if either endpoint's region is not traversable.
PlanResult plan_region(const RegionGraph& graph, std::span<const Region> regions,
                       const PlanQuery& query,
                       SearchAlgorithm algorithm = SearchAlgorithm::astar);

// Per-pixel cost attributes for raw-grid planning.
struct GridCostField {
  int width = 0;
  int height = 0;
  double cell_size = 1.0;
  std::vector<CostNode> nodes;
  std::vector<unsigned char> traversable;
};

/// Central-difference grade/aspect per pixel, class coefficients, the grade/class mask.
GridCostField grid_cost_field(const TerrainTile& tile, double s_max);

/// 8-connected A* over pixels with the same transfer cost (destination-pixel terms).
PlanResult plan_grid(const GridCostField& field, const PlanQuery& query,
                     SearchAlgorithm algorithm = SearchAlgorithm::astar);
PlanResult plan_grid(const TerrainTile& tile, const PlanQuery& query);

}  // namespace clear
