#pragma once

#include <span>
#include <vector>

#include "clear/geometry.hpp"
#include "clear/planefit.hpp"
#include "clear/raster.hpp"

namespace clear {

enum class HeadingMode {
  literal,        // penalty grows with the heading/aspect difference
  perpendicular,  // penalty |90 - delta| * 2, cheapest across the slope
};

enum class FrictionMode { destination, average };

struct CostWeights {
  double w_f = 1.0;
  double w_s = 1.0;
  double w_r = 1.0;
  double w_theta = 0.1;
  double s_max = 0.35;  // grade fraction
  HeadingMode heading_mode = HeadingMode::literal;
  FrictionMode friction_mode = FrictionMode::destination;

  friend bool operator==(const CostWeights&, const CostWeights&) = default;
};

/// Wrap-around absolute difference of two bearings, in [0, 180].
double heading_delta(double theta_head, double theta_slope);

/// Compass bearing (0 = north = -y, clockwise) of the vector from `from` to `to`.
double compass_bearing(Vec2 from, Vec2 to);

// Terrain attributes the cost model reads from either end of an edge.
struct CostNode {
  Vec2 position;
  double grade = 0.0;  // fraction
  double aspect_deg = 0.0;
  bool flat = true;
  double friction = 0.0;
  double roughness = 0.0;
};

CostNode cost_node(const Region& region, const ClassTable& classes);

/// d * (1 + w_f*mu + w_s*|s| + w_r*sigma) + w_theta * (delta/180) * d, destination terms
/// from `to`. A flat destination carries no heading penalty.
double transfer_cost(const CostNode& from, const CostNode& to, double distance, double heading,
                     const CostWeights& weights);

/// Region-level convenience: d is the centroid distance, heading the centroid bearing.
/// `crossing` does not enter the cost; it is accepted for symmetry with the graph's edges.
double edge_cost(const Region& from, const Region& to, Vec2 crossing, const CostWeights& weights,
                 const ClassTable& classes);

/// traversable = grade <= 100*s_max and the class is traversable. Idempotent.
std::vector<Region> mark_traversability(std::vector<Region> regions, const ClassTable& classes,
                                        double s_max);

struct GraphEdge {
  int from = 0;  // vertex index
  int to = 0;
  double cost = 0.0;
  double distance = 0.0;  // centroid to centroid
  double heading = 0.0;   // compass bearing from -> to
  double boundary_length = 0.0;
  Vec2 crossing;  // midpoint of the longest shared boundary segment
};

// Directed adjacency over traversable regions, edges stored grouped by source vertex.
struct RegionGraph {
  std::vector<int> region_ids;   // vertex -> region id
  std::vector<CostNode> nodes;   // vertex attributes
  std::vector<bool> traversable;
  std::vector<GraphEdge> edges;
  std::vector<int> offsets;  // edges of vertex v are [offsets[v], offsets[v+1])
  CostWeights weights;       // weights the stored costs were computed with
  double cell_size = 1.0;

  std::size_t vertex_count() const noexcept { return region_ids.size(); }
  std::span<const GraphEdge> out_edges(int v) const {
    return {edges.data() + offsets[v], static_cast<std::size_t>(offsets[v + 1] - offsets[v])};
  }
  int vertex_of(int region_id) const;  // -1 if absent
};

/// Length of the collinear overlap of two rings' boundaries and the midpoint of the longest
/// overlapping piece.
struct SharedBoundary {
  double length = 0.0;
  Vec2 midpoint;
};
SharedBoundary shared_boundary(std::span<const Vec2> a, std::span<const Vec2> b, double tol);

/// Vertices in region order; an edge pair exists for every two traversable regions sharing
/// more than 1e-6 * cell_size of boundary.
RegionGraph build_graph(std::span<const Region> regions, const ClassTable& classes,
                        const CostWeights& weights, double cell_size);

}  // namespace clear
