#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "clear/bsd.hpp"
#include "clear/graph.hpp"
#include "clear/metrics.hpp"
#include "clear/planefit.hpp"
#include "clear/planner.hpp"

namespace clear {

using Json = nlohmann::ordered_json;

Json cells_to_json(std::span<const ConvexCell> cells, double cell_size);
std::vector<ConvexCell> cells_from_json(const Json& doc);

// Regions document: {"width", "height", "cell_size", "method", "regions": [...]}.
struct RegionSet {
  int width = 0;
  int height = 0;
  double cell_size = 1.0;
  std::string method;
  std::vector<Region> regions;
};

Json regions_to_json(const RegionSet& set);
RegionSet regions_from_json(const Json& doc);

/// from_id,to_id,cost,boundary_length (region ids).
std::string graph_to_csv(const RegionGraph& graph);
Json graph_to_json(const RegionGraph& graph, std::span<const Region> regions);

/// x,y waypoint rows.
std::string plan_to_csv(const PlanResult& plan);
Json plan_to_json(const PlanResult& plan);

Json report_to_json(const EvalReport& report);
std::string report_csv_header();
std::string report_to_csv_row(const EvalReport& report);

Json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& doc);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace clear
