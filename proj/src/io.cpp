#include "clear/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "clear/error.hpp"

namespace clear {

namespace {

Json point_json(Vec2 p) { return Json::array({p.x, p.y}); }

Vec2 point_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

Json ring_json(std::span<const Vec2> ring) {
  Json arr = Json::array();
  for (const Vec2& p : ring) arr.push_back(point_json(p));
  return arr;
}

Ring ring_from(const Json& j) {
  Ring ring;
  for (const auto& p : j) ring.push_back(point_from(p));
  return ring;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json cells_to_json(std::span<const ConvexCell> cells, double cell_size) {
  Json arr = Json::array();
  for (const auto& cell : cells) {
    arr.push_back({{"id", cell.id},
                   {"seed", {{"row", cell.seed.row}, {"col", cell.seed.col}}},
                   {"vertices", ring_json(cell.vertices)}});
  }
  return {{"cell_size", cell_size}, {"cells", arr}};
}

std::vector<ConvexCell> cells_from_json(const Json& doc) {
  std::vector<ConvexCell> cells;
  try {
    for (const auto& c : doc.at("cells")) {
      ConvexCell cell;
      cell.id = c.at("id").get<int>();
      cell.seed = {c.at("seed").at("row").get<int>(), c.at("seed").at("col").get<int>()};
      cell.vertices = ring_from(c.at("vertices"));
      cells.push_back(std::move(cell));
    }
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed cells document: ") + e.what());
  }
  return cells;
}

Json regions_to_json(const RegionSet& set) {
  Json arr = Json::array();
  for (const Region& r : set.regions) {
    arr.push_back({{"id", r.id},
                   {"cell_id", r.cell_id},
                   {"plane", {{"a", r.plane.a}, {"b", r.plane.b}, {"c", r.plane.c}}},
                   {"fit_rmse", r.fit_rmse},
                   {"landcover", r.landcover},
                   {"grade_pct", r.grade_pct},
                   {"aspect_deg", r.aspect_deg},
                   {"flat", r.flat},
                   {"elev_min", r.elev_min},
                   {"elev_mean", r.elev_mean},
                   {"elev_max", r.elev_max},
                   {"pixel_count", r.pixel_count},
                   {"traversable", r.traversable},
                   {"depth", r.depth},
                   {"split_failed", r.split_failed},
                   {"centroid", point_json(r.centroid)},
                   {"polygon", ring_json(r.polygon)}});
  }
  return {{"width", set.width},
          {"height", set.height},
          {"cell_size", set.cell_size},
          {"method", set.method},
          {"regions", arr}};
}

RegionSet regions_from_json(const Json& doc) {
  RegionSet set;
  try {
    set.width = doc.at("width").get<int>();
    set.height = doc.at("height").get<int>();
    set.cell_size = doc.at("cell_size").get<double>();
    set.method = doc.value("method", std::string{});
    for (const auto& j : doc.at("regions")) {
      Region r;
      r.id = j.at("id").get<int>();
      r.cell_id = j.value("cell_id", -1);
      const auto& pl = j.at("plane");
      r.plane = {pl.at("a").get<double>(), pl.at("b").get<double>(), pl.at("c").get<double>()};
      r.fit_rmse = j.value("fit_rmse", 0.0);
      r.landcover = j.at("landcover").get<int>();
      r.grade_pct = j.at("grade_pct").get<double>();
      r.aspect_deg = j.at("aspect_deg").get<double>();
      r.flat = j.value("flat", false);
      r.elev_min = j.value("elev_min", 0.0);
      r.elev_mean = j.value("elev_mean", 0.0);
      r.elev_max = j.value("elev_max", 0.0);
      r.pixel_count = j.value("pixel_count", 0);
      r.traversable = j.value("traversable", true);
      r.depth = j.value("depth", 0);
      r.split_failed = j.value("split_failed", false);
      r.centroid = point_from(j.at("centroid"));
      r.polygon = ring_from(j.at("polygon"));
      set.regions.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed regions document: ") + e.what());
  }
  return set;
}

std::string graph_to_csv(const RegionGraph& graph) {
  std::string out = "from_id,to_id,cost,boundary_length\n";
  for (const GraphEdge& e : graph.edges) {
    out += std::to_string(graph.region_ids[static_cast<std::size_t>(e.from)]) + ',' +
           std::to_string(graph.region_ids[static_cast<std::size_t>(e.to)]) + ',' +
           format_double(e.cost) + ',' + format_double(e.boundary_length) + '\n';
  }
  return out;
}

Json graph_to_json(const RegionGraph& graph, std::span<const Region> regions) {
  Json vertices = Json::array();
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const CostNode& n = graph.nodes[v];
    Json vj = {{"id", graph.region_ids[v]},
               {"centroid", point_json(n.position)},
               {"grade", n.grade},
               {"aspect_deg", n.aspect_deg},
               {"flat", n.flat},
               {"friction", n.friction},
               {"roughness", n.roughness},
               {"traversable", static_cast<bool>(graph.traversable[v])}};
    if (v < regions.size()) vj["landcover"] = regions[v].landcover;
    vertices.push_back(std::move(vj));
  }
  Json edges = Json::array();
  for (const GraphEdge& e : graph.edges) {
    edges.push_back({{"from", graph.region_ids[static_cast<std::size_t>(e.from)]},
                     {"to", graph.region_ids[static_cast<std::size_t>(e.to)]},
                     {"cost", e.cost},
                     {"distance", e.distance},
                     {"heading", e.heading},
                     {"boundary_length", e.boundary_length},
                     {"crossing", point_json(e.crossing)}});
  }
  const CostWeights& w = graph.weights;
  return {{"weights",
           {{"w_f", w.w_f},
            {"w_s", w.w_s},
            {"w_r", w.w_r},
            {"w_theta", w.w_theta},
            {"s_max", w.s_max},
            {"heading_mode", w.heading_mode == HeadingMode::literal ? "literal" : "perpendicular"},
            {"friction_mode",
             w.friction_mode == FrictionMode::destination ? "destination" : "average"}}},
          {"cell_size", graph.cell_size},
          {"vertices", vertices},
          {"edges", edges}};
}

std::string plan_to_csv(const PlanResult& plan) {
  std::string out = "x,y\n";
  for (const Vec2& p : plan.path) out += format_double(p.x) + ',' + format_double(p.y) + '\n';
  return out;
}

Json plan_to_json(const PlanResult& plan) {
  Json j = {{"reachable", plan.reachable},
            {"total_cost", plan.total_cost},
            {"length_m", plan.length_m},
            {"expanded_nodes", plan.expanded_nodes},
            {"plan_time_s", plan.plan_time_s},
            {"visited", plan.visited_region_ids},
            {"path", ring_json(plan.path)}};
  if (!plan.reason.empty()) j["reason"] = plan.reason;
  return j;
}

Json report_to_json(const EvalReport& report) {
  Json per_class = Json::object();
  for (const auto& [cls, iou] : report.per_class_iou) per_class[std::to_string(cls)] = iou;
  return {{"rmse_m", report.rmse_m},
          {"miou", report.miou},
          {"per_class_iou", per_class},
          {"jsd_retention", report.jsd_retention},
          {"complexity_psi", report.complexity_psi},
          {"region_count", report.region_count},
          {"abstraction_time_s", report.abstraction_time_s}};
}

std::string report_csv_header() {
  return "region_count,rmse_m,miou,jsd_retention,complexity_psi,abstraction_time_s";
}

std::string report_to_csv_row(const EvalReport& report) {
  return std::to_string(report.region_count) + ',' + format_double(report.rmse_m) + ',' +
         format_double(report.miou) + ',' + format_double(report.jsd_retention) + ',' +
         format_double(report.complexity_psi) + ',' + format_double(report.abstraction_time_s);
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

}  // namespace clear
