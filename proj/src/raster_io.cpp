#include "clear/raster_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "clear/error.hpp"
#include "clear/io.hpp"

namespace clear {

namespace fs = std::filesystem;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

double parse_number(const std::string& token, const fs::path& path) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw DataError(path.string() + ": cannot parse number '" + token + "'");
  return v;
}

template <typename T>
void write_grid(const fs::path& path, const Grid<T>& values, double cell_size,
                std::optional<double> nodata) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "ncols " << values.width() << "\n"
      << "nrows " << values.height() << "\n"
      << "xllcorner 0\n"
      << "yllcorner 0\n"
      << "cellsize " << format_double(cell_size) << "\n";
  if (nodata) out << "NODATA_value " << format_double(*nodata) << "\n";
  std::string line;
  for (int r = 0; r < values.height(); ++r) {
    line.clear();
    for (int c = 0; c < values.width(); ++c) {
      if (c) line += ' ';
      if constexpr (std::is_same_v<T, double>) {
        line += format_double(values(r, c));
      } else {
        line += std::to_string(values(r, c));
      }
    }
    line += '\n';
    out << line;
  }
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace

AsciiGrid read_ascii_grid(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());

  int ncols = -1, nrows = -1;
  AsciiGrid grid;
  bool have_cell = false;
  std::string token;
  // Header: keyword/value pairs until the first numeric token.
  while (in >> token) {
    const std::string key = lower(token);
    if (!key.empty() && (std::isdigit(static_cast<unsigned char>(key[0])) || key[0] == '-' ||
                         key[0] == '+' || key[0] == '.'))
      break;
    std::string value;
    if (!(in >> value)) throw DataError(path.string() + ": truncated header at '" + token + "'");
    const double v = parse_number(value, path);
    if (key == "ncols") {
      ncols = static_cast<int>(v);
    } else if (key == "nrows") {
      nrows = static_cast<int>(v);
    } else if (key == "xllcorner" || key == "xllcenter") {
      grid.xll = v;
    } else if (key == "yllcorner" || key == "yllcenter") {
      grid.yll = v;
    } else if (key == "cellsize") {
      grid.cell_size = v;
      have_cell = true;
    } else if (key == "nodata_value") {
      grid.nodata = v;
    } else {
      throw DataError(path.string() + ": unknown header keyword '" + token + "'");
    }
    token.clear();
  }
  if (ncols <= 0 || nrows <= 0)
    throw DataError(path.string() + ": header must give positive ncols and nrows");
  if (!have_cell || !(grid.cell_size > 0.0))
    throw DataError(path.string() + ": header must give a positive cellsize");

  grid.values = Grid<double>(ncols, nrows);
  std::size_t count = 0;
  const std::size_t expected = static_cast<std::size_t>(ncols) * nrows;
  if (!token.empty()) grid.values[count++] = parse_number(token, path);
  while (in >> token) {
    if (count >= expected)
      throw DataError(path.string() + ": more values than ncols*nrows = " +
                      std::to_string(expected));
    grid.values[count++] = parse_number(token, path);
  }
  if (count != expected)
    throw DataError(path.string() + ": expected " + std::to_string(expected) + " values, found " +
                    std::to_string(count));
  return grid;
}

void write_ascii_grid(const fs::path& path, const Grid<double>& values, double cell_size,
                      std::optional<double> nodata) {
  write_grid(path, values, cell_size, nodata);
}

void write_ascii_grid(const fs::path& path, const Grid<int>& values, double cell_size,
                      std::optional<double> nodata) {
  write_grid(path, values, cell_size, nodata);
}

ClassTable load_class_table(const fs::path& path) {
  Json doc = read_json(path);
  const Json& list = doc.is_array() ? doc : doc.at("classes");
  std::vector<LandcoverClass> classes;
  try {
    for (const auto& item : list) {
      LandcoverClass c;
      c.id = item.at("id").get<int>();
      c.name = item.value("name", std::string("class_") + std::to_string(c.id));
      c.friction = item.value("friction", 0.0);
      c.roughness = item.value("roughness", 0.0);
      c.traversable = item.value("traversable", true);
      classes.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": malformed class table: " + e.what());
  }
  return ClassTable(std::move(classes));
}

void save_class_table(const fs::path& path, const ClassTable& table) {
  Json list = Json::array();
  for (const auto& c : table.classes()) {
    list.push_back({{"id", c.id},
                    {"name", c.name},
                    {"friction", c.friction},
                    {"roughness", c.roughness},
                    {"traversable", c.traversable}});
  }
  write_json(path, Json{{"classes", list}});
}

TerrainTile load_tile(const fs::path& elevation_path, const fs::path& landcover_path,
                      const fs::path& class_table_path) {
  AsciiGrid elev = read_ascii_grid(elevation_path);
  AsciiGrid land = read_ascii_grid(landcover_path);
  ClassTable classes = load_class_table(class_table_path);

  if (!elev.values.same_shape(land.values)) {
    std::ostringstream msg;
    msg << "dimension mismatch: elevation " << elevation_path.string() << " is "
        << elev.values.height() << "x" << elev.values.width() << " (rows x cols), landcover "
        << landcover_path.string() << " is " << land.values.height() << "x"
        << land.values.width();
    throw DataError(msg.str());
  }
  if (elev.cell_size != land.cell_size)
    throw DataError("cell size mismatch: elevation " + format_double(elev.cell_size) +
                    ", landcover " + format_double(land.cell_size));

  const int w = elev.values.width();
  const int h = elev.values.height();
  Grid<int> labels(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const double e = elev.values(r, c);
      if (elev.nodata && e == *elev.nodata) {
        std::ostringstream msg;
        msg << "NODATA elevation at pixel (row " << r << ", col " << c << ")";
        throw DataError(msg.str());
      }
      const double v = land.values(r, c);
      if (land.nodata && v == *land.nodata) {
        std::ostringstream msg;
        msg << "NODATA landcover at pixel (row " << r << ", col " << c << ")";
        throw DataError(msg.str());
      }
      if (v != std::floor(v) || v < 0 || v > 1e9) {
        std::ostringstream msg;
        msg << "landcover value " << v << " at pixel (row " << r << ", col " << c
            << ") is not a class id";
        throw DataError(msg.str());
      }
      labels(r, c) = static_cast<int>(v);
    }
  }
  return make_tile(std::move(elev.values), std::move(labels), std::move(classes), elev.cell_size);
}

void save_tile(const fs::path& dir, const TerrainTile& tile) {
  fs::create_directories(dir);
  write_ascii_grid(dir / "elevation.asc", tile.elevation, tile.cell_size);
  write_ascii_grid(dir / "landcover.asc", tile.landcover, tile.cell_size);
  save_class_table(dir / "classes.json", tile.classes);
}

}  // namespace clear
