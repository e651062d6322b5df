#include "scpo/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

namespace scpo {

using json = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

std::vector<Point> parse_points(std::string_view text) {
  std::vector<Point> points;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    std::optional<double> x, y;
    if (comma != std::string_view::npos && line.find(',', comma + 1) == std::string_view::npos) {
      x = to_double(line.substr(0, comma));
      y = to_double(line.substr(comma + 1));
    }
    if (!x || !y) {
      throw Error(ErrorKind::ParseError,
                  fmt::format("line {}: expected 'x,y' with finite numbers, got '{}'", line_no,
                              std::string(line)));
    }
    points.emplace_back(*x, *y);
  }
  if (points.empty()) throw Error(ErrorKind::EmptyDataset, "no data points found");
  return points;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Point> ingest_points(const std::filesystem::path& path) {
  return parse_points(read_file(path));
}

ObstacleSet parse_obstacles(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("obstacles: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorKind::ParseError, "obstacles: top level must be an array");

  std::vector<Polygon> polygons;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& ring = doc[i];
    if (!ring.is_array()) {
      throw Error(ErrorKind::ParseError, fmt::format("obstacles[{}]: expected an array", i));
    }
    std::vector<Point> vertices;
    for (const json& v : ring) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw Error(ErrorKind::ParseError,
                    fmt::format("obstacles[{}]: vertices must be [x, y] number pairs", i));
      }
      const double x = v[0].get<double>(), y = v[1].get<double>();
      if (!std::isfinite(x) || !std::isfinite(y)) {
        throw Error(ErrorKind::ParseError, fmt::format("obstacles[{}]: non-finite vertex", i));
      }
      vertices.emplace_back(x, y);
    }
    if (const auto defect = check_polygon(vertices)) {
      throw Error(ErrorKind::InvalidPolygon,
                  fmt::format("obstacles[{}]: {}", i, to_string(*defect)));
    }
    polygons.emplace_back(std::move(vertices));
  }
  return ObstacleSet(std::move(polygons));
}

ObstacleSet ingest_obstacles(const std::filesystem::path& path) {
  return parse_obstacles(read_file(path));
}

std::string points_to_text(std::span<const Point> points, std::string_view header) {
  std::string out;
  if (!header.empty()) out += fmt::format("# {}\n", header);
  for (const Point& p : points) out += fmt::format("{},{}\n", p.x, p.y);
  return out;
}

std::string obstacles_to_json(const ObstacleSet& obs) {
  json doc = json::array();
  for (const Polygon& poly : obs.obstacles()) {
    json ring = json::array();
    for (Point v : poly.vertices()) ring.push_back({v.x, v.y});
    doc.push_back(std::move(ring));
  }
  return doc.dump() + "\n";
}

double parse_density(std::string_view text) {
  std::string_view s = trim(text);
  bool percent = false;
  if (!s.empty() && s.back() == '%') {
    percent = true;
    s.remove_suffix(1);
  }
  std::optional<double> v = to_double(s);
  if (v && percent) *v /= 100.0;
  if (!v || !(*v > 0.0 && *v <= 1.0)) {
    throw Error(ErrorKind::InvalidConfig,
                fmt::format("h must be a fraction in (0, 1] or a percentage, got '{}'",
                            std::string(text)));
  }
  return *v;
}

std::optional<Rect> parse_area(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "auto") return std::nullopt;
  std::vector<double> v;
  std::string_view rest = s;
  while (true) {
    const auto comma = rest.find(',');
    const auto d = to_double(rest.substr(0, comma));
    if (!d) break;
    v.push_back(*d);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (v.size() != 4 || !(v[0] < v[2]) || !(v[1] < v[3])) {
    throw Error(ErrorKind::InvalidConfig,
                fmt::format("area must be 'auto' or 'x0,y0,x1,y1' with x0<x1, y0<y1, got '{}'",
                            std::string(text)));
  }
  return Rect(v[0], v[1], v[2], v[3]);
}

Rect auto_area(std::span<const Point> points) {
  if (points.empty()) throw Error(ErrorKind::EmptyDataset, "no data points found");
  double x0 = points[0].x, x1 = x0, y0 = points[0].y, y1 = y0;
  for (const Point& p : points) {
    x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  }
  if (x0 == x1 && y0 == y1) {
    throw Error(ErrorKind::InvalidConfig, "automatic area needs at least two distinct points");
  }
  const double pad = 0.01 * std::max(x1 - x0, y1 - y0);
  const double px = x1 > x0 ? 0.01 * (x1 - x0) : pad;
  const double py = y1 > y0 ? 0.01 * (y1 - y0) : pad;
  return Rect(x0 - px, y0 - py, x1 + px, y1 + py);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::IoError, "cannot move output into place at " + path.string());
  }
}

OutputDocument make_document(const RunConfig& cfg, const Rect& resolved_area, const ScpoRun& run) {
  OutputDocument doc;
  doc.config.points = cfg.points_path;
  doc.config.obstacles = cfg.obstacles_path;
  doc.config.area_mode = cfg.area ? "explicit" : "auto";
  doc.config.area = {resolved_area.x_lo(), resolved_area.y_lo(), resolved_area.x_hi(),
                     resolved_area.y_hi()};
  doc.config.m = cfg.m;
  doc.config.h = cfg.h;
  doc.config.connectivity = cfg.connectivity == Connectivity::Four ? 4 : 8;
  doc.config.marking = std::string(to_string(cfg.marking));
  doc.config.out = cfg.out_path;
  doc.config.svg = cfg.svg_path;
  doc.config.log_level = cfg.log_level;

  const Grid& g = run.grid;
  doc.grid = {g.side(),          g.density_threshold(), g.min_cell_dimension(),
              g.point_count(),   g.dense_count(),       g.obstructed_count()};

  for (const Region& r : run.result.regions) {
    doc.regions.push_back({r.id, r.cells, r.member_point_ids, r.center.x, r.center.y,
                           std::string(to_string(r.center_kind))});
  }
  doc.outliers = run.result.outlier_point_ids;
  doc.warnings = run.result.diagnostics.warnings;
  if (cfg.include_timings) doc.timings = run.result.diagnostics.timings;
  return doc;
}

namespace {

json optional_string(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

std::optional<std::string> read_optional_string(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>();
}

}  // namespace

std::string serialize_document(const OutputDocument& doc) {
  json j;
  j["schema_version"] = doc.schema_version;

  const ConfigEcho& c = doc.config;
  j["config"] = {{"points", c.points},
                 {"obstacles", optional_string(c.obstacles)},
                 {"area_mode", c.area_mode},
                 {"area", c.area},
                 {"m", c.m},
                 {"h", c.h},
                 {"connectivity", c.connectivity},
                 {"marking", c.marking},
                 {"out", c.out},
                 {"svg", optional_string(c.svg)},
                 {"log_level", c.log_level}};

  j["grid"] = {{"w", doc.grid.w},
               {"d", doc.grid.d},
               {"e", doc.grid.e},
               {"n_points", doc.grid.n_points},
               {"dense_cells", doc.grid.dense_cells},
               {"obstructed_cells", doc.grid.obstructed_cells}};

  json regions = json::array();
  for (const RegionRecord& r : doc.regions) {
    json cells = json::array();
    for (CellIndex idx : r.cells) cells.push_back({idx.row, idx.col});
    regions.push_back({{"id", r.id},
                       {"cells", std::move(cells)},
                       {"point_ids", r.point_ids},
                       {"center", {{"x", r.center_x}, {"y", r.center_y}}},
                       {"center_kind", r.center_kind}});
  }
  j["regions"] = std::move(regions);
  j["outliers"] = doc.outliers;
  j["diagnostics"] = {{"warnings", doc.warnings}};
  if (doc.timings) {
    json timings = json::array();
    for (const StageTiming& t : *doc.timings) {
      timings.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
    }
    j["diagnostics"]["timings"] = std::move(timings);
  }
  return j.dump(2) + "\n";
}

OutputDocument parse_document(std::string_view json_text) {
  try {
    const json j = json::parse(json_text);
    OutputDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    if (doc.schema_version != kSchemaVersion) {
      throw Error(ErrorKind::ParseError,
                  fmt::format("unsupported schema_version {}", doc.schema_version));
    }

    const json& c = j.at("config");
    doc.config.points = c.at("points").get<std::string>();
    doc.config.obstacles = read_optional_string(c.at("obstacles"));
    doc.config.area_mode = c.at("area_mode").get<std::string>();
    doc.config.area = c.at("area").get<std::vector<double>>();
    doc.config.m = c.at("m").get<int>();
    doc.config.h = c.at("h").get<double>();
    doc.config.connectivity = c.at("connectivity").get<int>();
    doc.config.marking = c.at("marking").get<std::string>();
    doc.config.out = c.at("out").get<std::string>();
    doc.config.svg = read_optional_string(c.at("svg"));
    doc.config.log_level = c.at("log_level").get<std::string>();

    const json& g = j.at("grid");
    doc.grid.w = g.at("w").get<int>();
    doc.grid.d = g.at("d").get<std::size_t>();
    doc.grid.e = g.at("e").get<double>();
    doc.grid.n_points = g.at("n_points").get<std::size_t>();
    doc.grid.dense_cells = g.at("dense_cells").get<std::size_t>();
    doc.grid.obstructed_cells = g.at("obstructed_cells").get<std::size_t>();

    for (const json& r : j.at("regions")) {
      RegionRecord rec;
      rec.id = r.at("id").get<std::size_t>();
      for (const json& cell : r.at("cells")) {
        rec.cells.push_back({cell.at(0).get<int>(), cell.at(1).get<int>()});
      }
      rec.point_ids = r.at("point_ids").get<std::vector<PointId>>();
      rec.center_x = r.at("center").at("x").get<double>();
      rec.center_y = r.at("center").at("y").get<double>();
      rec.center_kind = r.at("center_kind").get<std::string>();
      doc.regions.push_back(std::move(rec));
    }
    doc.outliers = j.at("outliers").get<std::vector<PointId>>();
    const json& diag = j.at("diagnostics");
    doc.warnings = diag.at("warnings").get<std::vector<std::string>>();
    if (diag.contains("timings")) {
      std::vector<StageTiming> timings;
      for (const json& t : diag.at("timings")) {
        timings.push_back({t.at("stage").get<std::string>(), t.at("seconds").get<double>()});
      }
      doc.timings = std::move(timings);
    }
    return doc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("output document: ") + e.what());
  }
}

}  // namespace scpo
