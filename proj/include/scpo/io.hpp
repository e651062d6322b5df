#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scpo/clustering.hpp"

namespace scpo {

// One `x,y` pair per line; blank and `#` lines skipped. Point ids are the
// ordinal of the data line. Throws ParseError (with the line number) or
// EmptyDataset.
std::vector<Point> parse_points(std::string_view text);
std::vector<Point> ingest_points(const std::filesystem::path& path);

// JSON array of polygons, each an array of [x, y] pairs. Throws ParseError or
// InvalidPolygon naming the polygon index.
ObstacleSet parse_obstacles(std::string_view json_text);
ObstacleSet ingest_obstacles(const std::filesystem::path& path);

std::string points_to_text(std::span<const Point> points, std::string_view header = {});
std::string obstacles_to_json(const ObstacleSet& obs);

// "0.5" or "50%". Throws InvalidConfig outside (0, 1].
double parse_density(std::string_view text);

// "x0,y0,x1,y1"; nullopt for "auto".
std::optional<Rect> parse_area(std::string_view text);

// Bounding box padded by 1% of the larger extent on every side. Requires at
// least two distinct points.
Rect auto_area(std::span<const Point> points);

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary and renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct RunConfig {
  std::string points_path;
  std::optional<std::string> obstacles_path;
  std::optional<Rect> area;  // nullopt: auto
  int m = 0;
  double h = 0.0;
  Connectivity connectivity = Connectivity::Four;
  MarkingMode marking = MarkingMode::Exact;
  std::string out_path;
  std::optional<std::string> svg_path;
  std::string log_level = "info";
  bool include_timings = false;
};

struct GridSummary {
  int w = 0;
  std::size_t d = 0;
  double e = 0.0;
  std::size_t n_points = 0;
  std::size_t dense_cells = 0;
  std::size_t obstructed_cells = 0;
};

struct RegionRecord {
  std::size_t id = 0;
  std::vector<CellIndex> cells;
  std::vector<PointId> point_ids;
  double center_x = 0.0;
  double center_y = 0.0;
  std::string center_kind;
};

struct ConfigEcho {
  std::string points;
  std::optional<std::string> obstacles;
  std::string area_mode;  // "auto" or "explicit"
  std::vector<double> area;  // resolved x0, y0, x1, y1
  int m = 0;
  double h = 0.0;
  int connectivity = 4;
  std::string marking;
  std::string out;
  std::optional<std::string> svg;
  std::string log_level;
};

inline constexpr int kSchemaVersion = 1;

struct OutputDocument {
  int schema_version = kSchemaVersion;
  ConfigEcho config;
  GridSummary grid;
  std::vector<RegionRecord> regions;
  std::vector<PointId> outliers;
  std::vector<std::string> warnings;
  std::optional<std::vector<StageTiming>> timings;
};

OutputDocument make_document(const RunConfig& cfg, const Rect& resolved_area, const ScpoRun& run);

std::string serialize_document(const OutputDocument& doc);
OutputDocument parse_document(std::string_view json_text);

}  // namespace scpo
