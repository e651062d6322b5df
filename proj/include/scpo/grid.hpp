#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "scpo/geometry.hpp"

namespace scpo {

using PointId = std::size_t;

enum class Connectivity { Four, Eight };
enum class MarkingMode { Subdivision, Exact };

std::string_view to_string(Connectivity c);
std::string_view to_string(MarkingMode m);

struct GridConfig {
  Rect area;
  int m = 0;       // total cell count, a perfect square >= 4
  double h = 0.0;  // density fraction in (0, 1]
  Connectivity connectivity = Connectivity::Four;
  MarkingMode marking = MarkingMode::Exact;

  // Throws Error(InvalidConfig).
  void validate() const;
  // w = sqrt(m).
  int side() const;
};

struct CellIndex {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

struct Cell {
  CellIndex index;
  Rect extent;
  std::size_t n = 0;
  std::optional<Point> mean;
  std::vector<PointId> point_ids;  // ascending
  bool dense = false;
  bool obstructed = false;
};

// d = round-half-up(N / m * h).
std::size_t density_threshold(std::size_t n_points, int m, double h);

// The w x w cell partition of the area with per-cell statistics. Points keep
// stable ids; deleted ids are never reused.
class Grid {
 public:
  explicit Grid(GridConfig config);

  const GridConfig& config() const { return config_; }
  int side() const { return side_; }
  std::size_t cell_count() const { return cells_.size(); }
  std::size_t point_count() const { return live_count_; }
  std::size_t density_threshold() const { return d_; }
  double min_cell_dimension() const { return e_; }

  std::span<const Cell> cells() const { return cells_; }
  const Cell& cell(CellIndex idx) const { return cells_[offset(idx)]; }
  const Cell& cell(int row, int col) const { return cell({row, col}); }

  // Obstruction labels are set by the marking passes and never cleared.
  void set_obstructed(CellIndex idx) { cells_[offset(idx)].obstructed = true; }

  // Cell owning p under the half-open rule; nullopt when p is outside the
  // closed area.
  std::optional<CellIndex> locate(Point p) const;

  // Id space includes deleted ids; use is_live().
  std::size_t id_capacity() const { return points_.size(); }
  bool is_live(PointId id) const { return id < live_.size() && live_[id]; }
  Point point(PointId id) const { return points_[id]; }

  // Ids of points that lie strictly inside an obstacle (recorded at build).
  std::span<const PointId> points_inside_obstacles() const { return inside_obstacle_; }

  std::size_t dense_count() const;
  std::size_t obstructed_count() const;

 private:
  friend Grid accumulate_points(const std::function<std::optional<Point>()>&,
                                const ObstacleSet&, const GridConfig&);
  friend std::vector<PointId> incremental_update(Grid&, std::span<const Point>,
                                                 std::span<const PointId>);
  friend void label_density(Grid&);

  std::size_t offset(CellIndex idx) const {
    return static_cast<std::size_t>(idx.row) * static_cast<std::size_t>(side_) +
           static_cast<std::size_t>(idx.col);
  }
  int locate_axis(double v, const std::vector<double>& edges) const;
  void insert_point(PointId id, Point p, CellIndex idx);
  void erase_point(PointId id);

  GridConfig config_;
  int side_;
  double e_;
  std::vector<double> x_edges_;
  std::vector<double> y_edges_;
  std::vector<Cell> cells_;
  std::vector<Point> points_;
  std::vector<bool> live_;
  std::size_t live_count_ = 0;
  std::size_t d_ = 0;
  std::vector<PointId> inside_obstacle_;
};

// Pull-style point source: returns the next point, or nullopt at the end.
using PointSource = std::function<std::optional<Point>()>;

// Single pass over the data: assigns points to cells and accumulates n and
// mean. Labels are left unset. Throws PointOutsideArea listing every offender.
Grid accumulate_points(const PointSource& source, const ObstacleSet& obs,
                       const GridConfig& cfg);

// accumulate_points + label_density + the configured obstruction marking.
Grid build_grid(std::span<const Point> points, const ObstacleSet& obs, const GridConfig& cfg);

void label_density(Grid& g);
void mark_obstructed_by_subdivision(Grid& g, const ObstacleSet& obs);
void mark_obstructed_exact(Grid& g, const ObstacleSet& obs);
void mark_obstructed(Grid& g, const ObstacleSet& obs);

// Applies deletes, then inserts, and refreshes density labels. Returns the
// ids assigned to the inserted points. Validates everything before mutating.
std::vector<PointId> incremental_update(Grid& g, std::span<const Point> inserts,
                                        std::span<const PointId> deletes);

}  // namespace scpo
