#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "scpo/grid.hpp"
#include "scpo/visibility.hpp"

namespace scpo {

enum class CenterKind { GlobalMean, MinCostCellMean };

std::string_view to_string(CenterKind k);

// A maximal connected set of dense, non-obstructed cells.
struct Region {
  std::size_t id = 0;
  std::vector<CellIndex> cells;         // BFS discovery order
  std::vector<PointId> member_point_ids;  // ascending
  Point center;
  CenterKind center_kind = CenterKind::GlobalMean;
};

// Row-major seeding, FIFO growth over the configured neighbourhood.
std::vector<Region> find_regions(const Grid& g);

// Sum over cells j of r with n_j > 0 of n_j * d'(mean_c, mean_j)^2.
double region_cost(const Cell& c, const Region& r, const Grid& g, const VisibilityGraph& vg);

// region_cost for every cell of r, aligned with r.cells (0 for empty cells).
// One shared graph augmentation serves all pairs.
std::vector<double> region_costs(const Region& r, const Grid& g, const VisibilityGraph& vg);

// Mean of all member points when it is not inside any obstacle; otherwise
// the mean of the cheapest cell (ties to the smallest (row, col)).
std::pair<Point, CenterKind> find_center(const Region& r, const Grid& g,
                                         const VisibilityGraph& vg);

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct Diagnostics {
  std::size_t dense_cells = 0;
  std::size_t obstructed_cells = 0;
  std::vector<std::string> warnings;
  std::vector<StageTiming> timings;
};

struct ClusteringResult {
  std::vector<Region> regions;
  std::vector<PointId> outlier_point_ids;  // ascending
  Diagnostics diagnostics;
};

struct ScpoRun {
  Grid grid;
  ClusteringResult result;
};

// The full pipeline: grid pass, density labels, obstruction marking, region
// growth, centers. Identical inputs give identical outputs (timings aside).
ScpoRun run_scpo(std::span<const Point> points, const ObstacleSet& obs, const GridConfig& cfg);

// Fills centers on every region; the visibility graph is built once.
void assign_centers(std::vector<Region>& regions, const Grid& g, const VisibilityGraph& vg);

std::vector<PointId> collect_outliers(const Grid& g, const std::vector<Region>& regions);

}  // namespace scpo
