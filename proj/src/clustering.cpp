#include "scpo/clustering.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <string>

namespace scpo {

std::string_view to_string(CenterKind k) {
  return k == CenterKind::GlobalMean ? "global_mean" : "min_cost_cell_mean";
}

namespace {

bool eligible(const Cell& c) { return c.dense && !c.obstructed; }

}  // namespace

std::vector<Region> find_regions(const Grid& g) {
  const int w = g.side();
  const bool eight = g.config().connectivity == Connectivity::Eight;
  std::vector<char> processed(g.cell_count(), 0);
  const auto seen = [&](CellIndex i) -> char& {
    return processed[static_cast<std::size_t>(i.row) * w + i.col];
  };

  std::vector<Region> regions;
  for (const Cell& seed : g.cells()) {
    if (!eligible(seed) || seen(seed.index)) continue;

    Region region;
    region.id = regions.size();
    std::deque<CellIndex> queue{seed.index};
    seen(seed.index) = 1;
    while (!queue.empty()) {
      const CellIndex cur = queue.front();
      queue.pop_front();
      region.cells.push_back(cur);
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if ((dr == 0 && dc == 0) || (!eight && dr != 0 && dc != 0)) continue;
          const CellIndex nb{cur.row + dr, cur.col + dc};
          if (nb.row < 0 || nb.row >= w || nb.col < 0 || nb.col >= w) continue;
          if (seen(nb) || !eligible(g.cell(nb))) continue;
          seen(nb) = 1;
          queue.push_back(nb);
        }
      }
    }
    for (CellIndex idx : region.cells) {
      const auto& ids = g.cell(idx).point_ids;
      region.member_point_ids.insert(region.member_point_ids.end(), ids.begin(), ids.end());
    }
    std::sort(region.member_point_ids.begin(), region.member_point_ids.end());
    regions.push_back(std::move(region));
  }
  return regions;
}

double region_cost(const Cell& c, const Region& r, const Grid& g, const VisibilityGraph& vg) {
  if (!c.mean) return 0.0;
  double cost = 0.0;
  for (CellIndex idx : r.cells) {
    const Cell& other = g.cell(idx);
    if (other.n == 0 || other.index == c.index) continue;
    const double d = obstructed_distance(*c.mean, *other.mean, vg).length;
    cost += static_cast<double>(other.n) * d * d;
  }
  return cost;
}

std::vector<double> region_costs(const Region& r, const Grid& g, const VisibilityGraph& vg) {
  std::vector<std::size_t> occupied;
  std::vector<Point> means;
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    const Cell& c = g.cell(r.cells[i]);
    if (c.n == 0) continue;
    occupied.push_back(i);
    means.push_back(*c.mean);
  }
  const std::size_t k = means.size();
  const std::vector<double> dist = obstructed_distance_matrix(means, vg);

  std::vector<double> costs(r.cells.size(), 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    double cost = 0.0;
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      const double d = dist[a * k + b];
      cost += static_cast<double>(g.cell(r.cells[occupied[b]]).n) * d * d;
    }
    costs[occupied[a]] = cost;
  }
  return costs;
}

std::pair<Point, CenterKind> find_center(const Region& r, const Grid& g,
                                         const VisibilityGraph& vg) {
  if (r.member_point_ids.empty()) {
    throw Error(ErrorKind::EmptyRegion, "region " + std::to_string(r.id) + " has no points");
  }
  double sx = 0.0, sy = 0.0;
  for (PointId id : r.member_point_ids) {
    sx += g.point(id).x;
    sy += g.point(id).y;
  }
  const double n = static_cast<double>(r.member_point_ids.size());
  const Point mp{sx / n, sy / n};
  if (!inside_any_obstacle(mp, vg.obstacles())) return {mp, CenterKind::GlobalMean};

  const std::vector<double> costs = region_costs(r, g, vg);
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    if (g.cell(r.cells[i]).n == 0) continue;
    if (!best || costs[i] < costs[*best] ||
        (costs[i] == costs[*best] && r.cells[i] < r.cells[*best])) {
      best = i;
    }
  }
  return {*g.cell(r.cells[*best]).mean, CenterKind::MinCostCellMean};
}

void assign_centers(std::vector<Region>& regions, const Grid& g, const VisibilityGraph& vg) {
  for (Region& r : regions) std::tie(r.center, r.center_kind) = find_center(r, g, vg);
}

std::vector<PointId> collect_outliers(const Grid& g, const std::vector<Region>& regions) {
  std::vector<char> clustered(g.id_capacity(), 0);
  for (const Region& r : regions) {
    for (PointId id : r.member_point_ids) clustered[id] = 1;
  }
  std::vector<PointId> outliers;
  for (PointId id = 0; id < g.id_capacity(); ++id) {
    if (g.is_live(id) && !clustered[id]) outliers.push_back(id);
  }
  return outliers;
}

namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& sink) : sink_(sink) {}

  template <typename Fn>
  decltype(auto) time(std::string stage, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    struct Record {
      StageClock& self;
      std::string stage;
      std::chrono::steady_clock::time_point start;
      ~Record() {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        self.sink_.push_back({std::move(stage), dt.count()});
      }
    } record{*this, std::move(stage), start};
    return fn();
  }

 private:
  std::vector<StageTiming>& sink_;
};

}  // namespace

ScpoRun run_scpo(std::span<const Point> points, const ObstacleSet& obs, const GridConfig& cfg) {
  cfg.validate();
  Diagnostics diag;
  StageClock clock(diag.timings);

  std::size_t next = 0;
  Grid grid = clock.time("grid_pass", [&] {
    return accumulate_points(
        [&]() -> std::optional<Point> {
          if (next == points.size()) return std::nullopt;
          return points[next++];
        },
        obs, cfg);
  });
  clock.time("density", [&] { label_density(grid); });
  clock.time("marking", [&] { mark_obstructed(grid, obs); });
  std::vector<Region> regions = clock.time("regions", [&] { return find_regions(grid); });
  clock.time("centers", [&] {
    const VisibilityGraph vg(obs);
    assign_centers(regions, grid, vg);
  });

  diag.dense_cells = grid.dense_count();
  diag.obstructed_cells = grid.obstructed_count();
  if (grid.density_threshold() == 0) {
    diag.warnings.push_back("density threshold d = 0: every cell is dense");
  }
  for (PointId id : grid.points_inside_obstacles()) {
    diag.warnings.push_back("point " + std::to_string(id) +
                            " lies strictly inside an obstacle");
  }

  ClusteringResult result;
  result.outlier_point_ids = collect_outliers(grid, regions);
  result.regions = std::move(regions);
  result.diagnostics = std::move(diag);
  return {std::move(grid), std::move(result)};
}

}  // namespace scpo
