#include "scpo/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scpo {

std::string_view to_string(Connectivity c) {
  return c == Connectivity::Four ? "4" : "8";
}

std::string_view to_string(MarkingMode m) {
  return m == MarkingMode::Exact ? "exact" : "subdivision";
}

int GridConfig::side() const {
  return static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
}

void GridConfig::validate() const {
  if (m < 4) throw Error(ErrorKind::InvalidConfig, "m must be at least 4");
  const int w = side();
  if (w * w != m) {
    throw Error(ErrorKind::InvalidConfig, "m must be a perfect square, got " + std::to_string(m));
  }
  if (!(h > 0.0 && h <= 1.0)) {
    throw Error(ErrorKind::InvalidConfig, "h must lie in (0, 1]");
  }
}

std::size_t density_threshold(std::size_t n_points, int m, double h) {
  const double raw = static_cast<double>(n_points) / static_cast<double>(m) * h;
  return static_cast<std::size_t>(std::floor(raw + 0.5));
}

namespace {

std::vector<double> axis_edges(double lo, double hi, int w) {
  std::vector<double> edges(static_cast<std::size_t>(w) + 1);
  for (int i = 0; i <= w; ++i) edges[i] = lo + (hi - lo) * i / w;
  edges.back() = hi;
  return edges;
}

Point clamp_to(Point p, const Rect& r) {
  return {std::clamp(p.x, r.x_lo(), r.x_hi()), std::clamp(p.y, r.y_lo(), r.y_hi())};
}

}  // namespace

Grid::Grid(GridConfig config)
    : config_(std::move(config)),
      side_((config_.validate(), config_.side())),
      e_(std::min(config_.area.width(), config_.area.height()) / side_),
      x_edges_(axis_edges(config_.area.x_lo(), config_.area.x_hi(), side_)),
      y_edges_(axis_edges(config_.area.y_lo(), config_.area.y_hi(), side_)) {
  cells_.reserve(static_cast<std::size_t>(side_) * side_);
  for (int r = 0; r < side_; ++r) {
    for (int c = 0; c < side_; ++c) {
      cells_.push_back(Cell{{r, c}, Rect(x_edges_[c], y_edges_[r], x_edges_[c + 1], y_edges_[r + 1]), 0, std::nullopt, {}, false, false});
    }
  }
}

int Grid::locate_axis(double v, const std::vector<double>& edges) const {
  const double lo = edges.front();
  const double hi = edges.back();
  int i = static_cast<int>(std::floor((v - lo) / (hi - lo) * side_));
  i = std::clamp(i, 0, side_ - 1);
  // Snap to the half-open interval [edges[i], edges[i+1]) the cell extents use.
  while (i > 0 && v < edges[i]) --i;
  while (i < side_ - 1 && v >= edges[i + 1]) ++i;
  return i;
}

std::optional<CellIndex> Grid::locate(Point p) const {
  if (!config_.area.contains(p)) return std::nullopt;
  return CellIndex{locate_axis(p.y, y_edges_), locate_axis(p.x, x_edges_)};
}

std::size_t Grid::dense_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](const Cell& c) { return c.dense; }));
}

std::size_t Grid::obstructed_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](const Cell& c) { return c.obstructed; }));
}

void Grid::insert_point(PointId id, Point p, CellIndex idx) {
  if (id >= points_.size()) {
    points_.resize(id + 1);
    live_.resize(id + 1, false);
  }
  points_[id] = p;
  live_[id] = true;
  ++live_count_;

  Cell& cell = cells_[offset(idx)];
  cell.point_ids.push_back(id);
  ++cell.n;
  if (!cell.mean) {
    cell.mean = p;
  } else {
    const double inv = 1.0 / static_cast<double>(cell.n);
    const Point m = *cell.mean;
    cell.mean = clamp_to({m.x + (p.x - m.x) * inv, m.y + (p.y - m.y) * inv}, cell.extent);
  }
}

void Grid::erase_point(PointId id) {
  const Point p = points_[id];
  Cell& cell = cells_[offset(*locate(p))];
  cell.point_ids.erase(std::lower_bound(cell.point_ids.begin(), cell.point_ids.end(), id));
  --cell.n;
  if (cell.n == 0) {
    cell.mean.reset();
  } else {
    const double inv = 1.0 / static_cast<double>(cell.n);
    const Point m = *cell.mean;
    cell.mean = clamp_to({m.x + (m.x - p.x) * inv, m.y + (m.y - p.y) * inv}, cell.extent);
  }
  live_[id] = false;
  --live_count_;
  auto it = std::lower_bound(inside_obstacle_.begin(), inside_obstacle_.end(), id);
  if (it != inside_obstacle_.end() && *it == id) inside_obstacle_.erase(it);
}

namespace {

std::string outside_message(const std::vector<std::size_t>& offenders) {
  std::string msg = std::to_string(offenders.size()) + " point(s) outside the spatial area:";
  const std::size_t shown = std::min<std::size_t>(offenders.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) msg += " " + std::to_string(offenders[i]);
  if (shown < offenders.size()) msg += " ...";
  return msg;
}

}  // namespace

Grid accumulate_points(const PointSource& source, const ObstacleSet& obs,
                       const GridConfig& cfg) {
  Grid g(cfg);
  std::vector<std::size_t> outside;
  PointId id = 0;
  while (const std::optional<Point> p = source()) {
    if (const auto idx = g.locate(*p)) {
      g.insert_point(id, *p, *idx);
      if (inside_any_obstacle(*p, obs)) g.inside_obstacle_.push_back(id);
    } else {
      outside.push_back(id);
    }
    ++id;
  }
  if (!outside.empty()) throw Error(ErrorKind::PointOutsideArea, outside_message(outside));
  g.d_ = density_threshold(g.live_count_, cfg.m, cfg.h);
  return g;
}

Grid build_grid(std::span<const Point> points, const ObstacleSet& obs, const GridConfig& cfg) {
  std::size_t next = 0;
  Grid g = accumulate_points(
      [&]() -> std::optional<Point> {
        if (next == points.size()) return std::nullopt;
        return points[next++];
      },
      obs, cfg);
  label_density(g);
  mark_obstructed(g, obs);
  return g;
}

void label_density(Grid& g) {
  g.d_ = density_threshold(g.live_count_, g.config_.m, g.config_.h);
  for (Cell& c : g.cells_) c.dense = c.n >= g.d_;
}

namespace {

void mark_point(Grid& g, Point p) {
  if (const auto idx = g.locate(p)) g.set_obstructed(*idx);
}

void subdivide(Grid& g, Point a, Point b, double e) {
  if (distance(a, b) <= e) return;
  const Point mid = midpoint(a, b);
  mark_point(g, mid);
  subdivide(g, a, mid, e);
  subdivide(g, mid, b, e);
}

}  // namespace

void mark_obstructed_by_subdivision(Grid& g, const ObstacleSet& obs) {
  const double e = g.min_cell_dimension();
  for (const Polygon& poly : obs.obstacles()) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Segment edge = poly.edge(i);
      mark_point(g, edge.a());
      mark_point(g, edge.b());
      subdivide(g, edge.a(), edge.b(), e);
    }
  }
}

namespace {

int clamp_index(double v, double lo, double hi, int w) {
  const int i = static_cast<int>(std::floor((v - lo) / (hi - lo) * w));
  return std::clamp(i, 0, w - 1);
}

// Supercover of one edge: column sweep over candidate cells (one cell of
// slack either side), each confirmed with the closed segment/rect test.
void mark_edge_supercover(Grid& g, const Segment& edge) {
  const Rect& area = g.config().area;
  const Point a = edge.a(), b = edge.b();
  if (std::max(a.x, b.x) < area.x_lo() || std::min(a.x, b.x) > area.x_hi() ||
      std::max(a.y, b.y) < area.y_lo() || std::min(a.y, b.y) > area.y_hi()) {
    return;
  }
  const int w = g.side();
  const int c0 = std::max(0, clamp_index(std::min(a.x, b.x), area.x_lo(), area.x_hi(), w) - 1);
  const int c1 = std::min(w - 1, clamp_index(std::max(a.x, b.x), area.x_lo(), area.x_hi(), w) + 1);

  for (int c = c0; c <= c1; ++c) {
    const Rect& column = g.cell(0, c).extent;
    double y_min, y_max;
    if (a.x == b.x) {
      y_min = std::min(a.y, b.y);
      y_max = std::max(a.y, b.y);
    } else {
      const double t0 = std::clamp((column.x_lo() - a.x) / (b.x - a.x), 0.0, 1.0);
      const double t1 = std::clamp((column.x_hi() - a.x) / (b.x - a.x), 0.0, 1.0);
      const double ya = a.y + t0 * (b.y - a.y);
      const double yb = a.y + t1 * (b.y - a.y);
      y_min = std::min(ya, yb);
      y_max = std::max(ya, yb);
    }
    const int r0 = std::max(0, clamp_index(y_min, area.y_lo(), area.y_hi(), w) - 1);
    const int r1 = std::min(w - 1, clamp_index(y_max, area.y_lo(), area.y_hi(), w) + 1);
    for (int r = r0; r <= r1; ++r) {
      const Cell& cell = g.cell(r, c);
      if (!cell.obstructed && segment_intersects_rect(edge, cell.extent)) {
        g.set_obstructed(cell.index);
      }
    }
  }
}

}  // namespace

void mark_obstructed_exact(Grid& g, const ObstacleSet& obs) {
  const Rect& area = g.config().area;
  const int w = g.side();
  for (const Polygon& poly : obs.obstacles()) {
    for (std::size_t i = 0; i < poly.size(); ++i) mark_edge_supercover(g, poly.edge(i));

    // Cells no edge reaches intersect the polygon only if they lie wholly inside it.
    const Rect& box = poly.bounds();
    if (box.x_hi() < area.x_lo() || box.x_lo() > area.x_hi() || box.y_hi() < area.y_lo() ||
        box.y_lo() > area.y_hi()) {
      continue;
    }
    const int c0 = clamp_index(box.x_lo(), area.x_lo(), area.x_hi(), w);
    const int c1 = clamp_index(box.x_hi(), area.x_lo(), area.x_hi(), w);
    const int r0 = clamp_index(box.y_lo(), area.y_lo(), area.y_hi(), w);
    const int r1 = clamp_index(box.y_hi(), area.y_lo(), area.y_hi(), w);
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        const Cell& cell = g.cell(r, c);
        if (cell.obstructed) continue;
        const Rect& ext = cell.extent;
        const Point center = midpoint({ext.x_lo(), ext.y_lo()}, {ext.x_hi(), ext.y_hi()});
        if (point_in_polygon(center, poly) == Containment::Inside) g.set_obstructed(cell.index);
      }
    }
  }
}

void mark_obstructed(Grid& g, const ObstacleSet& obs) {
  if (g.config().marking == MarkingMode::Exact) {
    mark_obstructed_exact(g, obs);
  } else {
    mark_obstructed_by_subdivision(g, obs);
  }
}

std::vector<PointId> incremental_update(Grid& g, std::span<const Point> inserts,
                                        std::span<const PointId> deletes) {
  std::vector<std::size_t> outside;
  std::vector<CellIndex> targets;
  targets.reserve(inserts.size());
  for (std::size_t i = 0; i < inserts.size(); ++i) {
    if (const auto idx = g.locate(inserts[i])) {
      targets.push_back(*idx);
    } else {
      outside.push_back(i);
    }
  }
  if (!outside.empty()) throw Error(ErrorKind::PointOutsideArea, outside_message(outside));

  std::vector<PointId> seen(deletes.begin(), deletes.end());
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!g.is_live(seen[i]) || (i > 0 && seen[i] == seen[i - 1])) {
      throw Error(ErrorKind::UnknownPointId, "unknown point id " + std::to_string(seen[i]));
    }
  }

  for (PointId id : deletes) g.erase_point(id);
  std::vector<PointId> assigned;
  assigned.reserve(inserts.size());
  for (std::size_t i = 0; i < inserts.size(); ++i) {
    const PointId id = g.points_.size();
    g.insert_point(id, inserts[i], targets[i]);
    assigned.push_back(id);
  }
  label_density(g);
  return assigned;
}

}  // namespace scpo
