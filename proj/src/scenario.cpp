#include "scpo/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace scpo {

namespace {

// Engine output is fixed by the standard; the distributions below are spelled
// out so files are identical across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  double normal(double mean, double sigma) {
    const double u1 = 1.0 - unit();
    const double u2 = unit();
    return mean + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

Polygon box(double x0, double y0, double x1, double y1) {
  return Polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

GridConfig config(Rect area, int m, double h) {
  return GridConfig{area, m, h, Connectivity::Four, MarkingMode::Exact};
}

void fill_cell(Sampler& s, std::vector<Point>& out, std::size_t count, double x0, double y0,
               double x1, double y1) {
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(s.uniform(x0, x1), s.uniform(y0, y1));
}

Scenario river(std::uint64_t seed) {
  Sampler s(seed);
  std::vector<Point> pts;
  // Left blob stays clear of the strip's left wall, right blob of its right wall.
  const double left_cols[2][2] = {{3.0, 4.0}, {4.0, 4.94}};
  const double right_cols[2][2] = {{5.06, 6.0}, {6.0, 7.0}};
  const std::size_t per_cell[4] = {8, 7, 8, 7};
  for (const auto& cols : {left_cols, right_cols}) {
    std::size_t k = 0;
    for (int row = 4; row <= 5; ++row) {
      for (int c = 0; c < 2; ++c) {
        fill_cell(s, pts, per_cell[k++], cols[c][0], row, cols[c][1], row + 1.0);
      }
    }
  }
  return {"river", std::move(pts), ObstacleSet({box(4.95, 0.0, 5.05, 10.0)}),
          config(Rect(0, 0, 10, 10), 100, 1.0)};
}

Scenario blobs(std::uint64_t seed) {
  Sampler s(seed);
  const Rect area(0, 0, 100, 100);
  ObstacleSet obs({Polygon({{18.0, 22.0}, {33.0, 36.0}, {31.0, 38.0}})});
  std::vector<Point> pts;
  const Point centers[3] = {{25, 30}, {70, 70}, {75, 20}};
  for (const Point& c : centers) {
    std::size_t placed = 0;
    while (placed < 300) {
      const Point p{s.normal(c.x, 4.0), s.normal(c.y, 4.0)};
      if (!area.contains(p) || inside_any_obstacle(p, obs)) continue;
      pts.push_back(p);
      ++placed;
    }
  }
  std::size_t noise = 0;
  while (noise < 50) {
    const Point p{s.uniform(0, 100), s.uniform(0, 100)};
    if (inside_any_obstacle(p, obs)) continue;
    pts.push_back(p);
    ++noise;
  }
  return {"blobs", std::move(pts), std::move(obs), config(area, 100, 1.0)};
}

Scenario uniform_noise(std::uint64_t seed) {
  Sampler s(seed);
  std::vector<Point> pts;
  fill_cell(s, pts, 500, 0.0, 0.0, 10.0, 10.0);
  return {"uniform_noise", std::move(pts), ObstacleSet(), config(Rect(0, 0, 10, 10), 100, 1.0)};
}

// Unit cells (lower-left corners) of the U-shaped band.
std::vector<Point> u_band_cells() {
  std::vector<Point> cells;
  for (int y = 1; y < 9; ++y) {
    for (int x = 1; x < 9; ++x) {
      const bool arm = x < 3 || x >= 7;
      const bool bottom = y < 3;
      if (arm || bottom) cells.emplace_back(x, y);
    }
  }
  return cells;
}

}  // namespace

Scenario u_shape_scenario(std::size_t count, std::uint64_t seed) {
  Sampler s(seed);
  const std::vector<Point> cells = u_band_cells();
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::size_t n = count / cells.size() + (i < count % cells.size() ? 1 : 0);
    fill_cell(s, pts, n, cells[i].x, cells[i].y, cells[i].x + 1.0, cells[i].y + 1.0);
  }
  ObstacleSet obs({box(3.5, 3.5, 6.5, 8.5)});

  double sx = 0.0, sy = 0.0;
  for (const Point& p : pts) sx += p.x, sy += p.y;
  const Point mean{sx / static_cast<double>(pts.size()), sy / static_cast<double>(pts.size())};
  if (!inside_any_obstacle(mean, obs)) {
    throw Error(ErrorKind::InvalidInput, "u_shape: point mean is not inside the obstacle");
  }
  return {"u_shape", std::move(pts), std::move(obs), config(Rect(0, 0, 10, 10), 100, 0.5)};
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"river", "blobs", "uniform_noise", "u_shape"};
  return names;
}

Scenario generate_scenario(std::string_view name, std::uint64_t seed) {
  if (name == "river") return river(seed);
  if (name == "blobs") return blobs(seed);
  if (name == "uniform_noise") return uniform_noise(seed);
  if (name == "u_shape") return u_shape_scenario(8 * u_band_cells().size(), seed);
  throw Error(ErrorKind::UnknownScenario, "unknown scenario '" + std::string(name) + "'");
}

}  // namespace scpo
