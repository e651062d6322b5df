#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "scene_gen.hpp"
#include "scpo/grid.hpp"

using namespace scpo;

namespace {

GridConfig config(Rect area, int m, double h, MarkingMode marking = MarkingMode::Exact) {
  return GridConfig{area, m, h, Connectivity::Four, marking};
}

Polygon tall_square() { return Polygon({{4, 0}, {6, 0}, {6, 6}, {4, 6}}); }

std::vector<char> obstructed_mask(const Grid& g) {
  std::vector<char> mask;
  for (const Cell& c : g.cells()) mask.push_back(c.obstructed ? 1 : 0);
  return mask;
}

std::vector<char> brute_force_mask(const Grid& g, const ObstacleSet& obs) {
  std::vector<char> mask;
  for (const Cell& c : g.cells()) {
    bool hit = false;
    for (const Polygon& p : obs.obstacles()) hit = hit || rect_intersects_polygon(c.extent, p);
    mask.push_back(hit ? 1 : 0);
  }
  return mask;
}

bool near(Point a, Point b, double tol = 1e-9) {
  const double scale = std::max({1.0, std::abs(a.x), std::abs(a.y)});
  return std::abs(a.x - b.x) <= tol * scale && std::abs(a.y - b.y) <= tol * scale;
}

// Compares a mutated grid with a rebuild over its live points. Rebuilt ids are
// ranks among the live ids.
void check_matches_rebuild(const Grid& g, const ObstacleSet& obs) {
  std::vector<Point> live;
  std::map<PointId, PointId> rank;
  for (PointId id = 0; id < g.id_capacity(); ++id) {
    if (!g.is_live(id)) continue;
    rank[id] = live.size();
    live.push_back(g.point(id));
  }
  const Grid fresh = build_grid(live, obs, g.config());
  REQUIRE(g.point_count() == fresh.point_count());
  CHECK(g.density_threshold() == fresh.density_threshold());
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const Cell& a = g.cells()[i];
    const Cell& b = fresh.cells()[i];
    CHECK(a.n == b.n);
    CHECK(a.dense == b.dense);
    CHECK(a.obstructed == b.obstructed);
    CHECK(a.mean.has_value() == b.mean.has_value());
    if (a.mean && b.mean) CHECK(near(*a.mean, *b.mean));
    std::vector<PointId> mapped;
    for (PointId id : a.point_ids) mapped.push_back(rank.at(id));
    CHECK(mapped == b.point_ids);
  }
}

}  // namespace

TEST_CASE("grid dimensions and density threshold") {
  const Grid g(config(Rect(0, 0, 10, 10), 25, 0.5));
  CHECK(g.side() == 5);
  CHECK(g.cell_count() == 25);
  CHECK(g.min_cell_dimension() == 2.0);
  for (const Cell& c : g.cells()) {
    CHECK(c.extent.width() == doctest::Approx(2.0));
    CHECK(c.extent.height() == doctest::Approx(2.0));
  }
  CHECK(density_threshold(100, 25, 0.5) == 2);
  // Round half up.
  CHECK(density_threshold(25, 25, 0.5) == 1);
  CHECK(density_threshold(24, 25, 0.5) == 0);
  CHECK(density_threshold(0, 25, 1.0) == 0);
}

TEST_CASE("grid config validation") {
  const Rect area(0, 0, 1, 1);
  CHECK_THROWS_AS(Grid(config(area, 1, 0.5)), Error);
  CHECK_THROWS_AS(Grid(config(area, 24, 0.5)), Error);
  CHECK_THROWS_AS(Grid(config(area, 25, 0.0)), Error);
  CHECK_THROWS_AS(Grid(config(area, 25, 1.5)), Error);
  CHECK_NOTHROW(Grid(config(area, 4, 1.0)));
  try {
    Grid(config(area, 24, 0.5));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidConfig);
  }
}

TEST_CASE("point assignment example") {
  const std::vector<Point> pts{{0.5, 0.5}, {1.5, 0.5}, {9.9, 9.9}};
  const Grid g = build_grid(pts, ObstacleSet(), config(Rect(0, 0, 10, 10), 25, 0.5));
  CHECK(g.cell(0, 0).n == 2);
  CHECK(g.cell(0, 0).mean == Point{1.0, 0.5});
  CHECK(g.cell(0, 0).point_ids == std::vector<PointId>{0, 1});
  CHECK(g.cell(4, 4).n == 1);
  CHECK(g.cell(4, 4).mean == Point{9.9, 9.9});
  std::size_t nonempty = 0;
  for (const Cell& c : g.cells()) {
    if (c.n > 0) ++nonempty;
    CHECK(c.mean.has_value() == (c.n > 0));
  }
  CHECK(nonempty == 2);
}

TEST_CASE("half-open cells close on the far boundary") {
  const Grid g(config(Rect(0, 0, 10, 10), 25, 0.5));
  CHECK(g.locate({2, 2}) == CellIndex{1, 1});
  CHECK(g.locate({1.999, 2}) == CellIndex{1, 0});
  CHECK(g.locate({10, 10}) == CellIndex{4, 4});
  CHECK(g.locate({0, 10}) == CellIndex{4, 0});
  CHECK_FALSE(g.locate({10.001, 5}).has_value());
  CHECK_FALSE(g.locate({-0.001, 5}).has_value());

  // Awkward extents: the located cell's extent always contains the point.
  test::Rng rng(31);
  const Grid odd(config(Rect(-0.3, 0.1, 0.7, 1.3), 49, 0.5));
  for (int i = 0; i < 5000; ++i) {
    const Point p{rng.uniform(-0.3, 0.7), rng.uniform(0.1, 1.3)};
    const auto idx = odd.locate(p);
    REQUIRE(idx.has_value());
    CHECK(odd.cell(*idx).extent.contains(p));
  }
}

TEST_CASE("points outside the area are all reported") {
  const std::vector<Point> pts{{1, 1}, {11, 1}, {5, 5}, {-1, -1}};
  try {
    build_grid(pts, ObstacleSet(), config(Rect(0, 0, 10, 10), 25, 0.5));
    FAIL("expected PointOutsideArea");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PointOutsideArea);
    const std::string msg = e.what();
    CHECK(msg.find(" 1") != std::string::npos);
    CHECK(msg.find(" 3") != std::string::npos);
  }
}

TEST_CASE("points inside obstacles are recorded, not rejected") {
  const std::vector<Point> pts{{1, 1}, {5, 3}, {5, 6}};
  const Grid g = build_grid(pts, ObstacleSet({tall_square()}), config(Rect(0, 0, 10, 10), 25, 0.5));
  REQUIRE(g.points_inside_obstacles().size() == 1);
  CHECK(g.points_inside_obstacles()[0] == 1);
}

TEST_CASE("grid pass reads the source exactly once") {
  test::Rng rng(32);
  std::vector<Point> pts;
  for (int i = 0; i < 1000; ++i) pts.emplace_back(rng.uniform(0, 10), rng.uniform(0, 10));
  std::size_t reads = 0;
  std::size_t next = 0;
  const PointSource source = [&]() -> std::optional<Point> {
    ++reads;
    if (next == pts.size()) return std::nullopt;
    return pts[next++];
  };
  const Grid g = accumulate_points(source, ObstacleSet(), config(Rect(0, 0, 10, 10), 100, 0.5));
  CHECK(reads == pts.size() + 1);  // one terminating call
  CHECK(g.point_count() == pts.size());
}

TEST_CASE("cell statistics hold on random data") {
  test::Rng rng(33);
  std::vector<Point> pts;
  for (int i = 0; i < 3000; ++i) pts.emplace_back(rng.uniform(0, 7), rng.uniform(-2, 3));
  const Grid g = build_grid(pts, ObstacleSet(), config(Rect(0, -2, 7, 3), 144, 0.7));
  std::size_t total = 0;
  std::vector<int> seen(pts.size(), 0);
  for (const Cell& c : g.cells()) {
    total += c.n;
    CHECK(c.n == c.point_ids.size());
    CHECK(std::is_sorted(c.point_ids.begin(), c.point_ids.end()));
    if (c.n == 0) continue;
    Point sum{0, 0};
    for (PointId id : c.point_ids) {
      sum = sum + pts[id];
      ++seen[id];
    }
    const Point mean = (1.0 / static_cast<double>(c.n)) * sum;
    CHECK(near(*c.mean, mean));
    CHECK(c.extent.contains(*c.mean));
  }
  CHECK(total == pts.size());
  CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
}

TEST_CASE("label_density examples") {
  // 25 cells, N=100, h=0.5 -> d=2.
  std::vector<Point> pts;
  for (int i = 0; i < 2; ++i) pts.emplace_back(1.0, 1.0);       // cell (0,0): n=d
  pts.emplace_back(3.0, 1.0);                                   // cell (0,1): n=1
  for (int i = 0; i < 97; ++i) pts.emplace_back(9.0, 9.0);      // cell (4,4)
  const Grid g = build_grid(pts, ObstacleSet(), config(Rect(0, 0, 10, 10), 25, 0.5));
  REQUIRE(g.density_threshold() == 2);
  CHECK(g.cell(0, 0).dense);
  CHECK_FALSE(g.cell(0, 1).dense);
  CHECK_FALSE(g.cell(2, 2).dense);
  CHECK(g.cell(4, 4).dense);

  const Grid empty = build_grid({}, ObstacleSet(), config(Rect(0, 0, 10, 10), 25, 0.5));
  CHECK(empty.density_threshold() == 0);
  CHECK(empty.dense_count() == 25);
}

TEST_CASE("subdivision marking example") {
  Grid g(config(Rect(0, 0, 10, 10), 100, 0.5, MarkingMode::Subdivision));
  REQUIRE(g.min_cell_dimension() == 1.0);

  // A sliver triangle whose long edge is (0.5,0.5)-(5.5,0.5).
  const ObstacleSet edge_only({Polygon({{0.5, 0.5}, {5.5, 0.5}, {5.5, 0.50001}})});
  mark_obstructed_by_subdivision(g, edge_only);
  for (int c = 0; c < 10; ++c) CHECK(g.cell(0, c).obstructed == (c <= 5));
  CHECK(g.obstructed_count() == 6);

  Grid exact(config(Rect(0, 0, 10, 10), 100, 0.5));
  mark_obstructed_exact(exact, edge_only);
  CHECK(obstructed_mask(exact) == obstructed_mask(g));
}

TEST_CASE("subdivision marking degenerate cases") {
  Grid g(config(Rect(0, 0, 10, 10), 25, 0.5, MarkingMode::Subdivision));
  mark_obstructed_by_subdivision(g, ObstacleSet());
  CHECK(g.obstructed_count() == 0);

  mark_obstructed_by_subdivision(g, ObstacleSet({Polygon({{0.5, 0.5}, {1.5, 0.5}, {1, 1.5}})}));
  CHECK(g.obstructed_count() == 1);
  CHECK(g.cell(0, 0).obstructed);
}

TEST_CASE("exact marking examples") {
  const ObstacleSet square({tall_square()});
  Grid g(config(Rect(0, 0, 10, 10), 25, 0.5));
  mark_obstructed_exact(g, square);
  CHECK(obstructed_mask(g) == brute_force_mask(g, square));
  // Columns 1..3 of rows 0..3: the square's closed region touches x=4 and x=6
  // (shared with columns 1 and 3) and y=6 (shared with row 3).
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) CHECK(g.cell(r, c).obstructed == (r <= 3 && c >= 1 && c <= 3));
  }

  Grid inner(config(Rect(0, 0, 10, 10), 25, 0.5));
  mark_obstructed_exact(inner, ObstacleSet({Polygon({{4.5, 4.5}, {5.5, 4.5}, {5, 5.5}})}));
  CHECK(inner.obstructed_count() == 1);
  CHECK(inner.cell(2, 2).obstructed);

  Grid all(config(Rect(0, 0, 10, 10), 25, 0.5));
  mark_obstructed_exact(all, ObstacleSet({Polygon({{-1, -1}, {11, -1}, {11, 11}, {-1, 11}})}));
  CHECK(all.obstructed_count() == 25);
}

TEST_CASE("exact marking matches brute force and contains subdivision marking") {
  test::Rng rng(34);
  for (int k = 0; k < 40; ++k) {
    const int w = rng.integer(2, 24);
    const ObstacleSet obs = test::random_disjoint_obstacles(rng, rng.integer(1, 5), 10.0, 3, 3, 12);
    Grid exact(config(Rect(0, 0, 10, 10), w * w, 0.5));
    Grid sub(config(Rect(0, 0, 10, 10), w * w, 0.5, MarkingMode::Subdivision));
    mark_obstructed_exact(exact, obs);
    mark_obstructed_by_subdivision(sub, obs);
    const auto e = obstructed_mask(exact);
    const auto s = obstructed_mask(sub);
    CHECK(e == brute_force_mask(exact, obs));
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (s[i]) CHECK(e[i]);
    }
  }
}

TEST_CASE("exact marking matches brute force on grid-aligned obstacles") {
  // Vertices on cell corners and edges stress the touching cases.
  test::Rng rng(35);
  for (int k = 0; k < 40; ++k) {
    const int w = rng.integer(2, 16);
    const double cell = 10.0 / w;
    std::vector<Polygon> polys;
    for (int b = 0; b < 3; ++b) {
      const int c0 = rng.integer(0, w - 1), r0 = rng.integer(0, w - 1);
      const int c1 = std::min(w, c0 + rng.integer(1, 3)), r1 = std::min(w, r0 + rng.integer(1, 3));
      polys.push_back(Polygon({{c0 * cell, r0 * cell}, {c1 * cell, r0 * cell}, {c1 * cell, r1 * cell}}));
    }
    const ObstacleSet obs(std::move(polys));
    Grid g(config(Rect(0, 0, 10, 10), w * w, 0.5));
    mark_obstructed_exact(g, obs);
    CHECK(obstructed_mask(g) == brute_force_mask(g, obs));
  }
}

TEST_CASE("non-obstructed cell means are outside every obstacle") {
  test::Rng rng(36);
  for (int k = 0; k < 20; ++k) {
    const ObstacleSet obs = test::random_disjoint_obstacles(rng, 4, 10.0, 3, 3, 10);
    std::vector<Point> pts;
    for (int i = 0; i < 2000; ++i) pts.emplace_back(rng.uniform(0, 10), rng.uniform(0, 10));
    const Grid g = build_grid(pts, obs, config(Rect(0, 0, 10, 10), 400, 0.5));
    for (const Cell& c : g.cells()) {
      if (c.obstructed || !c.mean) continue;
      CHECK_FALSE(testkit::inside_any_oracle(*c.mean, obs));
    }
  }
}

TEST_CASE("incremental update examples") {
  test::Rng rng(37);
  std::vector<Point> pts;
  for (int i = 0; i < 200; ++i) pts.emplace_back(rng.uniform(0, 10), rng.uniform(0, 10));
  const ObstacleSet obs({tall_square()});
  const GridConfig cfg = config(Rect(0, 0, 10, 10), 25, 0.5);
  const Grid original = build_grid(pts, obs, cfg);

  Grid g = original;
  const std::vector<Point> extra{{1.25, 8.75}};
  const std::vector<PointId> ids = incremental_update(g, extra, {});
  REQUIRE(ids.size() == 1);
  CHECK(ids[0] == 200);
  incremental_update(g, {}, ids);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const Cell& a = g.cells()[i];
    const Cell& b = original.cells()[i];
    CHECK(a.n == b.n);
    CHECK(a.dense == b.dense);
    CHECK(a.obstructed == b.obstructed);
    CHECK(a.point_ids == b.point_ids);
    if (a.mean) CHECK(near(*a.mean, *b.mean));
  }
  CHECK(g.density_threshold() == original.density_threshold());
}

TEST_CASE("incremental insert crosses the density threshold") {
  // N=100, m=25, h=0.5 -> d=2 before and after one insert (101/25*0.5 = 2.02).
  std::vector<Point> pts{{1, 1}};
  for (int i = 0; i < 99; ++i) pts.emplace_back(9, 9);
  Grid g = build_grid(pts, ObstacleSet(), config(Rect(0, 0, 10, 10), 25, 0.5));
  REQUIRE(g.density_threshold() == 2);
  REQUIRE_FALSE(g.cell(0, 0).dense);
  const std::vector<Point> one{{1.5, 1.5}};
  incremental_update(g, one, {});
  CHECK(g.density_threshold() == 2);
  CHECK(g.cell(0, 0).dense);
}

TEST_CASE("incremental update validation") {
  std::vector<Point> pts{{1, 1}, {2, 2}};
  Grid g = build_grid(pts, ObstacleSet(), config(Rect(0, 0, 10, 10), 25, 0.5));
  const Grid before = g;

  const std::vector<Point> outside{{5, 5}, {50, 5}};
  CHECK_THROWS_AS(incremental_update(g, outside, {}), Error);
  const std::vector<PointId> unknown{7};
  const std::vector<PointId> twice{0, 0};
  try {
    incremental_update(g, {}, unknown);
    FAIL("expected UnknownPointId");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownPointId);
  }
  CHECK_THROWS_AS(incremental_update(g, {}, twice), Error);
  CHECK(g.point_count() == before.point_count());
  CHECK(g.cell(0, 0).n == before.cell(0, 0).n);

  const std::vector<PointId> first{0};
  incremental_update(g, {}, first);
  CHECK_THROWS_AS(incremental_update(g, {}, first), Error);  // already deleted
}

TEST_CASE("random interleaved inserts equal one build") {
  test::Rng rng(38);
  const ObstacleSet obs = test::random_disjoint_obstacles(rng, 3, 10.0, 3, 3, 8);
  const GridConfig cfg = config(Rect(0, 0, 10, 10), 64, 0.5);
  std::vector<Point> base;
  for (int i = 0; i < 50; ++i) base.emplace_back(rng.uniform(0, 10), rng.uniform(0, 10));
  Grid g = build_grid(base, obs, cfg);
  int inserted = 0;
  while (inserted < 200) {
    std::vector<Point> batch;
    const int size = std::min(200 - inserted, rng.integer(1, 20));
    for (int i = 0; i < size; ++i) batch.emplace_back(rng.uniform(0, 10), rng.uniform(0, 10));
    incremental_update(g, batch, {});
    inserted += size;
  }
  check_matches_rebuild(g, obs);
}

TEST_CASE("random insert and delete sequences equal rebuilds") {
  test::Rng rng(39);
  for (int k = 0; k < 20; ++k) {
    const ObstacleSet obs = test::random_disjoint_obstacles(rng, 2, 10.0, 3, 3, 8);
    const GridConfig cfg = config(Rect(0, 0, 10, 10), 36, rng.uniform(0.1, 1.0));
    std::vector<Point> base;
    for (int i = 0; i < 100; ++i) base.emplace_back(rng.uniform(0, 10), rng.uniform(0, 10));
    Grid g = build_grid(base, obs, cfg);
    for (int step = 0; step < 10; ++step) {
      std::vector<PointId> live;
      for (PointId id = 0; id < g.id_capacity(); ++id) {
        if (g.is_live(id)) live.push_back(id);
      }
      std::shuffle(live.begin(), live.end(), rng.engine());
      live.resize(std::min<std::size_t>(live.size(), rng.integer(0, 15)));
      std::vector<Point> batch;
      for (int i = rng.integer(0, 15); i > 0; --i) {
        batch.emplace_back(rng.uniform(0, 10), rng.uniform(0, 10));
      }
      incremental_update(g, batch, live);
    }
    check_matches_rebuild(g, obs);
  }
}
