#include "scpo/bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <memory>
#include <optional>

#include "json.hpp"
#include "scpo/clustering.hpp"
#include "scpo/scenario.hpp"

namespace scpo {

namespace {

using Clock = std::chrono::steady_clock;

// Each sample averages a batch of calls lasting about this long, so
// sub-millisecond stages are not lost in timer noise.
constexpr double kSampleSeconds = 0.02;

// One pipeline stage at one scale. `setup` runs untimed before every call.
struct Stage {
  std::size_t n_points;
  std::string name;
  std::function<void()> setup;
  std::function<void()> body;
  int batch = 1;
  double best = std::numeric_limits<double>::infinity();

  double call() const {
    setup();
    const auto start = Clock::now();
    body();
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

// Per-scale state that the stage closures share.
struct ScaleState {
  Scenario scene;
  GridConfig config;
  std::optional<Grid> built;
  std::optional<Grid> labeled;
  std::optional<Grid> grid;
  std::vector<Region> regions;
  std::vector<Region> work;
};

}  // namespace

double BenchReport::seconds(std::size_t n_points, const std::string& stage) const {
  for (const BenchRow& r : rows) {
    if (r.n_points == n_points && r.stage == stage) return r.seconds;
  }
  throw Error(ErrorKind::InvalidInput, "no bench row for stage " + stage);
}

BenchReport run_bench(const BenchConfig& cfg) {
  std::vector<std::unique_ptr<ScaleState>> states;
  std::vector<Stage> stages;
  for (std::size_t n : cfg.scales) {
    Scenario scene = u_shape_scenario(n, cfg.seed);
    GridConfig gc = scene.config;
    gc.m = cfg.m;
    gc.h = cfg.h;
    gc.validate();
    auto st = std::make_unique<ScaleState>(
        ScaleState{std::move(scene), gc, std::nullopt, std::nullopt, std::nullopt, {}, {}});
    ScaleState& s = *st;

    const auto grid_pass = [&s] {
      std::size_t next = 0;
      s.built.emplace(accumulate_points(
          [&]() -> std::optional<Point> {
            if (next == s.scene.points.size()) return std::nullopt;
            return s.scene.points[next++];
          },
          s.scene.obstacles, s.config));
    };
    grid_pass();
    label_density(*s.built);
    s.labeled = *s.built;
    s.grid = *s.labeled;
    mark_obstructed(*s.grid, s.scene.obstacles);
    s.regions = find_regions(*s.grid);

    const auto nothing = [] {};
    stages.push_back({n, "grid_pass", nothing, grid_pass});
    stages.push_back({n, "marking", [&s] { s.built = *s.labeled; },
                      [&s] { mark_obstructed(*s.built, s.scene.obstacles); }});
    stages.push_back({n, "regions", nothing, [&s] { s.work = find_regions(*s.grid); }});
    stages.push_back({n, "centers", [&s] { s.work = s.regions; }, [&s] {
                        const VisibilityGraph vg(s.scene.obstacles);
                        assign_centers(s.work, *s.grid, vg);
                      }});
    states.push_back(std::move(st));
  }

  for (Stage& stage : stages) {
    const double warm = stage.call();
    stage.batch = std::clamp(static_cast<int>(kSampleSeconds / std::max(warm, 1e-7)), 1, 10000);
  }
  // Round-robin over scales so slow spells of the machine hit every scale alike;
  // the minimum sample is the least disturbed one.
  for (int rep = 0; rep < std::max(1, cfg.repetitions); ++rep) {
    for (Stage& stage : stages) {
      double total = 0.0;
      for (int k = 0; k < stage.batch; ++k) total += stage.call();
      stage.best = std::min(stage.best, total / stage.batch);
    }
  }

  BenchReport report{cfg, {}};
  for (const Stage& stage : stages) report.rows.push_back({stage.n_points, stage.name, stage.best});
  return report;
}

std::string bench_to_json(const BenchReport& report) {
  nlohmann::ordered_json j;
  j["m"] = report.config.m;
  j["h"] = report.config.h;
  j["seed"] = report.config.seed;
  j["repetitions"] = report.config.repetitions;
  j["scales"] = report.config.scales;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const BenchRow& r : report.rows) {
    rows.push_back({{"n_points", r.n_points}, {"stage", r.stage}, {"seconds", r.seconds}});
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace scpo
