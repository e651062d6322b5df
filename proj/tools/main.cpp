// scpo: grid-based spatial clustering with polygonal obstacles.
//
//   scpo cluster  --points P.csv [--obstacles O.json] [--area x0,y0,x1,y1|auto]
//                 --m 400 --h 0.5 [--connectivity 4|8] [--marking exact|subdivision]
//                 --out R.json [--svg R.svg] [--timings]
//   scpo generate --scenario river --seed 7 --out-points P.csv --out-obstacles O.json
//   scpo bench    --scales 10000,20000,40000 --m 400 --h 0.5 --out bench.json
//
// Log verbosity comes from SCPO_LOG_LEVEL (trace, debug, info, warn, error, off).
// Exit codes: 0 success, 1 invalid input, 2 internal error.

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "scpo/bench.hpp"
#include "scpo/clustering.hpp"
#include "scpo/io.hpp"
#include "scpo/scenario.hpp"
#include "scpo/svg.hpp"

namespace {

constexpr int kExitInvalidInput = 1;
constexpr int kExitInternal = 2;

std::string configure_logging() {
  auto logger = spdlog::stderr_color_mt("scpo");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("SCPO_LOG_LEVEL");
  const std::string level = env ? env : "info";
  spdlog::set_level(spdlog::level::from_str(level));
  return level;
}

int run_cluster(scpo::RunConfig cfg, const std::string& area_text, const std::string& h_text,
                int connectivity, const std::string& marking) {
  cfg.h = scpo::parse_density(h_text);
  cfg.area = scpo::parse_area(area_text);
  if (connectivity != 4 && connectivity != 8) {
    throw scpo::Error(scpo::ErrorKind::InvalidConfig, "connectivity must be 4 or 8");
  }
  cfg.connectivity = connectivity == 4 ? scpo::Connectivity::Four : scpo::Connectivity::Eight;
  cfg.marking = marking == "exact" ? scpo::MarkingMode::Exact : scpo::MarkingMode::Subdivision;

  const std::vector<scpo::Point> points = scpo::ingest_points(cfg.points_path);
  const scpo::ObstacleSet obstacles =
      cfg.obstacles_path ? scpo::ingest_obstacles(*cfg.obstacles_path) : scpo::ObstacleSet();
  spdlog::info("loaded {} points and {} obstacles ({} vertices)", points.size(), obstacles.size(),
               obstacles.total_vertex_count());

  const scpo::Rect area = cfg.area ? *cfg.area : scpo::auto_area(points);
  const scpo::GridConfig grid_cfg{area, cfg.m, cfg.h, cfg.connectivity, cfg.marking};
  const scpo::ScpoRun run = scpo::run_scpo(points, obstacles, grid_cfg);

  for (const std::string& w : run.result.diagnostics.warnings) spdlog::warn("{}", w);
  for (const scpo::StageTiming& t : run.result.diagnostics.timings) {
    spdlog::debug("stage {}: {:.6f} s", t.stage, t.seconds);
  }
  spdlog::info("w={} d={} dense={} obstructed={} regions={} outliers={}", run.grid.side(),
               run.grid.density_threshold(), run.grid.dense_count(), run.grid.obstructed_count(),
               run.result.regions.size(), run.result.outlier_point_ids.size());

  const scpo::OutputDocument doc = scpo::make_document(cfg, area, run);
  scpo::write_file_atomic(cfg.out_path, scpo::serialize_document(doc));
  if (cfg.svg_path) scpo::write_svg(run.result, run.grid, obstacles, *cfg.svg_path);
  return 0;
}

int run_generate(const std::string& scenario, std::uint64_t seed, const std::string& out_points,
                 const std::string& out_obstacles) {
  const scpo::Scenario scene = scpo::generate_scenario(scenario, seed);
  const std::string header = "scenario " + scene.name + " seed " + std::to_string(seed);
  scpo::write_file_atomic(out_points, scpo::points_to_text(scene.points, header));
  scpo::write_file_atomic(out_obstacles, scpo::obstacles_to_json(scene.obstacles));
  const scpo::Rect& a = scene.config.area;
  spdlog::info("{}: {} points, {} obstacles; suggested --area {},{},{},{} --m {} --h {}",
               scene.name, scene.points.size(), scene.obstacles.size(), a.x_lo(), a.y_lo(),
               a.x_hi(), a.y_hi(), scene.config.m, scene.config.h);
  return 0;
}

int run_bench(const std::vector<std::size_t>& scales, int m, const std::string& h_text,
              int repetitions, const std::string& out) {
  scpo::BenchConfig cfg;
  cfg.scales = scales;
  cfg.m = m;
  cfg.h = scpo::parse_density(h_text);
  cfg.repetitions = repetitions;
  const scpo::BenchReport report = scpo::run_bench(cfg);
  for (const scpo::BenchRow& row : report.rows) {
    spdlog::info("N={:>8} {:<10} {:.6f} s", row.n_points, row.stage, row.seconds);
  }
  scpo::write_file_atomic(out, scpo::bench_to_json(report));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-based spatial clustering in the presence of polygonal obstacles"};
  app.require_subcommand(1);
  // "-h" would collide with the density option "--h".
  app.set_help_flag("--help", "Print this help message and exit");

  scpo::RunConfig run_cfg;
  std::string area_text = "auto";
  std::string h_text;
  int connectivity = 4;
  std::string marking = "exact";
  std::string points_path, obstacles_path, out_path, svg_path;
  auto* cluster = app.add_subcommand("cluster", "Cluster a point file");
  cluster->add_option("--points", points_path, "Points file, one x,y per line")->required();
  cluster->add_option("--obstacles", obstacles_path, "Obstacles JSON (array of polygons)");
  cluster->add_option("--area", area_text, "x0,y0,x1,y1 or auto")->capture_default_str();
  cluster->add_option("--m", run_cfg.m, "Cell count (perfect square)")->required();
  cluster->add_option("--h", h_text, "Density fraction, e.g. 0.5 or 50%")->required();
  cluster->add_option("--connectivity", connectivity, "4 or 8")->capture_default_str();
  cluster->add_option("--marking", marking, "exact or subdivision")
      ->check(CLI::IsMember({"exact", "subdivision"}))
      ->capture_default_str();
  cluster->add_option("--out", out_path, "Output JSON document")->required();
  cluster->add_option("--svg", svg_path, "Optional SVG cluster map");
  cluster->add_flag("--timings", run_cfg.include_timings, "Record stage timings in the output");

  std::string scenario, out_points, out_obstacles;
  std::uint64_t seed = 1;
  auto* generate = app.add_subcommand("generate", "Write a synthetic scenario");
  generate->add_option("--scenario", scenario, "river, blobs, uniform_noise or u_shape")
      ->required();
  generate->add_option("--seed", seed, "Random seed")->capture_default_str();
  generate->add_option("--out-points", out_points, "Points output file")->required();
  generate->add_option("--out-obstacles", out_obstacles, "Obstacles output file")->required();

  std::vector<std::size_t> scales;
  int bench_m = 400;
  std::string bench_h = "0.5";
  int repetitions = 7;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Time pipeline stages across dataset sizes");
  bench->add_option("--scales", scales, "Comma-separated point counts")
      ->required()
      ->delimiter(',');
  bench->add_option("--m", bench_m, "Cell count")->capture_default_str();
  bench->add_option("--h", bench_h, "Density fraction")->capture_default_str();
  bench->add_option("--repetitions", repetitions, "Samples per stage")->capture_default_str();
  bench->add_option("--out", bench_out, "Report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    run_cfg.log_level = configure_logging();
    if (*cluster) {
      run_cfg.points_path = points_path;
      if (!obstacles_path.empty()) run_cfg.obstacles_path = obstacles_path;
      run_cfg.out_path = out_path;
      if (!svg_path.empty()) run_cfg.svg_path = svg_path;
      return run_cluster(run_cfg, area_text, h_text, connectivity, marking);
    }
    if (*generate) return run_generate(scenario, seed, out_points, out_obstacles);
    return run_bench(scales, bench_m, bench_h, repetitions, bench_out);
  } catch (const scpo::Error& e) {
    spdlog::error("{}: {}", scpo::to_string(e.kind()), e.what());
    return e.is_validation() ? kExitInvalidInput : kExitInternal;
  } catch (const std::exception& e) {
    spdlog::error("internal error: {}", e.what());
    return kExitInternal;
  }
}
