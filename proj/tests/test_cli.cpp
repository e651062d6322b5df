#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_runner.hpp"
#include "doctest.h"

using scpo::test::CliSandbox;

namespace {

const std::string kRiverCluster =
    "cluster --points p.csv --obstacles o.json --area 0,0,10,10 --m 100 --h 1 "
    "--out r.json --svg r.svg";

std::string golden(const std::string& name) {
  std::ifstream in(std::filesystem::path(SCPO_GOLDEN_DIR) / name, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("generate is deterministic per seed") {
  CliSandbox box;
  REQUIRE(box.run("generate --scenario river --seed 7 --out-points a.csv --out-obstacles a.json") == 0);
  REQUIRE(box.run("generate --scenario river --seed 7 --out-points b.csv --out-obstacles b.json") == 0);
  CHECK(box.read("a.csv") == box.read("b.csv"));
  CHECK(box.read("a.json") == box.read("b.json"));
  CHECK_FALSE(box.read("a.csv").empty());

  REQUIRE(box.run("generate --scenario uniform_noise --seed 3 --out-points n.csv "
                  "--out-obstacles n.json") == 0);
  CHECK(box.read("n.json") == "[]\n");
  CHECK(box.run("generate --scenario u_shape --seed 1 --out-points u.csv --out-obstacles u.json") == 0);
}

TEST_CASE("cluster output is byte-identical across runs and matches the golden map") {
  CliSandbox box;
  REQUIRE(box.run("generate --scenario river --seed 7 --out-points p.csv --out-obstacles o.json") == 0);
  REQUIRE(box.run(kRiverCluster) == 0);
  const std::string doc = box.read("r.json");
  const std::string svg = box.read("r.svg");
  REQUIRE(box.run(kRiverCluster) == 0);
  CHECK(box.read("r.json") == doc);
  CHECK(box.read("r.svg") == svg);
  CHECK(svg == golden("river_seed7.svg"));
  CHECK(doc.find("\"schema_version\": 1") != std::string::npos);
  CHECK(doc.find("\"timings\"") == std::string::npos);

  REQUIRE(box.run(kRiverCluster + " --timings") == 0);
  CHECK(box.read("r.json").find("\"timings\"") != std::string::npos);
}

TEST_CASE("optional inputs and outputs") {
  CliSandbox box;
  box.write("p.csv", "# two clumps\n1,1\n1.1,1.2\n8,8\n8.2,8.1\n");
  REQUIRE(box.run("cluster --points p.csv --m 4 --h 50% --out r.json") == 0);
  CHECK_FALSE(std::filesystem::exists(box.path("r.svg")));
  const std::string doc = box.read("r.json");
  CHECK(doc.find("\"area_mode\": \"auto\"") != std::string::npos);
  CHECK(doc.find("\"obstacles\": null") != std::string::npos);
  CHECK(box.run("cluster --points p.csv --m 4 --h 0.5 --connectivity 8 --marking subdivision "
                "--out r8.json") == 0);
}

TEST_CASE("warnings reach both the log and the document") {
  CliSandbox box;
  box.write("p.csv", "1,1\n5,3\n9,9\n");
  box.write("o.json", "[[[4,0],[6,0],[6,6],[4,6]]]");
  REQUIRE(box.run("cluster --points p.csv --obstacles o.json --area 0,0,10,10 --m 100 --h 0.5 "
                  "--out r.json") == 0);
  const std::string log = box.stderr_text();
  const std::string doc = box.read("r.json");
  for (const std::string w : {"density threshold d = 0", "point 1 lies strictly inside"}) {
    CHECK(log.find(w) != std::string::npos);
    CHECK(doc.find(w) != std::string::npos);
  }
}

TEST_CASE("invalid input exits with 1") {
  CliSandbox box;
  box.write("good.csv", "1,1\n2,2\n3,3\n");
  box.write("bad.csv", "1,1\n1.0;2.0\n");
  box.write("bowtie.json", "[[[0,0],[2,2],[2,0],[0,2]]]");

  CHECK(box.run("cluster --points bad.csv --m 4 --h 0.5 --out r.json") == 1);
  CHECK(box.stderr_text().find("line 2") != std::string::npos);
  CHECK(box.run("cluster --points missing.csv --m 4 --h 0.5 --out r.json") == 1);
  CHECK(box.run("cluster --points good.csv --obstacles bowtie.json --m 4 --h 0.5 --out r.json") == 1);
  CHECK(box.stderr_text().find("InvalidPolygon") != std::string::npos);
  CHECK(box.run("cluster --points good.csv --m 24 --h 0.5 --out r.json") == 1);
  CHECK(box.run("cluster --points good.csv --m 4 --h 2 --out r.json") == 1);
  CHECK(box.run("cluster --points good.csv --m 4 --h 0.5 --connectivity 6 --out r.json") == 1);
  CHECK(box.run("cluster --points good.csv --m 4 --h 0.5 --area 0,0,2,2 --out r.json") == 1);
  CHECK(box.stderr_text().find("PointOutsideArea") != std::string::npos);
  CHECK(box.run("cluster --points good.csv --m 4 --h 0.5") == 1);
  CHECK(box.run("generate --scenario lake --out-points a --out-obstacles b") == 1);
  CHECK(box.run("frobnicate") == 1);
  CHECK_FALSE(std::filesystem::exists(box.path("r.json")));
}

TEST_CASE("internal errors exit with 2") {
  // d = 0 makes every cell dense; the wall cuts off a pointless region on the
  // right, which has no center.
  CliSandbox box;
  box.write("p.csv", "1,1\n2,2\n");
  box.write("o.json", "[[[4.5,-1],[5.5,-1],[5.5,11],[4.5,11]]]");
  CHECK(box.run("cluster --points p.csv --obstacles o.json --area 0,0,10,10 --m 100 --h 0.5 "
                "--out r.json") == 2);
  CHECK(box.stderr_text().find("EmptyRegion") != std::string::npos);
}

TEST_CASE("bench writes a report") {
  CliSandbox box;
  REQUIRE(box.run("bench --scales 400,800 --m 100 --h 0.5 --repetitions 1 --out b.json") == 0);
  const std::string report = box.read("b.json");
  for (const std::string stage : {"grid_pass", "marking", "regions", "centers"}) {
    CHECK(report.find(stage) != std::string::npos);
  }
}
